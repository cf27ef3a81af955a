#pragma once

#include <cstdint>

#include "frobstab/serialize.hpp"

namespace frobstab {

// Test grid for the built-in oracle suites. "small": r, n <= 4,
// p in {2, 3}; "full": r, n <= 6, p in {2, 3, 5, 7}.
struct GridSpec {
    std::string name;
    int max_r;
    int max_n;
    std::vector<int> primes;

    static GridSpec make(const std::string& name);
};

struct SuiteResult {
    std::string name;
    long long cases = 0;
    long long failures = 0;
    std::vector<std::string> notes;            // observations, not failures
    std::vector<std::string> failure_details;  // first few counterexamples
};

// A place where the implemented formula deviates from its printed source;
// ids are stable and enumerated in the acceptance tests.
struct PaperNote {
    std::string id;
    std::string detail;
};

struct SelfcheckReport {
    std::string grid;
    std::uint64_t seed;
    std::vector<SuiteResult> suites;
    std::vector<PaperNote> paper_notes;
    bool all_passed = false;
    long long total_cases = 0;
};

// Runs every oracle-equivalence and invariant suite on the grid. Suite
// RNGs derive from seed, so reports are byte-identical across runs.
// Failures are report content, not exceptions.
SelfcheckReport selfcheck(const std::string& grid_name, std::uint64_t seed);

Json to_json(const SelfcheckReport& report);

} // namespace frobstab
