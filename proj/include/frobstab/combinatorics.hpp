#pragma once

#include <vector>

#include "frobstab/rational.hpp"

namespace frobstab {

// Exponent vector (k_1,...,k_m); every entry >= 0. When produced by
// bounded-composition enumeration, entry_i <= bound_i and sum = target.
using ExponentVector = std::vector<int>;

bool is_prime(int p);

// base^exp for exp >= 0.
BigInt pow_int(int base, int exp);

// C(n,k) by the multiplicative formula with exact intermediate division;
// 0 when k < 0 or k > n.
BigInt binomial(long long n, long long k);

// sum_{j=0}^{n} (-1)^j j C(n,j); zero for every n >= 2, -1 at n = 1.
BigInt alt_weighted_binomial_sum(int n);

// Lazy stream of all (k_1,...,k_m) with sum k_i = l and 0 <= k_i <=
// bounds[i], yielded exactly once each in ascending lexicographic order.
// Empty stream when l exceeds sum(bounds).
class BoundedCompositions {
public:
    BoundedCompositions(long long l, std::vector<int> bounds);

    struct Sentinel {};

    class Iterator {
    public:
        using value_type = ExponentVector;
        using difference_type = std::ptrdiff_t;

        const ExponentVector& operator*() const { return cur_; }
        Iterator& operator++();
        bool operator==(Sentinel) const { return done_; }

    private:
        friend class BoundedCompositions;
        Iterator(long long l, const std::vector<int>* bounds);

        const std::vector<int>* bounds_;
        std::vector<long long> bound_suffix_; // bound_suffix_[i] = sum of bounds[i..)
        ExponentVector cur_;
        bool done_;

        void fill_minimal_suffix(std::size_t from, long long rem);
    };

    Iterator begin() const { return Iterator(l_, &bounds_); }
    Sentinel end() const { return {}; }

private:
    long long l_;
    std::vector<int> bounds_;
};

BigInt count_bounded_compositions(long long l, const std::vector<int>& bounds);

} // namespace frobstab
