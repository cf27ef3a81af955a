#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "frobstab/rational.hpp"

namespace frobstab {

struct ProfileBlock {
    std::int64_t rank;
    Rational slope;

    friend bool operator==(const ProfileBlock& a, const ProfileBlock& b) {
        return a.rank == b.rank && a.slope == b.slope;
    }
};

// Ordered list of (rank, slope) blocks; every rank >= 1, at least one
// block. In HN-normal form the slopes are strictly decreasing.
class SlopeProfile {
public:
    explicit SlopeProfile(std::vector<ProfileBlock> blocks);

    const std::vector<ProfileBlock>& blocks() const { return blocks_; }
    std::int64_t total_rank() const;
    Rational total_degree() const;
    bool is_normalized() const; // strictly decreasing slopes

    friend bool operator==(const SlopeProfile& a, const SlopeProfile& b) {
        return a.blocks_ == b.blocks_;
    }

private:
    std::vector<ProfileBlock> blocks_;
};

struct ProfileStats {
    Rational mu;
    Rational mu_max;
    Rational mu_min;
    Rational instability; // mu_max - mu_min >= 0
};

// Coalesces equal-slope blocks and sorts descending; preserves total rank
// and total degree; idempotent.
SlopeProfile normalize(const SlopeProfile& profile);

ProfileStats profile_stats(const SlopeProfile& profile);

// Concave-from-above polygon; vertices (rank, degree) with strictly
// increasing ranks, starting at (0, 0).
struct HNPolygon {
    std::vector<std::pair<std::int64_t, Rational>> vertices;

    std::int64_t total_rank() const { return vertices.back().first; }
    Rational total_degree() const { return vertices.back().second; }
    // Exact piecewise-linear height; requires 0 <= x <= total_rank().
    Rational height_at(std::int64_t x) const;

    friend bool operator==(const HNPolygon& a, const HNPolygon& b) {
        return a.vertices == b.vertices;
    }
};

// Validates shape ((0,0) start, strictly increasing ranks); convexity is
// not required of externally supplied polygons.
HNPolygon make_polygon(std::vector<std::pair<std::int64_t, Rational>> vertices);

// Cumulative-sum polygon of an HN-normal profile; rejects non-normalized
// input with NotNormalizedError.
HNPolygon polygon_of(const SlopeProfile& profile);

// True iff height of p >= height of q at every rank in [0, total_rank],
// decided exactly at the merged vertex rank set. Requires equal total
// ranks; total degrees may differ.
bool dominates(const HNPolygon& p, const HNPolygon& q);

// Dominance plus equal endpoints (equal total degree).
bool dominates_same_endpoints(const HNPolygon& p, const HNPolygon& q);

} // namespace frobstab
