#pragma once

#include <functional>
#include <map>
#include <utility>

#include "frobstab/combinatorics.hpp"
#include "frobstab/profile.hpp"

namespace frobstab {

// Index data of a truncated symmetric power T^l of a rank-r sheaf:
// lp = floor(l/p) and the greedy split l = t(p-1) + s, 0 <= s < p-1
// (s forced 0 at p = 2 and at l = r(p-1)).
struct TlSpec {
    int r;
    int p;
    int l;
    int lp;
    int t;
    int s;

    static TlSpec make(int r, int p, int l);
};

// rank of T^l for rank r in characteristic p:
// sum_{q=0}^{floor(l/p)} (-1)^q C(r,q) C(r+l-qp-1, l-qp).
// Total on r >= 1, p >= 2, l >= 0; equals 0 for l > r(p-1) and 1 at the
// endpoints l = 0 and l = r(p-1).
BigInt rank_tl(int r, int p, int l);

// Independent route: counts exponent vectors of degree l with r entries
// <= p-1 by direct enumeration.
BigInt rank_tl_oracle(int r, int p, int l);

// Greedy weight vector (p-1,...,p-1, s, 0,...,0) of length r with
// t = floor(l/(p-1)) leading entries; entries sum to l, each <= p-1,
// weakly decreasing. Maximizes sum d_i x_i over bounded exponent vectors
// against any strictly decreasing x.
ExponentVector dvec(int r, int p, int l);

// Case-table value of sum_{i <= floor(r/2)} (d_i - d_{r-i+1}) for the
// greedy vector; cross-checked against the direct sum. Bounded above by
// min{l, floor(r/2)(p-1)}.
long long tl2_case_gap(int r, int p, int l);

// Slope decomposition of T^l(direct sum of the profile's blocks):
// pieces map slope -> rank, slopes descending.
struct TruncatedDecomposition {
    int l;
    int p;
    std::map<Rational, BigInt, std::greater<Rational>> pieces;

    BigInt total_rank() const;
};

// Piece at slope sum(c_i mu_i) of rank prod(rank_tl(r_i, p, c_i)) for every
// block exponent vector c with sum c_i = l and 0 <= c_i <= r_i(p-1).
// Total rank equals rank_tl(total rank, p, l).
TruncatedDecomposition tl_decomposition(const SlopeProfile& profile, int p, int l);

// (mu_max, mu_min) of T^l via the d-vector against the descending
// unit-slope expansion of the profile; matches the extreme keys of
// tl_decomposition.
std::pair<Rational, Rational> tl_extremes(const SlopeProfile& profile, int p, int l);

// Exact instability mu_max - mu_min of T^l; zero when l is 0 or r(p-1)
// or the profile normalizes to a single block. Queries beyond l = r(p-1)
// are rejected as zero-sheaf.
Rational instability_tl_exact(const SlopeProfile& profile, int p, int l);

// min{l, floor(r/2)(p-1)} * instability(profile); always >=
// instability_tl_exact at the same l.
Rational bound_tl2(const SlopeProfile& profile, int p, int l);

// min{l, floor(r/2)(p-1)} * ((r-1)/p * max{0, lmax_omega} + i_e).
Rational bound_instab_tl(int r, int p, int l, const Rational& i_e, const Rational& lmax_omega);

} // namespace frobstab
