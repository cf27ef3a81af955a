#include "frobstab/truncated.hpp"

#include <algorithm>

namespace frobstab {

namespace {

void require_rp(int r, int p, const char* who) {
    if (r < 1) throw InputError(std::string(who) + ": r must be >= 1");
    if (p < 2) throw InputError(std::string(who) + ": p must be >= 2");
}

void require_prime(int p, const char* who) {
    if (!is_prime(p)) throw InputError(std::string(who) + ": p must be prime");
}

long long top_degree(const SlopeProfile& profile, int p) {
    return profile.total_rank() * static_cast<long long>(p - 1);
}

void require_l_in_range(const SlopeProfile& profile, int p, int l, const char* who) {
    require_prime(p, who);
    if (l < 0) throw InputError(std::string(who) + ": l must be >= 0");
    if (l > top_degree(profile, p))
        throw ZeroSheafError(std::string(who) + ": T^" + std::to_string(l) +
                             " is the zero sheaf for rank " + std::to_string(profile.total_rank()) +
                             " in characteristic " + std::to_string(p));
}

// Blocks of the profile expanded to total_rank unit slopes, descending.
std::vector<Rational> unit_slopes_descending(const SlopeProfile& profile) {
    if (profile.total_rank() > (1LL << 22))
        throw InputError("profile total rank too large for unit-slope expansion");
    const SlopeProfile normal = profile.is_normalized() ? profile : normalize(profile);
    std::vector<Rational> xs;
    xs.reserve(static_cast<std::size_t>(normal.total_rank()));
    for (const auto& b : normal.blocks())
        for (std::int64_t j = 0; j < b.rank; ++j) xs.push_back(b.slope);
    return xs;
}

} // namespace

TlSpec TlSpec::make(int r, int p, int l) {
    require_rp(r, p, "TlSpec");
    require_prime(p, "TlSpec");
    if (l < 0 || static_cast<long long>(l) > static_cast<long long>(r) * (p - 1))
        throw InputError("TlSpec: l must lie in [0, r(p-1)]");
    TlSpec spec;
    spec.r = r;
    spec.p = p;
    spec.l = l;
    spec.lp = l / p;
    spec.t = l / (p - 1);
    spec.s = l - spec.t * (p - 1);
    return spec;
}

BigInt rank_tl(int r, int p, int l) {
    require_rp(r, p, "rank_tl");
    if (l < 0) throw InputError("rank_tl: l must be >= 0");
    // Inclusion-exclusion over entries forced beyond p-1; vanishes
    // identically for l > r(p-1), so no range short-circuit is needed.
    BigInt acc = 0;
    for (int q = 0; q <= l / p; ++q) {
        const BigInt term = binomial(r, q) * binomial(r + l - q * p - 1, l - q * p);
        if (q % 2) acc -= term;
        else acc += term;
    }
    if (acc < 0) throw InternalError("rank_tl: alternating sum went negative");
    return acc;
}

BigInt rank_tl_oracle(int r, int p, int l) {
    require_rp(r, p, "rank_tl_oracle");
    if (l < 0) throw InputError("rank_tl_oracle: l must be >= 0");
    return count_bounded_compositions(l, std::vector<int>(static_cast<std::size_t>(r), p - 1));
}

ExponentVector dvec(int r, int p, int l) {
    const TlSpec spec = TlSpec::make(r, p, l);
    ExponentVector d(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < spec.t; ++i) d[static_cast<std::size_t>(i)] = p - 1;
    if (spec.t < r) d[static_cast<std::size_t>(spec.t)] = spec.s;
    return d;
}

long long tl2_case_gap(int r, int p, int l) {
    TlSpec::make(r, p, l); // validates
    const long long k = r / 2;
    const long long cap = k * (p - 1);
    const long long top = static_cast<long long>(r) * (p - 1);
    if (l <= cap) return l;
    if (r % 2 == 0) return top - l;
    if (l <= (k + 1) * (p - 1)) return cap;
    return top - l;
}

BigInt TruncatedDecomposition::total_rank() const {
    BigInt total = 0;
    for (const auto& [slope, rank] : pieces) total += rank;
    return total;
}

TruncatedDecomposition tl_decomposition(const SlopeProfile& profile, int p, int l) {
    require_l_in_range(profile, p, l, "tl_decomposition");
    const auto& blocks = profile.blocks();
    std::vector<int> bounds;
    bounds.reserve(blocks.size());
    for (const auto& b : blocks) {
        const long long cap = b.rank * static_cast<long long>(p - 1);
        // Entries above l never appear in a composition of l.
        bounds.push_back(static_cast<int>(std::min<long long>(cap, l)));
    }
    std::vector<std::vector<BigInt>> block_ranks(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        block_ranks[i].reserve(static_cast<std::size_t>(bounds[i]) + 1);
        for (int c = 0; c <= bounds[i]; ++c)
            block_ranks[i].push_back(rank_tl(static_cast<int>(blocks[i].rank), p, c));
    }
    TruncatedDecomposition dec;
    dec.l = l;
    dec.p = p;
    for (const auto& c : BoundedCompositions(l, bounds)) {
        BigInt rank = 1;
        Rational slope;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            rank *= block_ranks[i][static_cast<std::size_t>(c[i])];
            slope += Rational(c[i]) * blocks[i].slope;
        }
        dec.pieces[slope] += rank; // rank > 0: c_i <= r_i(p-1) throughout
    }
    return dec;
}

std::pair<Rational, Rational> tl_extremes(const SlopeProfile& profile, int p, int l) {
    require_l_in_range(profile, p, l, "tl_extremes");
    const std::int64_t r64 = profile.total_rank();
    const int r = static_cast<int>(r64);
    const std::vector<Rational> xs = unit_slopes_descending(profile);
    const ExponentVector d = dvec(r, p, l);
    Rational mu_max;
    Rational mu_min;
    for (int i = 0; i < r; ++i) {
        const Rational di(d[static_cast<std::size_t>(i)]);
        mu_max += di * xs[static_cast<std::size_t>(i)];
        mu_min += di * xs[static_cast<std::size_t>(r - 1 - i)];
    }
    return {mu_max, mu_min};
}

Rational instability_tl_exact(const SlopeProfile& profile, int p, int l) {
    const auto [mu_max, mu_min] = tl_extremes(profile, p, l);
    return mu_max - mu_min;
}

Rational bound_tl2(const SlopeProfile& profile, int p, int l) {
    require_prime(p, "bound_tl2");
    if (l < 0) throw InputError("bound_tl2: l must be >= 0");
    const std::int64_t r = profile.total_rank();
    const long long cap = (r / 2) * static_cast<long long>(p - 1);
    return Rational(std::min<long long>(l, cap)) * profile_stats(profile).instability;
}

Rational bound_instab_tl(int r, int p, int l, const Rational& i_e, const Rational& lmax_omega) {
    require_rp(r, p, "bound_instab_tl");
    if (l < 0) throw InputError("bound_instab_tl: l must be >= 0");
    if (i_e.sign() < 0) throw InputError("bound_instab_tl: i_e must be >= 0");
    const long long cap = (static_cast<long long>(r) / 2) * (p - 1);
    const Rational gap = Rational(r - 1, p) * max0(lmax_omega) + i_e;
    return Rational(std::min<long long>(l, cap)) * gap;
}

} // namespace frobstab
