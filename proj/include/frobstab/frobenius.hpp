#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frobstab/truncated.hpp"

namespace frobstab {

// Labeled statements the bounds and advisories cite.
enum class Citation {
    langer_gap,
    sun_pushforward,
    canonical_filtration,
    rep_t,
    shatz,
    tl1,
    tl2,
    instab_tl,
    semistab_tl,
    tensor,
    diim_minus,
    instab_dirim,
    fro_dirim,
    bxzx,
    instzix,
    bxzx0,
    bnx,
    mehta_ramanathan,
};

std::string_view citation_tag(Citation c);

// Numeric invariants of the ambient variety X against a fixed
// polarization: dimension n, characteristic p, slope / maximal Frobenius
// slope limit / instability of the cotangent sheaf, plus user-asserted
// semistability flags. A semistability flag forces i_omega = 0.
struct VarietyContext {
    int n = 1;
    int p = 2;
    Rational mu_omega;
    std::optional<Rational> lmax_omega;
    Rational i_omega;
    bool omega_semistable = false;
    bool omega_strongly_semistable = false;

    bool omega_is_semistable() const { return omega_semistable || omega_strongly_semistable; }
    void validate() const;
};

// rk(E), mu(E), I(E) as bound inputs; instability = 0 declares the sheaf
// semistable.
struct SheafStats {
    std::int64_t rank = 1;
    Rational slope;
    Rational instability;

    void validate() const;
};

// n(p^m - 1)/(2 p^m) * mu_omega + mu_e / p^m.
Rational mu_pushforward(const VarietyContext& ctx, const Rational& mu_e, int m);

struct PushforwardStats {
    BigInt rank;   // p^n * r
    Rational slope;
    Rational degree; // rank * slope
};

PushforwardStats pushforward_stats(const VarietyContext& ctx, const SheafStats& stats);

struct CanonicalLayer {
    int l;
    BigInt rank;           // r_e * rank_tl(n, p, l)
    Rational slope_offset; // l * mu_omega
};

// Graded ranks of the canonical filtration of F^* F_* E, l in [0, n(p-1)];
// ranks sum to p^n * r_e.
std::vector<CanonicalLayer> canonical_filtration_ranks(const VarietyContext& ctx, std::int64_t r_e);

// deg(F_* Omega^i) in mu_omega units:
// n C(n,i) p^{n-1}(p-1)/2 + i C(n,i) p^{n-1}.
Rational pushforward_form_degree_coeff(int n, int p, int i);

// (rank, degree) of F_* Omega^i: rank C(n,i) p^n, degree the coefficient
// above times ctx.mu_omega.
std::pair<BigInt, Rational> deg_pushforward_forms(const VarietyContext& ctx, int i);

// (r-1)/p * max{0, lmax_omega} + i_e.
Rational bound_langer_gap(std::int64_t r, int p, const Rational& i_e, const Rational& lmax_omega);

// (sum r_i - m)/p * max{0, lmax_omega} + sum I_i over m parts.
Rational bound_tensor(const std::vector<SheafStats>& parts, int p, const Rational& lmax_omega);

// p^{n-1} * r_e * max of the per-l instability caps (list indexed by
// l in [0, n(p-1)], so length n(p-1)+1). Hypothesis mu_omega >= 0 is
// advisory: HypothesisError unless force.
Rational bound_sun(const VarietyContext& ctx, std::int64_t r_e,
                   const std::vector<Rational>& i_tensor_by_l, bool force = false);

// -n(p-1) p^{n-1} r_e mu_omega / 2 under "omega semistable, mu_omega <= 0";
// HypothesisError unless force when the hypothesis flags fail.
Rational bound_pushforward_caseI(const VarietyContext& ctx, std::int64_t r_e, bool force = false);

struct CaseIIBound {
    std::vector<Rational> per_l; // indexed by l in [0, n(p-1)]
    Rational total;              // p^{n-1} * r * max per_l
};

// per_l[l] = (rank_tl(n,p,l) + r - 2)/p * max{0, lmax}
//          + min{l, floor(n/2)(p-1)} * ((n-1)/p * max{0, lmax} + i_omega)
//          + I(E);
// total = p^{n-1} * r * max_l per_l[l]. Requires lmax_omega present;
// hypothesis mu_omega >= 0 advisory (HypothesisError unless force).
CaseIIBound bound_pushforward_caseII(const VarietyContext& ctx, const SheafStats& stats,
                                     bool force = false);

struct EFlags {
    bool strongly_semistable = false;
    bool semistable = false;
};

struct Advice {
    std::string conclusion;
    Citation citation;
};

// Sufficient stability conclusions that fire under the supplied flags;
// purely advisory, deterministic order, empty when no flags are set.
// mu_max_omega_nonpositive is the user-asserted L_max(Omega^1) <= 0
// criterion.
std::vector<Advice> stability_advisor(const VarietyContext& ctx, const EFlags& e_flags,
                                      bool mu_max_omega_nonpositive = false);

} // namespace frobstab
