#pragma once

#include "frobstab/frobenius.hpp"

namespace frobstab {

// Rank/degree row for the sheaves of locally exact (B^i) and locally
// closed (Z^i) i-forms; degrees are coefficients of mu(Omega^1), since
// every formula here is linear in it.
struct FormsRow {
    int i;
    BigInt rank_b;
    BigInt rank_z;
    Rational degb_coeff;
    Rational degz_coeff;
};

// Rows indexed by i in [0, n]. Row 0 is the convention B^0 = 0,
// Z^0 = O_X. Per row i >= 1 (Cartier): rank_z - rank_b = C(n,i) and
// degz_coeff - degb_coeff = i C(n,i). Top row: rank_z(n) = p^n.
struct FormsTable {
    int n;
    int p;
    std::vector<FormsRow> rows;
};

// Builds the table through the two exact sequences
//   0 -> Z^{i-1} -> F_* Omega^{i-1} -> B^i -> 0
//   0 -> B^i -> Z^i -> Omega^i -> 0
// (source of truth; the closed forms below are claims tested against it).
FormsTable forms_recurrence(int n, int p);

// Closed forms, 1 <= i <= n:
//   rank_b = C(n-1, i-1)(p^n - 1)
//   degb_coeff = n C(n-1, i-1) p^{n-1}(p-1)/2
//              + sum_{j=1}^{i-1} (-1)^{i+j+1} j C(n,j) (p^{n-1} - 1)
// with rank_z, degz_coeff via the Cartier deltas.
FormsRow forms_closed(int n, int p, int i);

// Whether B^i destabilizes Z^i (valid verdict under mu_omega > 0),
// decided exactly from the recurrence table, alongside the printed
// sufficient quantity n(p^n - p)/(2(p^n - 1)) and its exact recomputation
// n p^{n-1}(p-1)/(2(p^n - 1)); the two differ whenever n != 2.
struct ZiVerdict {
    int n;
    int p;
    int i;
    Rational mu_b_coeff;          // degb_coeff / rank_b
    Rational mu_omega_i_coeff;    // i, the slope of Omega^i in mu_omega units
    bool exact_destabilizes;      // mu_b_coeff > i
    Rational paper_sufficient_lhs;
    bool paper_sufficient_holds;  // paper_sufficient_lhs > i
    Rational exact_sufficient_lhs;
    bool exact_sufficient_holds;  // exact_sufficient_lhs > i
    bool sufficient_conflict;     // the two verdicts disagree
    bool in_claimed_range;        // 2i < n, where instability is claimed
};

ZiVerdict check_zi_instability(int n, int p, int i);

// Two-block polygon of the filtration 0 c B^1 c Z^1 in mu_omega units,
// [(rank_b(1), mu(B^1)), (n, 1)]; n >= 3 required, and a slope order
// violation mu(B^1) <= 1 raises SlopeOrderError instead of reordering.
HNPolygon z1_hn(int n, int p);

// Hypotheses under which the two-block filtration is the HN filtration;
// echoed in reports.
const std::vector<std::string>& z1_hn_assumptions();

// mu(B) - mu(B^n) <= -n(p-1)(p^n - r_b - 1) / (2p(p^n - 1) r_b) * mu_omega
// for subsheaves B of rank r_b; strictly negative for r_b < p^n - 1 with
// mu_omega > 0, zero at r_b = p^n - 1. Hypothesis mu_omega > 0 advisory.
Rational bound_bn_subsheaf(int n, int p, const BigInt& r_b, const Rational& mu_omega,
                           bool force = false);

} // namespace frobstab
