#include "frobstab/frobenius.hpp"

#include <algorithm>

namespace frobstab {

std::string_view citation_tag(Citation c) {
    switch (c) {
        case Citation::langer_gap: return "Langer gap bound";
        case Citation::sun_pushforward: return "Sun pushforward bound";
        case Citation::canonical_filtration: return "Theorem CanonicalFiltration";
        case Citation::rep_t: return "Lemma RepT";
        case Citation::shatz: return "Lemma Shatz77";
        case Citation::tl1: return "Prop. Tl1";
        case Citation::tl2: return "Theorem Tl2";
        case Citation::instab_tl: return "Theorem InstabTl";
        case Citation::semistab_tl: return "Prop. SemiStabT^l";
        case Citation::tensor: return "Prop. Tensor";
        case Citation::diim_minus: return "Theorem DiIm-";
        case Citation::instab_dirim: return "Theorem InstabDirIm";
        case Citation::fro_dirim: return "Prop. FroDirIm";
        case Citation::bxzx: return "Lemma BxZx";
        case Citation::instzix: return "Prop. InstZiX";
        case Citation::bxzx0: return "Prop. BxZx0";
        case Citation::bnx: return "Prop. BnX";
        case Citation::mehta_ramanathan: return "Mehta-Ramanathan criterion";
    }
    throw InternalError("citation_tag: unknown citation");
}

void VarietyContext::validate() const {
    if (n < 1) throw InputError("context: n must be >= 1");
    if (!is_prime(p)) throw InputError("context: p must be prime");
    if (i_omega.sign() < 0) throw InputError("context: i_omega must be >= 0");
    if (omega_is_semistable() && !i_omega.is_zero())
        throw InputError("context: a semistable cotangent sheaf has i_omega = 0");
}

void SheafStats::validate() const {
    if (rank < 1) throw InputError("sheaf stats: rank must be >= 1");
    if (instability.sign() < 0) throw InputError("sheaf stats: instability must be >= 0");
}

Rational mu_pushforward(const VarietyContext& ctx, const Rational& mu_e, int m) {
    ctx.validate();
    if (m < 1) throw InputError("mu_pushforward: m must be >= 1");
    const BigInt pm = pow_int(ctx.p, m);
    return Rational(ctx.n * (pm - 1), 2 * pm) * ctx.mu_omega + mu_e / Rational(pm);
}

PushforwardStats pushforward_stats(const VarietyContext& ctx, const SheafStats& stats) {
    ctx.validate();
    stats.validate();
    PushforwardStats out;
    out.rank = pow_int(ctx.p, ctx.n) * stats.rank;
    out.slope = mu_pushforward(ctx, stats.slope, 1);
    out.degree = Rational(out.rank) * out.slope;
    return out;
}

std::vector<CanonicalLayer> canonical_filtration_ranks(const VarietyContext& ctx, std::int64_t r_e) {
    ctx.validate();
    if (r_e < 1) throw InputError("canonical_filtration_ranks: r_e must be >= 1");
    const int top = ctx.n * (ctx.p - 1);
    std::vector<CanonicalLayer> layers;
    layers.reserve(static_cast<std::size_t>(top) + 1);
    for (int l = 0; l <= top; ++l)
        layers.push_back({l, BigInt(r_e) * rank_tl(ctx.n, ctx.p, l), Rational(l) * ctx.mu_omega});
    return layers;
}

Rational pushforward_form_degree_coeff(int n, int p, int i) {
    if (n < 1) throw InputError("pushforward form degree: n must be >= 1");
    if (p < 2) throw InputError("pushforward form degree: p must be >= 2");
    if (i < 0 || i > n) throw InputError("pushforward form degree: i must lie in [0, n]");
    const BigInt cni = binomial(n, i);
    const BigInt pn1 = pow_int(p, n - 1);
    return Rational(n * cni * pn1 * (p - 1), 2) + Rational(i * cni * pn1);
}

std::pair<BigInt, Rational> deg_pushforward_forms(const VarietyContext& ctx, int i) {
    ctx.validate();
    const Rational coeff = pushforward_form_degree_coeff(ctx.n, ctx.p, i);
    return {binomial(ctx.n, i) * pow_int(ctx.p, ctx.n), coeff * ctx.mu_omega};
}

Rational bound_langer_gap(std::int64_t r, int p, const Rational& i_e, const Rational& lmax_omega) {
    if (r < 1) throw InputError("bound_langer_gap: r must be >= 1");
    if (p < 2) throw InputError("bound_langer_gap: p must be >= 2");
    if (i_e.sign() < 0) throw InputError("bound_langer_gap: i_e must be >= 0");
    return Rational(r - 1, p) * max0(lmax_omega) + i_e;
}

Rational bound_tensor(const std::vector<SheafStats>& parts, int p, const Rational& lmax_omega) {
    if (parts.empty()) throw InputError("bound_tensor: needs at least one part");
    if (p < 2) throw InputError("bound_tensor: p must be >= 2");
    std::int64_t rank_sum = 0;
    Rational instab_sum;
    for (const auto& part : parts) {
        part.validate();
        rank_sum += part.rank;
        instab_sum += part.instability;
    }
    const auto m = static_cast<std::int64_t>(parts.size());
    return Rational(rank_sum - m, p) * max0(lmax_omega) + instab_sum;
}

Rational bound_sun(const VarietyContext& ctx, std::int64_t r_e,
                   const std::vector<Rational>& i_tensor_by_l, bool force) {
    ctx.validate();
    if (r_e < 1) throw InputError("bound_sun: r_e must be >= 1");
    const std::size_t expected = static_cast<std::size_t>(ctx.n) * (ctx.p - 1) + 1;
    if (i_tensor_by_l.size() != expected)
        throw InputError("bound_sun: per-l list must have length n(p-1)+1 = " +
                         std::to_string(expected) + ", got " + std::to_string(i_tensor_by_l.size()));
    for (const auto& v : i_tensor_by_l)
        if (v.sign() < 0) throw InputError("bound_sun: per-l entries must be >= 0");
    if (ctx.mu_omega.sign() < 0 && !force)
        throw HypothesisError("bound_sun: requires mu_omega >= 0 (pass force to evaluate anyway)");
    const Rational peak = *std::max_element(i_tensor_by_l.begin(), i_tensor_by_l.end());
    return Rational(pow_int(ctx.p, ctx.n - 1) * r_e) * peak;
}

Rational bound_pushforward_caseI(const VarietyContext& ctx, std::int64_t r_e, bool force) {
    ctx.validate();
    if (r_e < 1) throw InputError("bound_pushforward_caseI: r_e must be >= 1");
    if (!force) {
        if (!ctx.omega_is_semistable())
            throw HypothesisError(
                "bound_pushforward_caseI: requires the cotangent sheaf flagged semistable "
                "(pass force to evaluate anyway)");
        if (ctx.mu_omega.sign() > 0)
            throw HypothesisError(
                "bound_pushforward_caseI: requires mu_omega <= 0 (pass force to evaluate anyway)");
    }
    return Rational(-ctx.n * (ctx.p - 1) * pow_int(ctx.p, ctx.n - 1) * r_e, 2) * ctx.mu_omega;
}

CaseIIBound bound_pushforward_caseII(const VarietyContext& ctx, const SheafStats& stats, bool force) {
    ctx.validate();
    stats.validate();
    if (!ctx.lmax_omega.has_value())
        throw InputError("bound_pushforward_caseII: context is missing lmax_omega");
    if (ctx.mu_omega.sign() < 0 && !force)
        throw HypothesisError(
            "bound_pushforward_caseII: requires mu_omega >= 0 (pass force to evaluate anyway)");
    const Rational lmax_pos = max0(*ctx.lmax_omega);
    const long long mid_cap = (ctx.n / 2) * static_cast<long long>(ctx.p - 1);
    const Rational omega_gap = Rational(ctx.n - 1, ctx.p) * lmax_pos + ctx.i_omega;
    CaseIIBound out;
    const int top = ctx.n * (ctx.p - 1);
    out.per_l.reserve(static_cast<std::size_t>(top) + 1);
    for (int l = 0; l <= top; ++l) {
        const Rational head =
            Rational(rank_tl(ctx.n, ctx.p, l) + stats.rank - 2, BigInt(ctx.p)) * lmax_pos;
        const Rational mid = Rational(std::min<long long>(l, mid_cap)) * omega_gap;
        out.per_l.push_back(head + mid + stats.instability);
    }
    const Rational peak = *std::max_element(out.per_l.begin(), out.per_l.end());
    out.total = Rational(pow_int(ctx.p, ctx.n - 1) * stats.rank) * peak;
    return out;
}

std::vector<Advice> stability_advisor(const VarietyContext& ctx, const EFlags& e_flags,
                                      bool mu_max_omega_nonpositive) {
    ctx.validate();
    const bool e_ss = e_flags.semistable || e_flags.strongly_semistable;
    const bool mu_zero = ctx.mu_omega.is_zero();
    std::vector<Advice> out;
    if (ctx.omega_strongly_semistable && ctx.mu_omega.sign() >= 0 && e_flags.strongly_semistable)
        out.push_back({"F_*E is slope semi-stable", Citation::fro_dirim});
    if (ctx.omega_is_semistable() && mu_zero && e_ss)
        out.push_back({"F_*E is slope strongly semi-stable", Citation::fro_dirim});
    if (e_flags.strongly_semistable)
        out.push_back({"T^l(E) is slope strongly semi-stable for every l in [0, rk(E)(p-1)]",
                       Citation::semistab_tl});
    if (ctx.omega_strongly_semistable)
        out.push_back({"T^l(Omega^1) is slope strongly semi-stable for every l in [0, n(p-1)]",
                       Citation::semistab_tl});
    if (ctx.omega_is_semistable() && mu_zero)
        out.push_back({"B^i (1 <= i <= n) and Z^i (1 <= i <= n-1) are slope strongly semi-stable",
                       Citation::bxzx0});
    if (ctx.omega_is_semistable() && mu_zero && e_ss)
        out.push_back({"F_*E is slope semi-stable (the instability bound is zero)",
                       Citation::diim_minus});
    if (mu_max_omega_nonpositive) {
        out.push_back({"every slope semi-stable sheaf is slope strongly semi-stable",
                       Citation::mehta_ramanathan});
        if (e_ss)
            out.push_back({"E is slope strongly semi-stable", Citation::mehta_ramanathan});
    }
    return out;
}

} // namespace frobstab
