#include "frobstab/forms.hpp"

#include <limits>

namespace frobstab {

namespace {

void require_np(int n, int p) {
    if (n < 1) throw InputError("forms: n must be >= 1");
    if (!is_prime(p)) throw InputError("forms: p must be prime");
}

} // namespace

FormsTable forms_recurrence(int n, int p) {
    require_np(n, p);
    FormsTable table{n, p, {}};
    table.rows.reserve(static_cast<size_t>(n) + 1);
    table.rows.push_back(FormsRow{0, BigInt(0), BigInt(1), Rational(0), Rational(0)});
    const BigInt pn = pow_int(p, n);
    for (int i = 1; i <= n; ++i) {
        const FormsRow& prev = table.rows.back();
        FormsRow row;
        row.i = i;
        row.rank_b = binomial(n, i - 1) * pn - prev.rank_z;
        row.degb_coeff = pushforward_form_degree_coeff(n, p, i - 1) - prev.degz_coeff;
        row.rank_z = row.rank_b + binomial(n, i);
        row.degz_coeff = row.degb_coeff + Rational(BigInt(i) * binomial(n, i));
        if (row.rank_b < 0 || row.rank_z < 0)
            throw InternalError("forms_recurrence: negative rank");
        table.rows.push_back(std::move(row));
    }
    return table;
}

FormsRow forms_closed(int n, int p, int i) {
    require_np(n, p);
    if (i < 1 || i > n) throw InputError("forms_closed: need 1 <= i <= n");
    const BigInt pn = pow_int(p, n);
    const BigInt pn1 = pow_int(p, n - 1);
    FormsRow row;
    row.i = i;
    row.rank_b = binomial(n - 1, i - 1) * (pn - 1);
    Rational degb(BigInt(n) * binomial(n - 1, i - 1) * pn1 * (p - 1), BigInt(2));
    for (int j = 1; j <= i - 1; ++j) {
        BigInt term = BigInt(j) * binomial(n, j) * (pn1 - 1);
        if ((i + j + 1) % 2 != 0) term = -term;
        degb = degb + Rational(term);
    }
    row.degb_coeff = degb;
    row.rank_z = row.rank_b + binomial(n, i);
    row.degz_coeff = row.degb_coeff + Rational(BigInt(i) * binomial(n, i));
    return row;
}

ZiVerdict check_zi_instability(int n, int p, int i) {
    require_np(n, p);
    if (i < 1 || i > n - 1) throw InputError("check_zi_instability: need 1 <= i <= n-1");
    FormsTable table = forms_recurrence(n, p);
    const FormsRow& row = table.rows[static_cast<size_t>(i)];
    ZiVerdict v;
    v.n = n;
    v.p = p;
    v.i = i;
    v.mu_b_coeff = row.degb_coeff / Rational(row.rank_b);
    v.mu_omega_i_coeff = Rational(i);
    v.exact_destabilizes = v.mu_b_coeff > v.mu_omega_i_coeff;
    const BigInt pn = pow_int(p, n);
    v.paper_sufficient_lhs = Rational(BigInt(n) * (pn - p), BigInt(2) * (pn - 1));
    v.paper_sufficient_holds = v.paper_sufficient_lhs > v.mu_omega_i_coeff;
    v.exact_sufficient_lhs =
        Rational(BigInt(n) * pow_int(p, n - 1) * (p - 1), BigInt(2) * (pn - 1));
    v.exact_sufficient_holds = v.exact_sufficient_lhs > v.mu_omega_i_coeff;
    v.sufficient_conflict = v.paper_sufficient_holds != v.exact_sufficient_holds;
    v.in_claimed_range = 2 * i < n;
    return v;
}

HNPolygon z1_hn(int n, int p) {
    require_np(n, p);
    if (n < 3) throw InputError("z1_hn: need n >= 3");
    FormsTable table = forms_recurrence(n, p);
    const FormsRow& row = table.rows[1];
    Rational mu_b = row.degb_coeff / Rational(row.rank_b);
    Rational mu_omega(1);
    if (!(mu_b > mu_omega))
        throw SlopeOrderError("z1_hn: mu(B^1) <= mu(Omega^1), claimed filtration is not slope-ordered");
    if (row.rank_b > BigInt(std::numeric_limits<long long>::max()))
        throw InputError("z1_hn: rank too large");
    SlopeProfile profile({ProfileBlock{row.rank_b.convert_to<long long>(), mu_b},
                          ProfileBlock{n, mu_omega}});
    return polygon_of(profile);
}

const std::vector<std::string>& z1_hn_assumptions() {
    static const std::vector<std::string> assumptions = {
        "mu(Omega^1) > 0",
        "the truncated symmetric powers of Omega^1 are slope semi-stable",
    };
    return assumptions;
}

Rational bound_bn_subsheaf(int n, int p, const BigInt& r_b, const Rational& mu_omega,
                           bool force) {
    require_np(n, p);
    const BigInt pn = pow_int(p, n);
    if (r_b < 1 || r_b > pn - 1)
        throw InputError("bound_bn_subsheaf: need 1 <= r_b <= p^n - 1");
    if (mu_omega.sign() <= 0 && !force)
        throw HypothesisError("bound_bn_subsheaf: requires mu_omega > 0 (use force to override)");
    Rational coeff(-BigInt(n) * (p - 1) * (pn - r_b - 1), BigInt(2) * p * (pn - 1) * r_b);
    return coeff * mu_omega;
}

} // namespace frobstab
