#include <doctest.h>

#include "frobstab/forms.hpp"

using frobstab::BigInt;
using frobstab::FormsRow;
using frobstab::HypothesisError;
using frobstab::InputError;
using frobstab::Rational;
using frobstab::SlopeOrderError;

TEST_CASE("forms table pinned for n = 2, p = 3") {
    const auto table = frobstab::forms_recurrence(2, 3);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].rank_b == 0);
    CHECK(table.rows[0].rank_z == 1);
    CHECK(table.rows[0].degb_coeff.is_zero());
    CHECK(table.rows[0].degz_coeff.is_zero());
    CHECK(table.rows[1].rank_b == 8);
    CHECK(table.rows[1].rank_z == 10);
    CHECK(table.rows[1].degb_coeff == Rational(6));
    CHECK(table.rows[1].degz_coeff == Rational(8));
    CHECK(table.rows[2].rank_b == 8);
    CHECK(table.rows[2].rank_z == 9);
    CHECK(table.rows[2].degb_coeff == Rational(10));
    CHECK(table.rows[2].degz_coeff == Rational(12));
}

TEST_CASE("curve case pinned") {
    const auto table = frobstab::forms_recurrence(1, 3);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[1].rank_b == 2);
    CHECK(table.rows[1].degb_coeff == Rational(1));
    CHECK(table.rows[1].rank_z == 3);
    CHECK(table.rows[1].degz_coeff == Rational(2));
}

TEST_CASE("closed forms agree with the recurrence") {
    for (int n = 1; n <= 6; ++n) {
        for (int p : {2, 3, 5}) {
            const auto table = frobstab::forms_recurrence(n, p);
            for (int i = 1; i <= n; ++i) {
                const FormsRow want = table.rows[static_cast<std::size_t>(i)];
                const FormsRow got = frobstab::forms_closed(n, p, i);
                CHECK(got.rank_b == want.rank_b);
                CHECK(got.rank_z == want.rank_z);
                CHECK(got.degb_coeff == want.degb_coeff);
                CHECK(got.degz_coeff == want.degz_coeff);
            }
        }
    }
}

TEST_CASE("Cartier deltas and the top row") {
    for (int n = 1; n <= 5; ++n) {
        for (int p : {2, 3}) {
            const auto table = frobstab::forms_recurrence(n, p);
            for (int i = 1; i <= n; ++i) {
                const auto& row = table.rows[static_cast<std::size_t>(i)];
                CHECK(row.rank_z - row.rank_b == frobstab::binomial(n, i));
                CHECK(row.degz_coeff - row.degb_coeff == Rational(BigInt(i) * frobstab::binomial(n, i)));
            }
            CHECK(table.rows.back().rank_z == frobstab::pow_int(p, n));
            CHECK(table.rows.back().degz_coeff == frobstab::pushforward_form_degree_coeff(n, p, n));
        }
    }
}

TEST_CASE("forms input validation") {
    CHECK_THROWS_AS(frobstab::forms_recurrence(0, 3), InputError);
    CHECK_THROWS_AS(frobstab::forms_recurrence(2, 4), InputError);
    CHECK_THROWS_AS(frobstab::forms_closed(2, 3, 0), InputError);
    CHECK_THROWS_AS(frobstab::forms_closed(2, 3, 3), InputError);
}

TEST_CASE("verdict for n = 3, p = 2 carries the pinned conflict") {
    const auto v = frobstab::check_zi_instability(3, 2, 1);
    CHECK(v.mu_b_coeff == Rational(6, 7));
    CHECK(v.mu_omega_i_coeff == Rational(1));
    CHECK_FALSE(v.exact_destabilizes);
    CHECK(v.paper_sufficient_lhs == Rational(9, 7));
    CHECK(v.paper_sufficient_holds);
    CHECK(v.exact_sufficient_lhs == Rational(6, 7));
    CHECK_FALSE(v.exact_sufficient_holds);
    CHECK(v.sufficient_conflict);
    CHECK(v.in_claimed_range);
}

TEST_CASE("verdict for n = 3, p = 3 destabilizes with no conflict") {
    const auto v = frobstab::check_zi_instability(3, 3, 1);
    CHECK(v.exact_sufficient_lhs == Rational(27, 26));
    CHECK(v.paper_sufficient_lhs == Rational(18, 13));
    CHECK(v.exact_destabilizes);
    CHECK(v.paper_sufficient_holds);
    CHECK(v.exact_sufficient_holds);
    CHECK_FALSE(v.sufficient_conflict);
}

TEST_CASE("verdict range flag and input validation") {
    CHECK_FALSE(frobstab::check_zi_instability(2, 3, 1).in_claimed_range);
    CHECK(frobstab::check_zi_instability(5, 3, 2).in_claimed_range);
    CHECK_THROWS_AS(frobstab::check_zi_instability(3, 3, 0), InputError);
    CHECK_THROWS_AS(frobstab::check_zi_instability(3, 3, 3), InputError);
    CHECK_THROWS_AS(frobstab::check_zi_instability(3, 4, 1), InputError);
}

TEST_CASE("z1_hn pinned polygon and gates") {
    const auto poly = frobstab::z1_hn(3, 3);
    REQUIRE(poly.vertices.size() == 3);
    CHECK(poly.vertices[0] == std::pair<std::int64_t, Rational>{0, Rational(0)});
    CHECK(poly.vertices[1] == std::pair<std::int64_t, Rational>{26, Rational(27)});
    CHECK(poly.vertices[2] == std::pair<std::int64_t, Rational>{29, Rational(30)});
    CHECK_THROWS_AS(frobstab::z1_hn(3, 2), SlopeOrderError);
    CHECK_THROWS_AS(frobstab::z1_hn(2, 3), InputError);

    const auto& assumptions = frobstab::z1_hn_assumptions();
    REQUIRE(assumptions.size() == 2);
    CHECK(assumptions[0] == "mu(Omega^1) > 0");
    CHECK(assumptions[1] == "the truncated symmetric powers of Omega^1 are slope semi-stable");
}

TEST_CASE("bn subsheaf bound pinned values") {
    CHECK(frobstab::bound_bn_subsheaf(2, 3, 4, Rational(1)) == Rational(-1, 12));
    CHECK(frobstab::bound_bn_subsheaf(2, 3, 8, Rational(1)).is_zero());
    for (BigInt r_b = 1; r_b < 8; ++r_b)
        CHECK(frobstab::bound_bn_subsheaf(2, 3, r_b, Rational(1)).sign() < 0);
    CHECK_THROWS_AS(frobstab::bound_bn_subsheaf(2, 3, 0, Rational(1)), InputError);
    CHECK_THROWS_AS(frobstab::bound_bn_subsheaf(2, 3, 9, Rational(1)), InputError);
    CHECK_THROWS_AS(frobstab::bound_bn_subsheaf(2, 3, 4, Rational(0)), HypothesisError);
    CHECK_THROWS_AS(frobstab::bound_bn_subsheaf(2, 3, 4, Rational(-1)), HypothesisError);
    CHECK(frobstab::bound_bn_subsheaf(2, 3, 4, Rational(-1), true) == Rational(1, 12));
}
