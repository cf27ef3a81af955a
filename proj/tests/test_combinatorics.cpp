#include <doctest.h>

#include <vector>

#include "frobstab/combinatorics.hpp"

using frobstab::BigInt;
using frobstab::BoundedCompositions;
using frobstab::ExponentVector;
using frobstab::InputError;

TEST_CASE("is_prime on small values") {
    const std::vector<int> primes = {2, 3, 5, 7, 11, 13, 97};
    for (int p : primes) CHECK(frobstab::is_prime(p));
    for (int q : {-2, 0, 1, 4, 6, 9, 15, 91}) CHECK_FALSE(frobstab::is_prime(q));
}

TEST_CASE("pow_int") {
    CHECK(frobstab::pow_int(3, 4) == 81);
    CHECK(frobstab::pow_int(2, 0) == 1);
    CHECK(frobstab::pow_int(7, 1) == 7);
    CHECK(frobstab::pow_int(2, 64) == BigInt("18446744073709551616"));
}

TEST_CASE("binomial values and edges") {
    CHECK(frobstab::binomial(5, 2) == 10);
    CHECK(frobstab::binomial(0, 0) == 1);
    CHECK(frobstab::binomial(3, 5) == 0);
    CHECK(frobstab::binomial(3, -1) == 0);
    CHECK(frobstab::binomial(52, 26) == BigInt("495918532948104"));
    CHECK_THROWS_AS(frobstab::binomial(-1, 0), InputError);
}

TEST_CASE("binomial satisfies the Pascal recurrence") {
    for (long long n = 1; n <= 20; ++n)
        for (long long k = 0; k <= n; ++k)
            CHECK(frobstab::binomial(n, k) ==
                  frobstab::binomial(n - 1, k - 1) + frobstab::binomial(n - 1, k));
}

TEST_CASE("alternating weighted binomial sum") {
    CHECK(frobstab::alt_weighted_binomial_sum(1) == -1);
    for (int n = 2; n <= 12; ++n) CHECK(frobstab::alt_weighted_binomial_sum(n) == 0);
}

TEST_CASE("bounded compositions enumerate ascending and complete") {
    BoundedCompositions stream(2, {2, 2});
    std::vector<ExponentVector> got;
    for (const auto& v : stream) got.push_back(v);
    const std::vector<ExponentVector> want = {{0, 2}, {1, 1}, {2, 0}};
    CHECK(got == want);
}

TEST_CASE("composition count matches enumeration") {
    for (int m = 1; m <= 3; ++m) {
        for (int bound = 0; bound <= 4; ++bound) {
            const std::vector<int> bounds(static_cast<std::size_t>(m), bound);
            for (long long l = 0; l <= static_cast<long long>(m) * bound + 1; ++l) {
                BigInt n = 0;
                for (const auto& v : BoundedCompositions(l, bounds)) {
                    long long sum = 0;
                    for (std::size_t i = 0; i < v.size(); ++i) {
                        CHECK(v[i] >= 0);
                        CHECK(v[i] <= bounds[i]);
                        sum += v[i];
                    }
                    CHECK(sum == l);
                    ++n;
                }
                CHECK(n == frobstab::count_bounded_compositions(l, bounds));
            }
        }
    }
}

TEST_CASE("compositions with mixed bounds") {
    BigInt n = 0;
    for (const auto& v : BoundedCompositions(3, {1, 2, 3})) {
        (void)v;
        ++n;
    }
    // (0,0,3) (0,1,2) (0,2,1) (1,0,2) (1,1,1) (1,2,0)
    CHECK(n == 6);
    CHECK(frobstab::count_bounded_compositions(3, {1, 2, 3}) == 6);
    CHECK(frobstab::count_bounded_compositions(7, {1, 2, 3}) == 0);
    CHECK(frobstab::count_bounded_compositions(0, {1, 2, 3}) == 1);
}
