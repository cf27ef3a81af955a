#include "frobstab/selfcheck.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace frobstab {

namespace {

using Rng = std::mt19937_64;

int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Rational rand_rational(Rng& rng) {
    return Rational(rand_int(rng, -20, 20), rand_int(rng, 1, 12));
}

Rational rand_nonneg_rational(Rng& rng) {
    return Rational(rand_int(rng, 0, 20), rand_int(rng, 1, 12));
}

// Strictly decreasing slopes over one common denominator, so dot products
// against them reduce to integer dot products against the numerators.
struct SlopeList {
    std::vector<Rational> slopes;
    std::vector<long long> nums;
    long long den = 1;
};

SlopeList random_strict_slopes(Rng& rng, int count) {
    SlopeList out;
    out.den = rand_int(rng, 1, 10);
    std::set<int> nums;
    while (static_cast<int>(nums.size()) < count) nums.insert(rand_int(rng, -40, 40));
    for (auto it = nums.rbegin(); it != nums.rend(); ++it) {
        out.nums.push_back(*it);
        out.slopes.emplace_back(*it, out.den);
    }
    return out;
}

SlopeProfile random_profile(Rng& rng, int max_blocks = 4, int max_total_rank = 6) {
    int k = rand_int(rng, 1, std::min(max_blocks, max_total_rank));
    SlopeList slopes = random_strict_slopes(rng, k);
    int budget = max_total_rank - k;
    std::vector<ProfileBlock> blocks;
    blocks.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        int extra = rand_int(rng, 0, budget);
        budget -= extra;
        blocks.push_back(ProfileBlock{1 + extra, slopes.slopes[static_cast<std::size_t>(i)]});
    }
    return SlopeProfile(std::move(blocks));
}

SlopeProfile random_profile_with_rank(Rng& rng, std::int64_t total_rank) {
    int k = rand_int(rng, 1, static_cast<int>(std::min<std::int64_t>(4, total_rank)));
    SlopeList slopes = random_strict_slopes(rng, k);
    std::vector<ProfileBlock> blocks;
    std::int64_t budget = total_rank - k;
    for (int i = 0; i < k; ++i) {
        std::int64_t extra = (i == k - 1) ? budget : rand_int(rng, 0, static_cast<int>(budget));
        budget -= extra;
        blocks.push_back(ProfileBlock{1 + extra, slopes.slopes[static_cast<std::size_t>(i)]});
    }
    return SlopeProfile(std::move(blocks));
}

// Splits one block of rank >= 2 into (r1, mu + a), (r - r1, balancing slope);
// rank and degree preserved by construction.
std::optional<SlopeProfile> random_refinement(Rng& rng, const SlopeProfile& profile) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < profile.blocks().size(); ++i)
        if (profile.blocks()[i].rank >= 2) candidates.push_back(i);
    if (candidates.empty()) return std::nullopt;
    std::size_t at = candidates[static_cast<std::size_t>(
        rand_int(rng, 0, static_cast<int>(candidates.size()) - 1))];
    const ProfileBlock& block = profile.blocks()[at];
    std::int64_t r1 = rand_int(rng, 1, static_cast<int>(block.rank) - 1);
    std::int64_t r2 = block.rank - r1;
    Rational a(rand_int(rng, 0, 3), rand_int(rng, 1, 4));
    Rational mu1 = block.slope + a;
    Rational mu2 = (Rational(block.rank) * block.slope - Rational(r1) * mu1) / Rational(r2);
    std::vector<ProfileBlock> blocks;
    for (std::size_t i = 0; i < profile.blocks().size(); ++i) {
        if (i == at) {
            blocks.push_back(ProfileBlock{r1, mu1});
            blocks.push_back(ProfileBlock{r2, mu2});
        } else {
            blocks.push_back(profile.blocks()[i]);
        }
    }
    return SlopeProfile(std::move(blocks));
}

class Checker {
public:
    explicit Checker(SuiteResult& r) : r_(r) {}

    void check(bool ok, const std::string& detail) {
        ++r_.cases;
        if (!ok) {
            ++r_.failures;
            if (r_.failure_details.size() < 20) r_.failure_details.push_back(detail);
        }
    }

    template <typename DetailFn>
    void check_lazy(bool ok, DetailFn&& detail) {
        ++r_.cases;
        if (!ok) {
            ++r_.failures;
            if (r_.failure_details.size() < 20) r_.failure_details.push_back(detail());
        }
    }

    template <typename Fn>
    void check_throws_input(Fn&& fn, const std::string& detail) {
        ++r_.cases;
        bool threw = false;
        try {
            fn();
        } catch (const InputError&) {
            threw = true;
        } catch (...) {
        }
        if (!threw) {
            ++r_.failures;
            if (r_.failure_details.size() < 20) r_.failure_details.push_back(detail);
        }
    }

    void note(const std::string& text) { r_.notes.push_back(text); }

private:
    SuiteResult& r_;
};

std::string triple(int a, int b, int c) {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << ")";
    return os.str();
}

void suite_binomial(const GridSpec&, Rng&, Checker& c) {
    for (int n = 0; n <= 30; ++n) {
        BigInt row_sum = 0;
        for (int k = 0; k <= n; ++k) row_sum += binomial(n, k);
        c.check(row_sum == pow_int(2, n), "row sum != 2^n at n=" + std::to_string(n));
        for (int k = 0; k <= n; ++k) {
            c.check_lazy(binomial(n, k) == binomial(n, n - k),
                         [&] { return "symmetry fails at " + triple(n, k, 0); });
            if (n >= 1)
                c.check_lazy(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k),
                             [&] { return "Pascal fails at " + triple(n, k, 0); });
        }
        c.check(binomial(n, -1) == 0 && binomial(n, n + 1) == 0,
                "out-of-range binomial nonzero at n=" + std::to_string(n));
    }
    c.check_throws_input([] { binomial(-1, 0); }, "binomial(-1,0) accepted");
}

// Independent count: coefficient of x^l in prod_i (1 + x + ... + x^{b_i}).
BigInt composition_count_dp(long long l, const std::vector<int>& bounds) {
    if (l < 0) return 0;
    std::vector<BigInt> poly{BigInt(1)};
    for (int b : bounds) {
        std::vector<BigInt> next(poly.size() + static_cast<std::size_t>(b), BigInt(0));
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (int j = 0; j <= b; ++j) next[i + static_cast<std::size_t>(j)] += poly[i];
        poly = std::move(next);
    }
    if (static_cast<std::size_t>(l) >= poly.size()) return 0;
    return poly[static_cast<std::size_t>(l)];
}

void suite_bounded_compositions(const GridSpec& grid, Rng& rng, Checker& c) {
    const int rounds = grid.name == "full" ? 400 : 200;
    for (int round = 0; round < rounds; ++round) {
        int k = rand_int(rng, 0, 4);
        std::vector<int> bounds;
        long long bound_sum = 0;
        for (int i = 0; i < k; ++i) {
            bounds.push_back(rand_int(rng, 0, 5));
            bound_sum += bounds.back();
        }
        long long l = rand_int(rng, 0, static_cast<int>(bound_sum) + 2);
        BigInt count = 0;
        ExponentVector prev;
        bool ordered = true;
        bool valid = true;
        for (const auto& comp : BoundedCompositions(l, bounds)) {
            long long sum = 0;
            for (std::size_t i = 0; i < comp.size(); ++i) {
                sum += comp[i];
                if (comp[i] < 0 || comp[i] > bounds[i]) valid = false;
            }
            if (sum != l) valid = false;
            if (count > 0 && !(prev < comp)) ordered = false;
            prev = comp;
            ++count;
        }
        std::ostringstream key;
        key << "l=" << l << " bounds=[";
        for (std::size_t i = 0; i < bounds.size(); ++i) key << (i ? "," : "") << bounds[i];
        key << "]";
        c.check(valid, "composition out of range for " + key.str());
        c.check(ordered, "enumeration not ascending for " + key.str());
        c.check_lazy(count == composition_count_dp(l, bounds),
                     [&] { return "count != DP count for " + key.str(); });
    }
    c.check(composition_count_dp(0, {}) == 1 && count_bounded_compositions(0, {}) == 1,
            "empty bounds, l=0 should give one empty composition");
    c.check(count_bounded_compositions(1, {}) == 0, "empty bounds, l=1 should be empty");
    c.check(count_bounded_compositions(0, {0, 0}) == 1, "all-zero bounds, l=0");
}

void suite_alt_weighted(const GridSpec&, Rng&, Checker& c) {
    for (int n = 1; n <= 40; ++n) {
        BigInt direct = 0;
        for (int j = 0; j <= n; ++j) {
            BigInt term = BigInt(j) * binomial(n, j);
            direct += (j % 2 == 0) ? term : -term;
        }
        c.check_lazy(alt_weighted_binomial_sum(n) == direct,
                     [&] { return "alt sum != direct sum at n=" + std::to_string(n); });
        const BigInt expected = (n == 1) ? BigInt(-1) : BigInt(0);
        c.check_lazy(alt_weighted_binomial_sum(n) == expected,
                     [&] { return "alt sum wrong value at n=" + std::to_string(n); });
    }
}

void suite_rational(const GridSpec& grid, Rng& rng, Checker& c) {
    const int rounds = grid.name == "full" ? 400 : 200;
    for (int round = 0; round < rounds; ++round) {
        Rational a = rand_rational(rng);
        Rational b = rand_rational(rng);
        c.check(Rational::parse(a.str()) == a, "parse/str roundtrip fails for " + a.str());
        c.check((a + b) - b == a, "(a+b)-b != a for " + a.str() + ", " + b.str());
        if (!b.is_zero())
            c.check((a * b) / b == a, "(a*b)/b != a for " + a.str() + ", " + b.str());
        c.check((a < b) == ((b - a).sign() > 0), "order vs sign mismatch");
        c.check(a.str().find('/') != std::string::npos, "str missing denominator");
        c.check(max0(a).sign() >= 0 && (max0(a) == a || a.sign() < 0), "max0 wrong");
    }
    for (const char* bad : {"", "1/0", "x", "1.5", "1/-2", "--1", "2/", "/2", "1 2"})
        c.check_throws_input([bad] { Rational::parse(bad); },
                             std::string("parse accepted \"") + bad + "\"");
    c.check(Rational::parse("-6/4") == Rational(-3, 2), "parse does not canonicalize");
}

void suite_rank_tl_oracle(const GridSpec& grid, Rng&, Checker& c) {
    for (int p : grid.primes)
        for (int r = 1; r <= grid.max_r; ++r)
            for (int l = 0; l <= r * (p - 1) + 2; ++l)
                c.check_lazy(rank_tl(r, p, l) == rank_tl_oracle(r, p, l),
                             [&] { return "rank_tl != composition count at (r,p,l)=" +
                                          triple(r, p, l); });
}

void suite_truncated_identities(const GridSpec& grid, Rng&, Checker& c) {
    for (int p : grid.primes)
        for (int r = 1; r <= grid.max_r; ++r) {
            const int top = r * (p - 1);
            BigInt total = 0;
            BigInt first_moment = 0;
            for (int l = 0; l <= top; ++l) {
                const BigInt rk = rank_tl(r, p, l);
                total += rk;
                first_moment += BigInt(l) * rk;
                c.check_lazy(rk == rank_tl(r, p, top - l),
                             [&] { return "duality fails at (r,p,l)=" + triple(r, p, l); });
            }
            c.check_lazy(total == pow_int(p, r),
                         [&] { return "rank sum != p^r at (r,p)=" + triple(r, p, 0); });
            c.check_lazy(Rational(first_moment) ==
                             Rational(BigInt(r) * (p - 1) * pow_int(p, r), BigInt(2)),
                         [&] { return "first moment != r(p-1)p^r/2 at (r,p)=" + triple(r, p, 0); });
        }
}

void suite_dvec(const GridSpec& grid, Rng& rng, Checker& c) {
    const int lists = grid.name == "full" ? 50 : 20;
    const int max_r = std::min(grid.max_r, 5);
    for (int p : grid.primes) {
        if (p > 5) continue;
        for (int r = 1; r <= max_r; ++r) {
            for (int round = 0; round < lists; ++round) {
                SlopeList slopes = random_strict_slopes(rng, r);
                const std::vector<int> bounds(static_cast<std::size_t>(r), p - 1);
                for (int l = 0; l <= r * (p - 1); ++l) {
                    const ExponentVector d = dvec(r, p, l);
                    long long d_sum = 0;
                    long long d_value = 0;
                    bool monotone = true;
                    for (int i = 0; i < r; ++i) {
                        d_sum += d[static_cast<std::size_t>(i)];
                        d_value += d[static_cast<std::size_t>(i)] *
                                   slopes.nums[static_cast<std::size_t>(i)];
                        if (i > 0 && d[static_cast<std::size_t>(i)] > d[static_cast<std::size_t>(i - 1)])
                            monotone = false;
                    }
                    c.check_lazy(d_sum == l && monotone,
                                 [&] { return "dvec malformed at (r,p,l)=" + triple(r, p, l); });
                    long long best = std::numeric_limits<long long>::min();
                    for (const auto& comp : BoundedCompositions(l, bounds)) {
                        long long v = 0;
                        for (int i = 0; i < r; ++i)
                            v += comp[static_cast<std::size_t>(i)] *
                                 slopes.nums[static_cast<std::size_t>(i)];
                        best = std::max(best, v);
                    }
                    c.check_lazy(d_value == best,
                                 [&] { return "dvec not optimal at (r,p,l)=" + triple(r, p, l); });
                }
            }
        }
    }
}

void suite_tl2_bound(const GridSpec& grid, Rng& rng, Checker& c) {
    const int rounds = grid.name == "full" ? 300 : 120;
    std::vector<int> primes;
    for (int p : grid.primes)
        if (p <= 5) primes.push_back(p);
    for (int round = 0; round < rounds; ++round) {
        const SlopeProfile profile = random_profile(rng);
        const int p = primes[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(primes.size()) - 1))];
        const long long top = profile.total_rank() * (p - 1);
        for (int l = 0; l <= top; ++l) {
            const Rational exact = instability_tl_exact(profile, p, l);
            c.check_lazy(exact <= bound_tl2(profile, p, l), [&] {
                return "instability exceeds cap at l=" + std::to_string(l) + " p=" +
                       std::to_string(p);
            });
            const TruncatedDecomposition dec = tl_decomposition(profile, p, l);
            const auto [mu_max, mu_min] = tl_extremes(profile, p, l);
            c.check_lazy(!dec.pieces.empty() &&
                             dec.pieces.begin()->first == mu_max &&
                             dec.pieces.rbegin()->first == mu_min,
                         [&] {
                             return "decomposition extremes != d-vector extremes at l=" +
                                    std::to_string(l) + " p=" + std::to_string(p);
                         });
        }
    }
    // Equality witness: two unit blocks one slope apart, p=3, l=2 saturates
    // the cap min{2, 2} * 1; l=3 sits strictly below min{3, 2} * 1.
    const SlopeProfile two_lines({ProfileBlock{1, Rational(1)}, ProfileBlock{1, Rational(0)}});
    c.check(instability_tl_exact(two_lines, 3, 2) == Rational(2) &&
                bound_tl2(two_lines, 3, 2) == Rational(2),
            "cap equality witness failed");
    c.check(instability_tl_exact(two_lines, 3, 3) == Rational(1) &&
                bound_tl2(two_lines, 3, 3) == Rational(2),
            "strict-below witness failed");
}

void suite_refinement(const GridSpec& grid, Rng& rng, Checker& c) {
    const int rounds = grid.name == "full" ? 1000 : 250;
    std::vector<int> primes;
    for (int p : grid.primes)
        if (p <= 5) primes.push_back(p);
    for (int round = 0; round < rounds; ++round) {
        SlopeProfile coarse = random_profile(rng);
        std::optional<SlopeProfile> refined = random_refinement(rng, coarse);
        int guard = 0;
        while (!refined && guard++ < 50) {
            coarse = random_profile(rng);
            refined = random_refinement(rng, coarse);
        }
        if (!refined) continue;
        const SlopeProfile fine = normalize(*refined);
        c.check(fine.total_rank() == coarse.total_rank() &&
                    fine.total_degree() == coarse.total_degree(),
                "refinement changed rank or degree");
        const HNPolygon fine_poly = polygon_of(fine);
        const HNPolygon coarse_poly = polygon_of(normalize(coarse));
        c.check(dominates(fine_poly, coarse_poly), "refinement polygon fails to dominate");
        c.check(dominates_same_endpoints(fine_poly, coarse_poly),
                "equal-endpoint dominance fails for refinement");
        const ProfileStats fine_stats = profile_stats(fine);
        const ProfileStats coarse_stats = profile_stats(coarse);
        c.check(fine_stats.instability >= coarse_stats.instability,
                "instability dropped under refinement");
        const int p = primes[static_cast<std::size_t>(
            rand_int(rng, 0, static_cast<int>(primes.size()) - 1))];
        const int l = rand_int(rng, 0, static_cast<int>(coarse.total_rank()) * (p - 1));
        c.check_lazy(instability_tl_exact(fine, p, l) >= instability_tl_exact(coarse, p, l),
                     [&] {
                         return "truncated instability dropped under refinement at l=" +
                                std::to_string(l) + " p=" + std::to_string(p);
                     });
    }
}

void suite_polygon_order(const GridSpec& grid, Rng& rng, Checker& c) {
    const int rounds = grid.name == "full" ? 300 : 150;
    for (int round = 0; round < rounds; ++round) {
        const SlopeProfile profile = normalize(random_profile(rng));
        const HNPolygon poly = polygon_of(profile);
        c.check(poly.vertices.front().first == 0 && poly.vertices.front().second.is_zero(),
                "polygon does not start at origin");
        c.check(poly.total_rank() == profile.total_rank() &&
                    poly.total_degree() == profile.total_degree(),
                "polygon endpoint mismatch");
        bool heights_ok = poly.height_at(0).is_zero();
        for (const auto& [x, y] : poly.vertices)
            if (poly.height_at(x) != y) heights_ok = false;
        c.check(heights_ok, "height_at disagrees with vertices");
        c.check(dominates(poly, poly) && dominates_same_endpoints(poly, poly),
                "dominance not reflexive");

        std::vector<ProfileBlock> shifted = profile.blocks();
        for (auto& b : shifted) b.slope = b.slope + Rational(1);
        const HNPolygon above = polygon_of(SlopeProfile(shifted));
        c.check(dominates(above, poly) && !dominates_same_endpoints(above, poly),
                "shifted polygon ordering wrong");

        // Transitivity over equal-rank triples; dominance is only a
        // partial order, so test the implication when the premises hold.
        const std::int64_t rank = profile.total_rank();
        const HNPolygon q = polygon_of(normalize(random_profile_with_rank(rng, rank)));
        const HNPolygon s = polygon_of(normalize(random_profile_with_rank(rng, rank)));
        if (dominates(poly, q) && dominates(q, s))
            c.check(dominates(poly, s), "dominance not transitive");
        if (dominates(poly, q) && dominates(q, poly))
            c.check(poly == q, "mutual dominance of normal polygons not equality");
    }
    const HNPolygon small = polygon_of(SlopeProfile({ProfileBlock{1, Rational(0)}}));
    const HNPolygon big = polygon_of(SlopeProfile({ProfileBlock{2, Rational(0)}}));
    c.check_throws_input([&] { dominates(small, big); }, "rank mismatch not rejected");
}

void suite_pushforward_ledger(const GridSpec& grid, Rng& rng, Checker& c) {
    for (int p : grid.primes)
        for (int n = 1; n <= grid.max_n; ++n) {
            for (int round = 0; round < 20; ++round) {
                VarietyContext ctx;
                ctx.n = n;
                ctx.p = p;
                ctx.mu_omega = rand_rational(rng);
                const std::int64_t r = rand_int(rng, 1, 4);
                const Rational mu_e = rand_rational(rng);

                // Degree ledger of the canonical filtration; the graded
                // degrees live one Frobenius pullback up, hence the extra p.
                Rational graded_degree;
                for (int l = 0; l <= n * (p - 1); ++l)
                    graded_degree += Rational(BigInt(r) * rank_tl(n, p, l)) *
                                     (mu_e + Rational(l) * ctx.mu_omega);
                const Rational lhs = Rational(p) * Rational(pow_int(p, n) * r) *
                                     mu_pushforward(ctx, mu_e, 1);
                c.check_lazy(lhs == graded_degree, [&] {
                    return "pushforward degree ledger fails at (n,p,r)=" +
                           triple(n, p, static_cast<int>(r));
                });

                SheafStats stats;
                stats.rank = r;
                stats.slope = mu_e;
                const PushforwardStats push = pushforward_stats(ctx, stats);
                c.check(push.rank == pow_int(p, n) * r && push.degree == Rational(push.rank) * push.slope,
                        "pushforward stats inconsistent");

                c.check(mu_pushforward(ctx, mu_e, 2) ==
                            mu_pushforward(ctx, mu_pushforward(ctx, mu_e, 1), 1),
                        "two pushforwards do not compose");

                const auto layers = canonical_filtration_ranks(ctx, r);
                BigInt layer_sum = 0;
                bool offsets_ok = true;
                for (const auto& layer : layers) {
                    layer_sum += layer.rank;
                    if (layer.slope_offset != Rational(layer.l) * ctx.mu_omega) offsets_ok = false;
                }
                c.check(static_cast<int>(layers.size()) == n * (p - 1) + 1 &&
                            layer_sum == pow_int(p, n) * r && offsets_ok,
                        "canonical filtration ranks inconsistent");

                for (int i = 0; i <= n; ++i) {
                    const auto [form_rank, form_degree] = deg_pushforward_forms(ctx, i);
                    c.check_lazy(form_degree == Rational(form_rank) *
                                                    mu_pushforward(ctx, Rational(i) * ctx.mu_omega, 1),
                                 [&] {
                                     return "form pushforward degree != rank * slope at (n,p,i)=" +
                                            triple(n, p, i);
                                 });
                }
            }
        }
}

void suite_bounds_coherence(const GridSpec& grid, Rng& rng, Checker& c) {
    for (int p : grid.primes)
        for (int n = 1; n <= grid.max_n; ++n)
            for (int round = 0; round < 10; ++round) {
                const std::int64_t r = rand_int(rng, 1, 4);
                const Rational i_e = rand_nonneg_rational(rng);

                VarietyContext flat;
                flat.n = n;
                flat.p = p;
                flat.mu_omega = Rational(0);
                flat.lmax_omega = Rational(0);
                flat.i_omega = Rational(0);
                flat.omega_semistable = true;

                c.check(bound_pushforward_caseI(flat, r).is_zero(),
                        "case I bound nonzero at mu_omega = 0");

                SheafStats stats;
                stats.rank = r;
                stats.slope = rand_rational(rng);
                stats.instability = i_e;
                const CaseIIBound case2 = bound_pushforward_caseII(flat, stats);
                const Rational expected = Rational(pow_int(p, n - 1) * r) * i_e;
                bool per_l_const = true;
                for (const auto& v : case2.per_l)
                    if (v != i_e) per_l_const = false;
                c.check_lazy(per_l_const && case2.total == expected, [&] {
                    return "degenerate case II != p^{n-1} r I(E) at (n,p,r)=" +
                           triple(n, p, static_cast<int>(r));
                });

                const std::vector<Rational> flat_caps(static_cast<std::size_t>(n * (p - 1) + 1), i_e);
                c.check(bound_sun(flat, r, flat_caps) == expected,
                        "constant-cap bound != degenerate case II");

                const Rational lmax = rand_rational(rng);
                c.check(bound_tensor({stats}, p, lmax) ==
                            bound_langer_gap(r, p, i_e, lmax),
                        "single-factor tensor bound != rank gap bound");
                if (lmax.sign() <= 0)
                    c.check(bound_langer_gap(r, p, i_e, lmax) == i_e,
                            "rank gap bound != i_e for lmax <= 0");

                const int l = rand_int(rng, 0, n * (p - 1));
                const Rational recomputed =
                    Rational(std::min<long long>(l, (r / 2) * (p - 1))) *
                    (Rational(r - 1, p) * max0(lmax) + i_e);
                c.check(bound_instab_tl(static_cast<int>(r), p, l, i_e, lmax) == recomputed,
                        "truncated instability bound formula mismatch");
            }
}

void suite_forms_oracle(const GridSpec& grid, Rng&, Checker& c) {
    for (int p : grid.primes)
        for (int n = 1; n <= grid.max_n; ++n) {
            const FormsTable table = forms_recurrence(n, p);
            const BigInt pn = pow_int(p, n);
            c.check(static_cast<int>(table.rows.size()) == n + 1, "row count wrong");
            const FormsRow& zero = table.rows[0];
            c.check(zero.rank_b == 0 && zero.rank_z == 1 && zero.degb_coeff.is_zero() &&
                        zero.degz_coeff.is_zero(),
                    "row 0 convention violated");
            for (int i = 1; i <= n; ++i) {
                const FormsRow& row = table.rows[static_cast<std::size_t>(i)];
                const FormsRow closed = forms_closed(n, p, i);
                c.check_lazy(row.rank_b == closed.rank_b && row.rank_z == closed.rank_z &&
                                 row.degb_coeff == closed.degb_coeff &&
                                 row.degz_coeff == closed.degz_coeff,
                             [&] { return "closed form != recurrence at (n,p,i)=" + triple(n, p, i); });
                c.check_lazy(row.rank_z - row.rank_b == binomial(n, i) &&
                                 row.degz_coeff - row.degb_coeff ==
                                     Rational(BigInt(i) * binomial(n, i)),
                             [&] { return "quotient deltas wrong at (n,p,i)=" + triple(n, p, i); });
                const FormsRow& prev = table.rows[static_cast<std::size_t>(i - 1)];
                c.check_lazy(row.rank_b + prev.rank_z == binomial(n, i - 1) * pn,
                             [&] { return "exact sequence rank fails at (n,p,i)=" + triple(n, p, i); });
            }
            const FormsRow& top = table.rows[static_cast<std::size_t>(n)];
            c.check(top.rank_z == pn, "top row rank != p^n");
            c.check(top.degz_coeff == pushforward_form_degree_coeff(n, p, n),
                    "top row degree != pushforward of the canonical sheaf");
            if (n == 1)
                c.check(table.rows[1].rank_b == p - 1 &&
                            table.rows[1].degb_coeff == Rational(p - 1, 2),
                        "curve case mismatch");
        }
}

void suite_zi_verdicts(const GridSpec& grid, Rng&, Checker& c) {
    for (int p : grid.primes)
        for (int n = 2; n <= grid.max_n; ++n)
            for (int i = 1; i <= n - 1; ++i) {
                const ZiVerdict v = check_zi_instability(n, p, i);
                const FormsRow closed = forms_closed(n, p, i);
                c.check_lazy(v.mu_b_coeff == closed.degb_coeff / Rational(closed.rank_b),
                             [&] { return "verdict slope != closed form at " + triple(n, p, i); });
                c.check(v.in_claimed_range == (2 * i < n), "claimed-range marker wrong");
                c.check(v.exact_destabilizes == (v.mu_b_coeff > Rational(i)),
                        "destabilization flag inconsistent");
                if (p >= 3 && 2 * i < n)
                    c.check_lazy(v.exact_destabilizes,
                                 [&] { return "no destabilization at odd-p " + triple(n, p, i); });
            }

    if (std::find(grid.primes.begin(), grid.primes.end(), 2) != grid.primes.end() &&
        grid.max_n >= 3) {
        const ZiVerdict v = check_zi_instability(3, 2, 1);
        c.check(v.sufficient_conflict && v.paper_sufficient_lhs == Rational(9, 7) &&
                    v.exact_sufficient_lhs == Rational(6, 7) && !v.exact_destabilizes,
                "(3,2,1) printed-vs-exact conflict not reported");
    }

    // Observed properties, recorded rather than asserted.
    {
        std::vector<std::string> breaks;
        for (int n = 2; n <= grid.max_n; ++n)
            for (int i = 1; i <= n - 1; ++i) {
                bool seen_true = false;
                for (int p : {2, 3, 5, 7, 11}) {
                    const bool now = check_zi_instability(n, p, i).exact_destabilizes;
                    if (seen_true && !now) breaks.push_back(triple(n, p, i));
                    seen_true = seen_true || now;
                }
            }
        if (breaks.empty()) {
            c.note("exact_destabilizes monotone in p over {2,3,5,7,11} at every grid point");
        } else {
            std::string msg = "exact_destabilizes monotonicity in p breaks at:";
            for (const auto& b : breaks) msg += " " + b;
            c.note(msg);
        }
    }
    {
        std::vector<std::string> nonpositive;
        for (int p : grid.primes)
            for (int n = 2; n <= grid.max_n; ++n)
                for (int i = 2; i <= n - 1; ++i) {
                    BigInt sum = 0;
                    for (int j = 1; j <= i - 1; ++j) {
                        BigInt term = BigInt(j) * binomial(n, j) * (pow_int(p, n - 1) - 1);
                        if ((i + j + 1) % 2 != 0) term = -term;
                        sum += term;
                    }
                    if (sum <= 0) nonpositive.push_back(triple(n, p, i));
                }
        if (nonpositive.empty()) {
            c.note("alternating correction sum positive at every grid point with i >= 2");
        } else {
            std::string msg = "alternating correction sum fails positivity at:";
            for (const auto& b : nonpositive) msg += " " + b;
            c.note(msg);
        }
    }
}

void suite_bn_bound(const GridSpec& grid, Rng& rng, Checker& c) {
    for (int p : grid.primes)
        for (int n = 1; n <= grid.max_n; ++n) {
            const BigInt pn = pow_int(p, n);
            const Rational mu_omega(1);
            const BigInt top = pn - 1;
            c.check(bound_bn_subsheaf(n, p, top, mu_omega).is_zero(),
                    "bound nonzero at the full-rank boundary");
            std::vector<BigInt> samples;
            if (top <= 3000) {
                for (BigInt r_b = 1; r_b < top; ++r_b) samples.push_back(r_b);
            } else {
                samples.push_back(1);
                samples.push_back(top - 1);
                const long long cap = top.convert_to<long long>() - 1;
                for (int k = 0; k < 200; ++k)
                    samples.push_back(BigInt(
                        std::uniform_int_distribution<long long>(1, cap)(rng)));
            }
            for (const auto& r_b : samples)
                c.check_lazy(bound_bn_subsheaf(n, p, r_b, mu_omega).sign() < 0, [&] {
                    return "bound not negative at r_b=" + r_b.str() + " (n,p)=" +
                           triple(n, p, 0);
                });
            c.check_throws_input([&] { bound_bn_subsheaf(n, p, BigInt(0), mu_omega); },
                                 "r_b = 0 accepted");
            c.check_throws_input([&] { bound_bn_subsheaf(n, p, pn, mu_omega); },
                                 "r_b = p^n accepted");
            bool hypothesis_guard = false;
            try {
                bound_bn_subsheaf(n, p, BigInt(1), Rational(-1));
            } catch (const HypothesisError&) {
                hypothesis_guard = true;
            }
            c.check(hypothesis_guard, "negative mu_omega accepted without force");
            if (pn > 2)
                c.check(bound_bn_subsheaf(n, p, BigInt(1), Rational(-1), true).sign() > 0,
                        "forced evaluation has wrong sign");
        }
}

struct SuiteEntry {
    const char* name;
    void (*run)(const GridSpec&, Rng&, Checker&);
};

constexpr SuiteEntry kSuites[] = {
    {"binomial-identities", suite_binomial},
    {"bounded-compositions", suite_bounded_compositions},
    {"alt-weighted-binomial", suite_alt_weighted},
    {"rational-roundtrip", suite_rational},
    {"rank-tl-oracle", suite_rank_tl_oracle},
    {"truncated-identities", suite_truncated_identities},
    {"dvec-optimality", suite_dvec},
    {"tl2-bound", suite_tl2_bound},
    {"tl1-refinement", suite_refinement},
    {"polygon-order", suite_polygon_order},
    {"pushforward-ledger", suite_pushforward_ledger},
    {"bounds-coherence", suite_bounds_coherence},
    {"forms-oracle", suite_forms_oracle},
    {"zi-verdicts", suite_zi_verdicts},
    {"bn-bound", suite_bn_bound},
};

} // namespace

GridSpec GridSpec::make(const std::string& name) {
    if (name == "small") return GridSpec{"small", 4, 4, {2, 3}};
    if (name == "full") return GridSpec{"full", 6, 6, {2, 3, 5, 7}};
    throw InputError("unknown grid \"" + name + "\" (expected small or full)");
}

SelfcheckReport selfcheck(const std::string& grid_name, std::uint64_t seed) {
    const GridSpec grid = GridSpec::make(grid_name);
    SelfcheckReport report;
    report.grid = grid.name;
    report.seed = seed;
    std::uint64_t salt = 0;
    for (const SuiteEntry& entry : kSuites) {
        ++salt;
        SuiteResult result;
        result.name = entry.name;
        Checker checker(result);
        Rng rng(seed + 0x9E3779B97F4A7C15ULL * salt);
        entry.run(grid, rng, checker);
        report.total_cases += result.cases;
        report.suites.push_back(std::move(result));
    }
    report.paper_notes = {
        {"dvec-indexing",
         "the extremal exponent vector takes floor(l/(p-1)) leading (p-1) entries; the printed "
         "floor(l/p) indexing breaks sum(d_i) = l, e.g. (r,p,l) = (3,3,4) would give (2,1,0)"},
        {"instzix-simplification",
         "the printed sufficient quantity n(p^n-p)/(2(p^n-1)) equals the exact first-term ratio "
         "n p^{n-1}(p-1)/(2(p^n-1)) only for n = 2; at (n,p,i) = (3,2,1) they give 9/7 vs 6/7 "
         "and opposite verdicts, so both are reported"},
        {"phi0-strict-inequality",
         "the nonvanishing range for a truncated factor exponent is 0 <= c <= r(p-1) inclusive; "
         "the printed strict upper bound would make the top truncated power vanish"},
    };
    report.all_passed = true;
    for (const auto& suite : report.suites)
        if (suite.failures > 0) report.all_passed = false;
    return report;
}

Json to_json(const SelfcheckReport& report) {
    Json suites = Json::array();
    for (const auto& suite : report.suites) {
        Json s;
        s["name"] = suite.name;
        s["cases"] = suite.cases;
        s["failures"] = suite.failures;
        s["notes"] = suite.notes;
        s["failure_details"] = suite.failure_details;
        suites.push_back(std::move(s));
    }
    Json notes = Json::array();
    for (const auto& note : report.paper_notes) {
        Json n;
        n["id"] = note.id;
        n["detail"] = note.detail;
        notes.push_back(std::move(n));
    }
    Json out;
    out["grid"] = report.grid;
    out["seed"] = report.seed;
    out["suites"] = std::move(suites);
    out["paper-notes"] = std::move(notes);
    out["total_cases"] = report.total_cases;
    out["passed"] = report.all_passed;
    return out;
}

} // namespace frobstab
