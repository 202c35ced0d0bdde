#include <algorithm>
#include <functional>
#include <set>

#include "doctest.h"
#include "srlnc/analysis.hpp"
#include "srlnc/oracle.hpp"

using namespace srlnc;

namespace {

const RationalPoly x = RationalPoly::variable();
const RationalPoly one = RationalPoly::constant(1);

Rational pow_rational(const Rational& base, std::size_t e) {
    Rational out = 1;
    for (std::size_t k = 0; k < e; ++k) out *= base;
    return out;
}

// Every vector y * C, listed and deduplicated.
std::set<std::vector<Symbol>> row_space(const FqMatrix& c) {
    std::set<std::vector<Symbol>> out;
    const Symbol q = c.spec().order();
    std::vector<Symbol> y(c.rows(), 0);
    while (true) {
        out.insert(multiply(y, c));
        std::size_t k = y.size();
        while (k-- > 0) {
            if (++y[k] < q) break;
            y[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) return out;
    }
}

std::vector<Rational> grid() {
    std::vector<Rational> out;
    for (int k = 1; k <= 19; ++k) out.emplace_back(k, 20);
    return out;
}

}  // namespace

TEST_CASE("weight measure") {
    CHECK(weight_measure(FieldSpec(3), std::vector<Symbol>(4, 0)) == x.pow(4));
    CHECK(weight_measure(FieldSpec(2), std::vector<Symbol>{1, 1, 1}) == (one - x).pow(3));
    CHECK(weight_measure(5, 2, 1) == x * (one - x) * Rational(1, 4));

    // summing over all 16 binary 2x2 matrices gives total mass 1
    RationalPoly total;
    for (Symbol bits = 0; bits < 16; ++bits) {
        FqMatrix m(FieldSpec(2), 2, 2, {bits & 1u, (bits >> 1) & 1u, (bits >> 2) & 1u, (bits >> 3) & 1u});
        total += weight_measure(m);
    }
    CHECK(total == one);
    // and over all 81 ternary 2x2 matrices
    RationalPoly ternary;
    for (Symbol idx = 0; idx < 81; ++idx) {
        FqMatrix m(FieldSpec(3), 2, 2, {idx % 3, idx / 3 % 3, idx / 9 % 3, idx / 27 % 3});
        ternary += weight_measure(m);
    }
    CHECK(ternary == one);
}

TEST_CASE("p(0, n) = p0^n") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) CHECK(p_in(0, 3, FieldSpec(q)).expr == RationalFn(x.pow(3)));
}

TEST_CASE("p(1, 3) and p(2, 3) over F2 match the worked example") {
    const FieldSpec f(2);
    const RationalPoly u = one - x;
    const RationalPoly den1 = one - x.pow(3);
    const RationalFn expected1 = RationalFn(x.pow(3)) + RationalFn(x.pow(4) * u.pow(2) * Rational(3), den1) +
                                 RationalFn(x.pow(2) * u.pow(4) * Rational(3), den1) + RationalFn(u.pow(6), den1);
    CHECK(p_in(1, 3, f).expr == expected1);

    const RationalPoly den2{0, 6, -18, 30, -36, 24, -6};
    const RationalPoly num2 = x.pow(6) * u.pow(3) * Rational(12) + x.pow(5) * u.pow(4) * Rational(36) +
                              x.pow(4) * u.pow(5) * Rational(24) + x.pow(3) * u.pow(6) * Rational(36) +
                              x.pow(2) * u.pow(7) * Rational(12) + x * u.pow(8) * Rational(6);
    CHECK(p_in(2, 3, f).expr == RationalFn(x.pow(3)) + RationalFn(num2, den2));
}

TEST_CASE("p(i, n) agrees with the definition-based oracle") {
    for (std::uint32_t q : {2u, 3u}) {
        const FieldSpec f(q);
        for (std::size_t n = 1; n <= (q == 2 ? 4u : 3u); ++n) {
            for (std::size_t i = 0; i < n; ++i) {
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(i);
                CHECK(p_in(i, n, f).expr == oracle_p_in(i, n, f));
            }
        }
    }
}

TEST_CASE("p(i, n) frozen values") {
    // Brute-force values computed by an independent enumeration script.
    CHECK(p_in(1, 3, FieldSpec(3)).at(Rational(1, 2)) == Rational(47, 224));
    CHECK(p_in(2, 4, FieldSpec(2)).at(Rational(3, 5)) == Rational(1126291, 3566875));
}

TEST_CASE("p(i, n) collapses to (1/q)^(n - i) at p0 = 1/q") {
    for (std::uint32_t q : {2u, 3u}) {
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::size_t i = 0; i < n; ++i) {
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(i);
                CHECK(p_in(i, n, FieldSpec(q)).at(Rational(1, q)) == rlnc_dependency_prob(q, n, i));
            }
        }
    }
}

TEST_CASE("p(i, n) stays in [0, 1] and under the BKW bound") {
    for (std::uint32_t q : {2u, 3u}) {
        for (std::size_t n = 1; n <= (q == 2 ? 4u : 3u); ++n) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto p = p_in(i, n, FieldSpec(q));
                const auto bound = bkw_bound(i, n, FieldSpec(q));
                for (const auto& p0 : grid()) {
                    const Rational v = p.at(p0);
                    REQUIRE(v >= 0);
                    REQUIRE(v <= 1);
                    REQUIRE(v <= bound.at(p0));
                }
            }
        }
    }
}

TEST_CASE("row-space inner sums") {
    const FieldSpec f2(2);
    InnerSumCache cache;
    const auto c = FqMatrix::parse(f2, "1 0 0");
    CHECK(p_in_inner_cached(c, cache) == x.pow(3) + x.pow(2) * (one - x));
    CHECK(p_in_inner(c) == x.pow(2));

    SUBCASE("cache collapses matrices sharing a row space") {
        InnerSumCache shared;
        std::set<std::set<std::vector<Symbol>>> spaces;
        std::size_t matrices = 0;
        for (const auto& m : enumerate_full_rank(f2, 2, 3)) {
            shared.lookup(m);
            spaces.insert(row_space(m));
            ++matrices;
        }
        CHECK(matrices == 42);
        CHECK(spaces.size() == 7);
        CHECK(shared.size() == 7);
        CHECK(shared.misses() == 7);
        CHECK(shared.hits() == 35);
    }
    SUBCASE("cached, uncached and listed row-space sums agree") {
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::size_t i = 1; i <= std::min<std::size_t>(2, n); ++i) {
                InnerSumCache local;
                for (const auto& m : enumerate_full_rank(f2, i, n)) {
                    RationalPoly listed;
                    for (const auto& v : row_space(m)) listed += weight_measure(f2, v);
                    const auto direct = p_in_inner(m);
                    REQUIRE(p_in_inner_cached(m, local) == direct);
                    REQUIRE(direct == listed);
                }
            }
        }
    }
    SUBCASE("value does not depend on which independent columns are chosen") {
        const FieldSpec f3(3);
        CounterRng rng(21);
        const std::vector<std::vector<std::size_t>> perms{{3, 1, 0, 2}, {2, 3, 1, 0}, {1, 0, 3, 2}};
        for (const auto& m : enumerate_full_rank(f3, 2, 4)) {
            if (rng.below(20) != 0) continue;
            for (const auto& perm : perms) {
                REQUIRE(row_space_census(permute_columns(m, perm)) == row_space_census(m));
            }
        }
    }
}

TEST_CASE("full-rank probability") {
    const FieldSpec f2(2);
    SUBCASE("3 x 3 over F2") {
        const auto p = full_rank_prob(3, 3, f2);
        CHECK(p.expr.is_polynomial());
        CHECK(p.expr.num() == RationalPoly{0, 0, 18, -90, 234, -414, 492, -360, 144, -24});
        CHECK(p.formula == Formula::full_rank_product);
        CHECK(p.at(Rational(1, 2)) == Rational(21, 64));
    }
    SUBCASE("uniform collapse") {
        CHECK(full_rank_prob(5, 3, f2).at(Rational(1, 2)) ==
              (1 - Rational(1, 32)) * (1 - Rational(1, 16)) * (1 - Rational(1, 8)));
        for (std::uint32_t q : {2u, 3u}) {
            for (std::size_t n = 1; n <= 3; ++n) {
                for (std::size_t m = n; m <= 4; ++m) {
                    CHECK(full_rank_prob(m, n, FieldSpec(q)).at(Rational(1, q)) == rlnc_full_rank_prob(q, m, n));
                }
            }
        }
    }
    SUBCASE("matches brute force") {
        CHECK(full_rank_prob(3, 2, f2).expr == RationalFn(oracle_full_rank_poly(3, 2, f2).poly));
        CHECK(full_rank_prob(2, 2, FieldSpec(3)).expr == RationalFn(oracle_full_rank_poly(2, 2, FieldSpec(3)).poly));
        // frozen brute-force value
        CHECK(full_rank_prob(3, 2, f2).at(Rational(7, 10)) == Rational(177093, 500000));
    }
    SUBCASE("a taller matrix is never worse") {
        for (std::uint32_t q : {2u, 3u}) {
            for (std::size_t n = 1; n <= 3; ++n) {
                auto shorter = full_rank_prob(n, n, FieldSpec(q));
                for (std::size_t m = n + 1; m <= n + 2; ++m) {
                    const auto taller = full_rank_prob(m, n, FieldSpec(q));
                    for (int k = 0; k <= 20; ++k) REQUIRE(taller.at((Rational(k) / 20)) >= shorter.at((Rational(k) / 20)));
                    shorter = taller;
                }
            }
        }
    }
    SUBCASE("point evaluation short-circuits at degenerate sparsity") {
        CHECK(full_rank_prob_at(2, 2, f2, Rational(1)) == 0);
        CHECK(full_rank_prob_at(3, 3, f2, Rational(0)) == 0);
        CHECK(full_rank_prob_at(3, 3, f2, Rational(1)) == 0);
        // all entries nonzero over F3: det = ad - bc vanishes for half of the 16 matrices
        CHECK(full_rank_prob_at(2, 2, FieldSpec(3), Rational(0)) == Rational(1, 2));
        for (std::uint32_t q : {2u, 3u}) {
            const auto p = full_rank_prob(4, 3, FieldSpec(q));
            for (int k = 0; k <= 10; ++k) {
                CHECK(full_rank_prob_at(4, 3, FieldSpec(q), (Rational(k) / 10)) == p.at((Rational(k) / 10)));
            }
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(full_rank_prob(2, 3, f2), DimensionError);
        CHECK_THROWS_AS(p_in(3, 3, f2), DimensionError);
        CHECK_THROWS_AS(full_rank_prob(5, 3, f2, {.budget = 100}), BudgetExceededError);
    }
    SUBCASE("worker count does not change the result") {
        const auto serial = p_in(2, 5, FieldSpec(2));
        const auto parallel = p_in(2, 5, FieldSpec(2), {.threads = 3});
        CHECK(serial.expr == parallel.expr);
        CHECK(p_in(2, 4, FieldSpec(3), {.threads = 4}).expr == p_in(2, 4, FieldSpec(3)).expr);
    }
}

TEST_CASE("nested dependency sum matches literal nesting") {
    const std::vector<Rational> a{Rational(1, 3), Rational(2, 7), Rational(5, 11), Rational(1)};
    for (std::size_t len = 1; len <= a.size(); ++len) {
        for (std::size_t steps = 0; steps <= 4; ++steps) {
            Rational literal = 0;
            std::function<void(std::size_t, std::size_t, Rational)> rec = [&](std::size_t depth, std::size_t floor,
                                                                              Rational prod) {
                if (depth == steps) {
                    literal += prod;
                    return;
                }
                for (std::size_t k = floor; k < len; ++k) rec(depth + 1, k, prod * a[k]);
            };
            rec(0, 0, Rational(1));
            REQUIRE(nested_dependency_sum(std::span<const Rational>(a.data(), len), steps) == literal);
        }
    }
}

TEST_CASE("nested rank distribution") {
    const FieldSpec f2(2);
    SUBCASE("square full rank equals the product of independent steps") {
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto dist = rank_dist_nested(n, n, f2);
            RationalFn product(one);
            for (std::size_t i = 0; i < n; ++i) product = product * p_in(i, n, f2).expr.one_minus();
            CHECK(dist.probs.back().expr == product);
            CHECK(dist.probs.back().expr == full_rank_prob(n, n, f2).expr);
        }
    }
    SUBCASE("sums to one identically") {
        CHECK(rank_dist_nested(4, 3, f2).total() == RationalFn(one));
        CHECK(rank_dist_nested(3, 2, FieldSpec(3)).total() == RationalFn(one));
    }
    SUBCASE("agrees with the census where the row chain is exact") {
        const auto nested = rank_dist_nested(2, 2, FieldSpec(3));
        const auto census = oracle_rank_census(2, 2, FieldSpec(3));
        for (std::size_t r = 0; r <= 2; ++r) CHECK(nested.probs[r].expr == RationalFn(census.probs[r]));
        CHECK(census.probs[1](Rational(1, 5)) == Rational(208, 625));

        const auto nested43 = rank_dist_nested(4, 3, f2);
        const auto census43 = oracle_rank_census(4, 3, f2);
        for (std::size_t r = 0; r <= 3; ++r) CHECK(nested43.probs[r].at(Rational(1, 2)) == census43.probs[r](Rational(1, 2)));
        CHECK(nested43.probs[0].expr == RationalFn(census43.probs[0]));
    }
    SUBCASE("differs from the census for sparse codes with m > n") {
        // Frozen brute-force values at p0 = 7/10, q = 2, m = 3, n = 2. The
        // column-wise product stays exact; the row-wise chain does not.
        const auto nested = rank_dist_nested_at(3, 2, f2, Rational(7, 10));
        CHECK(nested.probs[0] == Rational(117649, 1000000));
        CHECK(nested.probs[1] == Rational(8960661, 17000000));
        CHECK(nested.probs[2] == Rational(3019653, 8500000));
        CHECK(oracle_rank_census(3, 2, f2).probs[2](Rational(7, 10)) == Rational(177093, 500000));
        CHECK(full_rank_prob(3, 2, f2).at(Rational(7, 10)) == Rational(177093, 500000));
        CHECK(nested.probs[2] != full_rank_prob(3, 2, f2).at(Rational(7, 10)));
    }
    SUBCASE("symbolic and pointwise agree") {
        const auto symbolic = rank_dist_nested(5, 3, f2);
        for (const Rational p0 : {Rational(1, 4), Rational(3, 4)}) {
            const auto at = rank_dist_nested_at(5, 3, f2, p0);
            for (std::size_t r = 0; r <= 3; ++r) CHECK(symbolic.probs[r].at(p0) == at.probs[r]);
        }
    }
}

TEST_CASE("partial-fraction rank distribution") {
    const FieldSpec f2(2);
    SUBCASE("matches the nested form") {
        for (std::size_t m : {3u, 4u, 5u}) {
            for (const Rational p0 : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
                const auto pf = rank_dist_partial_fraction(m, 3, f2, p0);
                const auto nested = rank_dist_nested_at(m, 3, f2, p0);
                CHECK(pf.probs == nested.probs);
                CHECK(pf.total() == 1);
            }
        }
    }
    SUBCASE("square case reduces to the product") {
        const Rational p0(2, 5);
        const auto pf = rank_dist_partial_fraction(3, 3, f2, p0);
        Rational product = 1;
        for (std::size_t i = 0; i < 3; ++i) product *= 1 - p_in(i, 3, f2).at(p0);
        CHECK(pf.probs.back() == product);
    }
    SUBCASE("uniform ternary matches the counting closed form") {
        const auto pf = rank_dist_partial_fraction(4, 2, FieldSpec(3), Rational(1, 3));
        CHECK(pf.probs == rlnc_rank_distribution(3, 4, 2));
    }
    SUBCASE("coincident values are reported") {
        // at p0 = 0 over F2, p(1, 2) = 1 collides with the terminal a = 1
        CHECK_THROWS_AS(rank_dist_partial_fraction(3, 2, f2, Rational(0)), CoincidentValuesError);
        CHECK(rank_dist_nested_at(3, 2, f2, Rational(0)).total() == 1);
    }
}

TEST_CASE("partial-fraction identity") {
    const Rational a(2, 3), b(-5, 7);
    CHECK(partial_fraction_identity_check(std::vector<Rational>{a, b}) == -1);
    CHECK(partial_fraction_identity_check(std::vector<Rational>{1, 2, 3}) == 1);
    CHECK(partial_fraction_identity_check(std::vector<Rational>{Rational(4)}) == 1);
    CHECK_THROWS_AS(partial_fraction_identity_check(std::vector<Rational>{1, 2, 1}), CoincidentValuesError);
    CounterRng rng(17);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = rng.below(7);
        std::vector<Rational> xs;
        while (xs.size() < n + 1) {
            Rational v(static_cast<long>(rng.below(201)) - 100, static_cast<long>(rng.below(30)) + 1);
            v.canonicalize();
            if (std::find(xs.begin(), xs.end(), v) == xs.end()) xs.push_back(v);
        }
        REQUIRE(partial_fraction_identity_check(xs) == (n % 2 == 0 ? 1 : -1));
    }
}

TEST_CASE("BKW bound") {
    const FieldSpec f2(2);
    CHECK(bkw_bound(1, 4, f2).at(Rational(7, 10)) == Rational(343, 1000));
    CHECK(bkw_bound(1, 4, f2).at(0.7) == doctest::Approx(0.343));
    CHECK(bkw_bound(0, 2, FieldSpec(3)).at(Rational(1, 3)) == Rational(1, 9));
    CHECK(bkw_bound(0, 2, FieldSpec(3)).at(Rational(1, 10)) == Rational(81, 400));
    CHECK_THROWS_AS(bkw_bound(2, 2, f2), DimensionError);
}

TEST_CASE("uniform closed forms") {
    CHECK(rlnc_dependency_prob(2, 4, 3) == Rational(1, 2));
    CHECK(rlnc_full_rank_prob(2, 3, 3) == Rational(21, 64));
    for (std::uint32_t q : {2u, 3u}) {
        const auto census = oracle_rank_census(3, 2, FieldSpec(q));
        const auto closed = rlnc_rank_distribution(q, 3, 2);
        for (std::size_t r = 0; r <= 2; ++r) CHECK(census.probs[r](Rational(1, q)) == closed[r]);
    }
}
