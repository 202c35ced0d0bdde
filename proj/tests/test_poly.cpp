#include "doctest.h"
#include "srlnc/errors.hpp"
#include "srlnc/poly.hpp"
#include "srlnc/rng.hpp"

using namespace srlnc;

namespace {

const RationalPoly p0 = RationalPoly::variable();
const RationalPoly one = RationalPoly::constant(1);

RationalPoly random_poly(CounterRng& rng, unsigned max_degree) {
    std::vector<Rational> c(rng.below(max_degree + 1) + 1);
    for (auto& v : c) {
        v = Rational(static_cast<long>(rng.below(11)) - 5, static_cast<long>(rng.below(4)) + 1);
        v.canonicalize();
    }
    return RationalPoly(std::move(c));
}

RationalPoly random_nonzero(CounterRng& rng, unsigned max_degree) {
    while (true) {
        auto p = random_poly(rng, max_degree);
        if (!p.is_zero()) return p;
    }
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_rational("7/10") == Rational(7, 10));
    CHECK(parse_rational("0.7") == Rational(7, 10));
    CHECK(parse_rational("-2/4") == Rational(-1, 2));
    CHECK(parse_rational("1") == 1);
    CHECK(parse_rational(".25") == Rational(1, 4));
    CHECK(parse_rational("1.25e-2") == Rational(1, 80));
    CHECK(parse_rational("3E2") == 300);
    CHECK(parse_rational(" 1/3 ") == Rational(1, 3));
    for (const char* bad : {"", "abc", "1/0", "1/-2", "1.2.3", "e5", "1e", "--1", "1/"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_rational(bad), ParseError);
    }
}

TEST_CASE("round-to-nearest conversion") {
    CHECK(to_double(Rational(1, 3)) == 1.0 / 3.0);
    CHECK(to_double(Rational(2, 3)) == 2.0 / 3.0);
    CHECK(to_double(Rational(7, 10)) == 0.7);
    CHECK(to_double(Rational(-1, 10)) == -0.1);
}

TEST_CASE("polynomial arithmetic") {
    CHECK((one - p0) * (one + p0) == one - p0 * p0);
    CHECK(p0.pow(0) == one);
    CHECK((p0 + one).pow(3) == RationalPoly{1, 3, 3, 1});
    CHECK(RationalPoly{1, 2, 0, 0}.degree() == 1);
    CHECK(RationalPoly{0, 0}.is_zero());
    CHECK(RationalPoly{}.degree() == -1);
    CHECK((p0 - p0).is_zero());
}

TEST_CASE("ring axioms on random polynomials") {
    CounterRng rng(5);
    for (int t = 0; t < 200; ++t) {
        const auto a = random_poly(rng, 4);
        const auto b = random_poly(rng, 4);
        const auto c = random_poly(rng, 4);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a * b == b * a);
        REQUIRE(a - a == RationalPoly{});
    }
}

TEST_CASE("division and gcd") {
    const auto sq_minus_one = p0 * p0 - one;
    CHECK(gcd(sq_minus_one, p0 - one) == p0 - one);
    CHECK(gcd(RationalPoly{2, 4}, RationalPoly{}) == RationalPoly{Rational(1, 2), 1});
    CHECK_THROWS_AS(gcd(RationalPoly{}, RationalPoly{}), DegenerateError);
    CHECK_THROWS_AS(divmod(p0, RationalPoly{}), DegenerateError);

    CounterRng rng(6);
    for (int t = 0; t < 200; ++t) {
        const auto f = random_nonzero(rng, 3);
        const auto g = random_nonzero(rng, 3);
        const auto h = random_nonzero(rng, 3);
        const auto d = gcd(f * g, f * h);
        REQUIRE(d.leading() == 1);
        REQUIRE(divmod(d, f.monic()).second.is_zero());
        REQUIRE(divmod(f * g, d).second.is_zero());
        const auto [quot, rem] = divmod(f * g + h, g);
        REQUIRE(quot * g + rem == f * g + h);
        REQUIRE(rem.degree() < g.degree());
    }
}

TEST_CASE("rational function arithmetic") {
    const RationalFn x(p0);
    CHECK(RationalFn(p0.pow(3)).one_minus() == RationalFn(one - p0.pow(3)));
    CHECK(RationalFn(p0, one - p0) * RationalFn(one - p0) == x);
    CHECK(RationalFn(p0 * p0 - one, p0 - one) == RationalFn(p0 + one));
    CHECK(RationalFn(RationalPoly{2}, RationalPoly{4}) == RationalFn(RationalPoly{Rational(1, 2)}));
    CHECK(RationalFn(p0, RationalPoly{2, 2}).den() == RationalPoly{1, 1});
    CHECK_THROWS_AS(RationalFn(p0, RationalPoly{}), DegenerateError);
    CHECK_THROWS_AS(x / RationalFn(), DegenerateError);
    CHECK(RationalFn(RationalPoly{}, p0 + one).den() == one);
}

TEST_CASE("canonical form is independent of the arithmetic route") {
    CounterRng rng(8);
    for (int t = 0; t < 100; ++t) {
        const RationalFn a(random_poly(rng, 3), random_nonzero(rng, 2));
        const RationalFn c(random_poly(rng, 2), random_nonzero(rng, 2));
        const RationalFn d(random_nonzero(rng, 2), random_nonzero(rng, 2));
        // a/b + c/d == (ad + cb)/(bd)
        const RationalFn lhs = a + c;
        const RationalFn rhs(a.num() * c.den() + c.num() * a.den(), a.den() * c.den());
        REQUIRE(lhs == rhs);
        REQUIRE((a + c) * d == a * d + c * d);
        REQUIRE((a - c) + c == a);
        REQUIRE((a / d) * d == a);
        REQUIRE(lhs.den().leading() == 1);
        REQUIRE(gcd(lhs.num().is_zero() ? one : lhs.num(), lhs.den()).degree() == 0);
    }
}

TEST_CASE("evaluation") {
    CHECK(RationalFn(p0.pow(3))(Rational(1, 2)) == Rational(1, 8));
    const RationalFn pole(p0, one - p0.pow(3));
    CHECK_THROWS_AS(pole(Rational(1)), PoleError);
    CHECK(pole(Rational(1, 2)) == Rational(4, 7));
    CHECK(pole(0.5) == 4.0 / 7.0);

    CounterRng rng(9);
    for (int t = 0; t < 100; ++t) {
        const RationalFn a(random_poly(rng, 3), random_nonzero(rng, 2));
        const RationalFn b(random_poly(rng, 3), random_nonzero(rng, 2));
        Rational x(static_cast<long>(rng.below(41)) - 20, 7);
        x.canonicalize();
        try {
            const Rational ax = a(x);
            const Rational bx = b(x);
            REQUIRE((a * b)(x) == ax * bx);
            REQUIRE((a + b)(x) == ax + bx);
        } catch (const PoleError&) {
        }
    }
}

TEST_CASE("rendering") {
    const RationalPoly example{0, 0, 18, -90, 234, -414, 492, -360, 144, -24};
    CHECK(to_string(example) == "-24p0^9 +144p0^8 -360p0^7 +492p0^6 -414p0^5 +234p0^4 -90p0^3 +18p0^2");
    CHECK(to_string(p0.pow(3)) == "p0^3");
    CHECK(to_string(one - p0) == "-p0 +1");
    CHECK(to_string(RationalPoly{}) == "0");
    CHECK(to_string(RationalPoly{Rational(1, 2), 0, Rational(-3, 4)}) == "-(3/4)p0^2 +1/2");
    CHECK(to_string(RationalFn(p0, one - p0)) == "(-p0) / (p0 -1)");
}

TEST_CASE("json form round-trips") {
    const RationalFn f(RationalPoly{Rational(1, 3), 0, -2}, RationalPoly{1, 5});
    const auto j = to_json(f);
    // denominator is made monic: (1/3 - 2p0^2) / (1 + 5p0) -> (1/15 - (2/5)p0^2) / (p0 + 1/5)
    CHECK(j["num"][0] == nlohmann::json::array({"1", "15"}));
    CHECK(j["den"].size() == 2);
    CHECK(fn_from_json(j) == f);
    CHECK(fn_from_json(nlohmann::json::parse(j.dump())) == f);
    CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"([[1, 2]])")), ParseError);
    CHECK_THROWS_AS(fn_from_json(nlohmann::json::parse(R"({"num": []})")), ParseError);
}
