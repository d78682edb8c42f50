#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace mahlerkit;
namespace mt = mahlerkit::testing;

namespace {
Poly P(std::initializer_list<long> coeffs) {
    std::vector<Rational> v;
    for (long c : coeffs) v.emplace_back(c);
    return Poly(std::move(v));
}
} // namespace

TEST_CASE("rational canonical form") {
    REQUIRE(Rational(2, 4) == Rational(1, 2));
    REQUIRE(Rational(-2, -4) == Rational(1, 2));
    REQUIRE(Rational(2, -4).str() == "-1/2");
    REQUIRE(Rational::from_string("-7/21").str() == "-1/3");
    REQUIRE(Rational::from_string("42").den() == 1);
    REQUIRE_THROWS_AS(Rational(1, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(Rational::from_string("x"), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic") {
    SECTION("gcd of x^2-1 and x-1 is x-1") {
        REQUIRE(gcd(P({-1, 0, 1}), P({-1, 1})) == P({-1, 1}));
    }
    SECTION("(1-x)(1+x) = 1-x^2") {
        REQUIRE(P({1, -1}) * P({1, 1}) == P({1, 0, -1}));
    }
    SECTION("divrem(x^3, x^2) = (x, 0)") {
        auto [q, r] = divrem(P({0, 0, 0, 1}), P({0, 0, 1}));
        REQUIRE(q == P({0, 1}));
        REQUIRE(r.is_zero());
    }
    SECTION("division by zero polynomial") {
        REQUIRE_THROWS_AS(divrem(P({1}), Poly()), std::invalid_argument);
    }
    SECTION("divrem identity on random pairs") {
        std::mt19937 rng(7);
        for (int i = 0; i < 50; ++i) {
            const Poly a = mt::random_poly(rng, 6);
            const Poly b = mt::random_poly(rng, 4);
            auto [q, r] = divrem(a, b);
            REQUIRE(q * b + r == a);
            REQUIRE(r.degree() < b.degree());
        }
    }
}

TEST_CASE("laurent_expand") {
    SECTION("geometric series") {
        const LaurentTrunc f = laurent_expand(parse_ratfunc_expr("1/(1-x)"), 5);
        REQUIRE(f.valuation_bound() == 0);
        REQUIRE(f.order() == 5);
        for (long e = 0; e < 5; ++e) REQUIRE(f.at(e) == Rational(1));
    }
    SECTION("principal part: 1/(x(1-x))") {
        const LaurentTrunc f = laurent_expand(parse_ratfunc_expr("1/(x*(1-x))"), 3);
        REQUIRE(f.valuation_bound() == -1);
        for (long e = -1; e < 3; ++e) REQUIRE(f.at(e) == Rational(1));
    }
    SECTION("x/(1-x^2)") {
        const LaurentTrunc f = laurent_expand(parse_ratfunc_expr("x/(1-x^2)"), 6);
        const long want[] = {0, 1, 0, 1, 0, 1};
        for (long e = 0; e < 6; ++e) REQUIRE(f.at(e) == Rational(want[e]));
    }
    SECTION("truncation consistency") {
        std::mt19937 rng(11);
        for (int i = 0; i < 20; ++i) {
            const RatFunc a = mt::random_ratfunc(rng, 4);
            const LaurentTrunc big = laurent_expand(a, 40);
            REQUIRE(big.truncated(17).agrees_with(laurent_expand(a, 17)));
            REQUIRE(big.truncated(17).order() == 17);
        }
    }
}

TEST_CASE("substitute_power") {
    SECTION("1+x with m=3") {
        const LaurentTrunc f(0, {Rational(1), Rational(1)}, 2);
        const LaurentTrunc g = substitute_power(f, 3);
        REQUIRE(g.order() == 4);
        REQUIRE(g.at(0) == Rational(1));
        REQUIRE(g.at(1) == Rational(0));
        REQUIRE(g.at(2) == Rational(0));
        REQUIRE(g.at(3) == Rational(1));
    }
    SECTION("monomial x^-1 with m=2") {
        const LaurentTrunc f(-1, {Rational(1)}, 0);
        const LaurentTrunc g = substitute_power(f, 2);
        REQUIRE(g.valuation_bound() == -2);
        REQUIRE(g.order() == -1);
        REQUIRE(g.at(-2) == Rational(1));
    }
    SECTION("1+x+x^2 with m=2") {
        const LaurentTrunc f(0, {Rational(1), Rational(1), Rational(1)}, 3);
        const LaurentTrunc g = substitute_power(f, 2);
        REQUIRE(g.order() == 5);
        const long want[] = {1, 0, 1, 0, 1};
        for (long e = 0; e < 5; ++e) REQUIRE(g.at(e) == Rational(want[e]));
    }
}

TEST_CASE("section_series") {
    SECTION("even part of the all-ones series") {
        const LaurentTrunc f(0, std::vector<Rational>(5, Rational(1)), 5);
        const LaurentTrunc s = section_series(f, 2, 0);
        REQUIRE(s.order() == 3);
        for (long e = 0; e < 3; ++e) REQUIRE(s.at(e) == Rational(1));
    }
    SECTION("f = x, m=2, j=1") {
        const LaurentTrunc f(0, {Rational(0), Rational(1)}, 2);
        const LaurentTrunc s = section_series(f, 2, 1);
        REQUIRE(s.at(0) == Rational(1));
    }
    SECTION("odd-index extraction") {
        const LaurentTrunc f(0, {Rational(1), Rational(2), Rational(3), Rational(4)}, 4);
        const LaurentTrunc s = section_series(f, 2, 1);
        REQUIRE(s.order() == 2);
        REQUIRE(s.at(0) == Rational(2));
        REQUIRE(s.at(1) == Rational(4));
    }
}

TEST_CASE("section_ratfunc") {
    SECTION("a = x, m = 2") {
        const auto c = section_ratfunc(parse_ratfunc_expr("x"), 2);
        REQUIRE(c[0].is_zero());
        REQUIRE(c[1] == RatFunc(1));
    }
    SECTION("a = 1/(1-x), m = 2: both sections 1/(1-x)") {
        // oracle: expand both sides to order 50 and compare coefficientwise
        const RatFunc a = parse_ratfunc_expr("1/(1-x)");
        const auto c = section_ratfunc(a, 2);
        const RatFunc expected = parse_ratfunc_expr("1/(1-x)");
        REQUIRE(laurent_expand(c[0], 50).agrees_with(laurent_expand(expected, 50)));
        REQUIRE(laurent_expand(c[1], 50).agrees_with(laurent_expand(expected, 50)));
        REQUIRE(c[0] == expected);
        REQUIRE(c[1] == expected);
    }
    SECTION("a = x^3/(1+x^2), m = 2") {
        const auto c = section_ratfunc(parse_ratfunc_expr("x^3/(1+x^2)"), 2);
        REQUIRE(c[0].is_zero());
        REQUIRE(c[1] == parse_ratfunc_expr("x/(1+x)"));
    }
}

TEST_CASE("sectioning identities on random inputs") {
    std::mt19937 rng(2024);
    SECTION("round-trip: sum_j x^j c^j(x^m) = a exactly") {
        for (int i = 0; i < 40; ++i) {
            const RatFunc a = mt::random_ratfunc(rng, 4);
            for (unsigned long m = 2; m <= 5; ++m) {
                const auto c = section_ratfunc(a, m);
                RatFunc sum(0);
                for (unsigned long j = 0; j < m; ++j)
                    sum += RatFunc(Poly::monomial(Rational(1), j)) * c[j].substitute_monomial(m);
                REQUIRE(sum == a);
            }
        }
    }
    SECTION("series and ratfunc sectioning agree") {
        for (int i = 0; i < 20; ++i) {
            const RatFunc a = mt::random_ratfunc(rng, 4);
            const long N = 48;
            for (unsigned long m = 2; m <= 4; ++m) {
                const auto c = section_ratfunc(a, m);
                const LaurentTrunc fa = laurent_expand(a, N);
                for (unsigned long j = 0; j < m; ++j) {
                    const LaurentTrunc lhs = section_series(fa, m, j);
                    const LaurentTrunc rhs = laurent_expand(c[j], lhs.order());
                    REQUIRE(lhs.agrees_with(rhs));
                }
            }
        }
    }
    SECTION("reassembling all sections reproduces the series") {
        for (int i = 0; i < 20; ++i) {
            const RatFunc a = mt::random_ratfunc(rng, 4);
            const long N = 40;
            const LaurentTrunc fa = laurent_expand(a, N);
            for (unsigned long m = 2; m <= 4; ++m) {
                LaurentTrunc sum = LaurentTrunc::zero_to(N);
                for (unsigned long j = 0; j < m; ++j) {
                    const LaurentTrunc part =
                        section_series(fa, m, j).substitute_power(m).shifted(static_cast<long>(j));
                    sum = sum + part.truncated(std::min(sum.order(), part.order()));
                }
                REQUIRE(sum.agrees_with(fa));
            }
        }
    }
}

TEST_CASE("laurent arithmetic bookkeeping") {
    const LaurentTrunc a = laurent_expand(parse_ratfunc_expr("1/(1-x)"), 10);
    const LaurentTrunc b = laurent_expand(parse_ratfunc_expr("x^2/(1+x)"), 6);
    SECTION("sum order is the minimum") {
        REQUIRE((a + b).order() == 6);
        REQUIRE((a + b).valuation_bound() == 0);
    }
    SECTION("product order tracks valuations") {
        const LaurentTrunc prod = a * b;
        REQUIRE(prod.valuation_bound() == 2);
        REQUIRE(prod.order() == std::min(10 + 2, 6 + 0));
        const LaurentTrunc direct = laurent_expand(parse_ratfunc_expr("x^2/((1-x)*(1+x))"), prod.order());
        REQUIRE(prod.agrees_with(direct));
    }
    SECTION("true_valuation skips stored zeros") {
        const LaurentTrunc f(-2, {Rational(0), Rational(0), Rational(3)}, 1);
        REQUIRE(f.true_valuation() == 0);
        REQUIRE(LaurentTrunc::zero_to(5).true_valuation() == std::nullopt);
    }
}
