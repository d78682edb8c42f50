#include <catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace mahlerkit;
namespace mt = mahlerkit::testing;

namespace {

const MahlerEquation kThueMorse{2, {parse_ratfunc_expr("-1/(1-x)")}};
const MahlerEquation kGeometric{2, {parse_ratfunc_expr("-1/(1+x)")}};

LaurentTrunc must_solve(const MahlerEquation& eq, const SeriesSeed& seed, long order) {
    const SolveResult r = solve_series(eq, seed, order);
    REQUIRE(std::holds_alternative<LaurentTrunc>(r));
    return std::get<LaurentTrunc>(r);
}

/// Basis of the solution space of eq on coefficients f_0..f_{order-1}, by
/// direct nullspace of all residual rows that stay inside that window.
std::vector<std::vector<Rational>> solution_space(const MahlerEquation& eq, long order) {
    Poly common(1);
    for (const auto& b : eq.coeffs)
        if (!b.is_zero()) common = lcm(common, b.den());
    const unsigned long m = eq.order();
    std::vector<Poly> P(m + 1);
    for (unsigned long i = 0; i < m; ++i)
        if (!eq.coeffs[i].is_zero()) P[i] = (common / eq.coeffs[i].den()) * eq.coeffs[i].num();
    P[m] = common;

    long e_lo = 0, e_hi = 0;
    for (unsigned long i = 0; i <= m; ++i) {
        if (P[i].is_zero()) continue;
        e_lo = std::min(e_lo, P[i].valuation());
        e_hi = std::max(e_hi, P[i].valuation() + static_cast<long>(order));
    }
    // keep only rows whose unknown indices stay below `order`
    std::vector<std::vector<Rational>> rows;
    for (long e = e_lo; e < e_hi; ++e) {
        bool in_window = true;
        std::vector<Rational> row(static_cast<std::size_t>(order));
        for (unsigned long i = 0; i <= m && in_window; ++i) {
            const long shift = static_cast<long>(radix_power(eq.radix, i));
            for (long t = 0; t <= P[i].degree(); ++t) {
                if (P[i].coeff(t).is_zero()) continue;
                const long rem = e - t;
                const long k = LaurentTrunc::floor_div(rem, shift);
                if (k * shift != rem || k < 0) continue;
                if (k >= order) {
                    in_window = false;
                    break;
                }
                row[static_cast<std::size_t>(k)] += P[i].coeff(t);
            }
        }
        if (in_window) rows.push_back(std::move(row));
    }
    Matrix<Rational> mat(rows.size(), static_cast<std::size_t>(order));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) mat.at(r, c) = rows[r][c];
    return nullspace(mat);
}

} // namespace

TEST_CASE("apply_operator") {
    SECTION("constants are fixed by f(x^2) - f(x)") {
        const MahlerEquation eq{2, {RatFunc(-1)}};
        std::vector<Rational> c(12, Rational(0));
        c[0] = Rational(1);
        const LaurentTrunc res = apply_operator(eq, LaurentTrunc(0, c, 12));
        REQUIRE(res.is_zero_through_order());
    }
    SECTION("1/(1-x) solves the geometric equation") {
        const LaurentTrunc f = laurent_expand(parse_ratfunc_expr("1/(1-x)"), 20);
        const LaurentTrunc res = apply_operator(kGeometric, f);
        REQUIRE(res.order() >= 10);
        REQUIRE(res.is_zero_through_order());
    }
    SECTION("all-ones series fails the Thue-Morse equation at valuation 1") {
        // oracle: 1/(1-x^2) - (1/(1-x))*(1/(1-x)) = -x/((1-x^2)(1-x)) has valuation 1
        const LaurentTrunc f = laurent_expand(parse_ratfunc_expr("1/(1-x)"), 20);
        const LaurentTrunc res = apply_operator(kThueMorse, f);
        REQUIRE(res.true_valuation() == 1);
    }
    SECTION("precision signal on an empty window") {
        const MahlerEquation eq{2, {parse_ratfunc_expr("-1/(1-x)")}};
        REQUIRE_THROWS_AS(apply_operator(eq, LaurentTrunc::zero_to(5)), PrecisionError);
    }
}

TEST_CASE("normalize_equation") {
    SECTION("already normal: unchanged") {
        const auto n = normalize_equation(kThueMorse);
        REQUIRE(n.equations.size() == 1);
        REQUIRE_FALSE(n.forces_zero);
        REQUIRE(n.equations[0].coeffs[0] == kThueMorse.coeffs[0]);
    }
    SECTION("f(x^4) = f(x^2) reduces to f(x^2) = f(x)") {
        const MahlerEquation eq{2, {RatFunc(0), RatFunc(-1)}};
        const auto n = normalize_equation(eq);
        REQUIRE_FALSE(n.forces_zero);
        REQUIRE(n.equations.size() == 1);
        REQUIRE(n.equations[0].order() == 1);
        REQUIRE(n.equations[0].coeffs[0] == RatFunc(-1));
    }
    SECTION("f(x^4) = x f(x^2) admits only the zero series") {
        const MahlerEquation eq{2, {RatFunc(0), -RatFunc(Poly::x())}};
        const auto n = normalize_equation(eq);
        REQUIRE(n.forces_zero);
        REQUIRE(solution_space(eq, 64).empty());
    }
    SECTION("soundness: every order-64 solution of the input satisfies every output") {
        std::mt19937 rng(99);
        for (int trial = 0; trial < 25; ++trial) {
            MahlerEquation eq;
            eq.radix = 2 + static_cast<unsigned long>(trial % 2);
            const int order = 2 + static_cast<int>(rng() % 2);
            eq.coeffs.assign(static_cast<std::size_t>(order), RatFunc(0));
            // force b_0 = 0 so normalization has work to do
            for (int i = 1; i < order; ++i)
                if (rng() % 2) eq.coeffs[static_cast<std::size_t>(i)] = RatFunc(mt::random_poly(rng, 2));
            bool any = false;
            for (int i = 1; i < order; ++i) any = any || !eq.coeffs[static_cast<std::size_t>(i)].is_zero();
            if (!any) eq.coeffs.back() = RatFunc(mt::random_poly(rng, 2));

            const auto n = normalize_equation(eq);
            const auto space = solution_space(eq, 64);
            if (n.forces_zero) continue; // solutions vanish; nothing to check
            for (const auto& sol : space) {
                const LaurentTrunc f(0, sol, 64);
                for (const auto& out : n.equations) {
                    const LaurentTrunc res = apply_operator(out, f);
                    REQUIRE(res.is_zero_through_order());
                }
            }
        }
    }
}

TEST_CASE("solve_bound") {
    SECTION("f(x^2) - f(x)") {
        const SolveBound b = solve_bound(MahlerEquation{2, {RatFunc(-1)}});
        REQUIRE(b.threshold == 0);
        REQUIRE(b.cleared[0] == Poly(-1));
        REQUIRE(b.cleared[1] == Poly(1));
    }
    SECTION("f(x^2) - f(x)/(1+x): cleared to (1+x) f(x^2) - f(x)") {
        const SolveBound b = solve_bound(kGeometric);
        REQUIRE(b.threshold == 0);
        REQUIRE(b.cleared[0] == Poly(-1));
        REQUIRE(b.cleared[1] == parse_ratfunc_expr("1+x").num());
    }
    SECTION("x f(x^2) - f(x): threshold from the valuation gap") {
        // b_0 = -1/x gives P_0 = -1, P_1 = x; the formula caps at 0
        const MahlerEquation eq{2, {parse_ratfunc_expr("-1/x")}};
        const SolveBound b = solve_bound(eq);
        REQUIRE(b.threshold == 0);
        REQUIRE(b.cleared[1] == Poly::x());
    }
    SECTION("positive threshold when P_0 vanishes at the origin") {
        // f(x^2) - x^3 f(x) = 0: P_0 = -x^3, P_1 = 1, threshold = 3
        const MahlerEquation eq{2, {RatFunc(-Poly::monomial(Rational(1), 3))}};
        REQUIRE(solve_bound(eq).threshold == 3);
    }
}

TEST_CASE("solve_series") {
    SECTION("geometric equation reproduces 1/(1-x)") {
        const LaurentTrunc f = must_solve(kGeometric, {0, {Rational(1)}}, 10);
        REQUIRE(f.agrees_with(laurent_expand(parse_ratfunc_expr("1/(1-x)"), 10)));
    }
    SECTION("constants solve f(x^2) = f(x)") {
        const LaurentTrunc f = must_solve(MahlerEquation{2, {RatFunc(-1)}}, {0, {Rational(7)}}, 10);
        REQUIRE(f.at(0) == Rational(7));
        for (long e = 1; e < 10; ++e) REQUIRE(f.at(e) == Rational(0));
    }
    SECTION("Thue-Morse signs against the product oracle") {
        const LaurentTrunc f = must_solve(kThueMorse, {0, {Rational(1)}}, 8);
        // oracle: expand prod_{k<=3} (1 - x^(2^k)) to order 8
        RatFunc prod(1);
        for (int k = 0; k <= 3; ++k)
            prod *= RatFunc(Poly(1)) - RatFunc(Poly::monomial(Rational(1), 1UL << k));
        REQUIRE(f.agrees_with(laurent_expand(prod, 8)));
        const long want[] = {1, -1, -1, 1, -1, 1, 1, -1};
        for (long e = 0; e < 8; ++e) REQUIRE(f.at(e) == Rational(want[e]));
    }
    SECTION("underdetermined seed is reported with the needed length") {
        const MahlerEquation eq{2, {RatFunc(-Poly::monomial(Rational(1), 3))}};
        const SolveResult r = solve_series(eq, {0, {Rational(1)}}, 16);
        REQUIRE(std::holds_alternative<Underdetermined>(r));
        REQUIRE(std::get<Underdetermined>(r).needed == 4);
    }
    SECTION("inconsistent seed names the violated exponent") {
        // f(x^2) = f(x) forces f_1 = 0
        const SolveResult r = solve_series(MahlerEquation{2, {RatFunc(-1)}},
                                           {0, {Rational(1), Rational(5)}}, 10);
        REQUIRE(std::holds_alternative<Inconsistent>(r));
        REQUIRE(std::get<Inconsistent>(r).exponent == 1);
    }
    SECTION("residual of every solver output vanishes") {
        std::mt19937 rng(5);
        for (int i = 0; i < 20; ++i) {
            const RatFunc r = mt::random_ratfunc(rng, 3);
            const MahlerEquation eq = mt::induced_order1(r, 2 + i % 3);
            const LaurentTrunc f = must_solve(eq, mt::seed_from(r, 8), 48);
            REQUIRE(apply_operator(eq, f).is_zero_through_order());
        }
    }
    SECTION("determinism: longer runs extend shorter ones") {
        const LaurentTrunc a = must_solve(kThueMorse, {0, {Rational(1)}}, 20);
        const LaurentTrunc b = must_solve(kThueMorse, {0, {Rational(1)}}, 50);
        REQUIRE(b.truncated(20).agrees_with(a));
    }
    SECTION("linearity in the seed") {
        std::mt19937 rng(17);
        const MahlerEquation eq = kGeometric;
        for (int i = 0; i < 10; ++i) {
            const Rational a = mt::random_coeff(rng), b = mt::random_coeff(rng);
            const Rational s1 = mt::random_coeff(rng), s2 = mt::random_coeff(rng);
            const LaurentTrunc f1 = must_solve(eq, {0, {s1}}, 24);
            const LaurentTrunc f2 = must_solve(eq, {0, {s2}}, 24);
            const LaurentTrunc fc = must_solve(eq, {0, {a * s1 + b * s2}}, 24);
            const LaurentTrunc combo = f1 * a + f2 * b;
            REQUIRE(fc.agrees_with(combo));
        }
    }
    SECTION("matches the brute-force oracle on the Baum-Sweet equation") {
        const MahlerEquation bs{2, {RatFunc(-1), RatFunc(Poly::x())}};
        const LaurentTrunc f = must_solve(bs, {0, {Rational(1)}}, 200);
        const auto oracle = mt::oracle_solve(bs, 0, {Rational(1)}, 200);
        for (long e = 0; e < 200; ++e) {
            REQUIRE(f.at(e) == oracle[static_cast<std::size_t>(e)]);
            REQUIRE(f.at(e) == Rational(mt::baum_sweet_bit(static_cast<unsigned long>(e))));
        }
    }
    SECTION("Laurent seeds with negative valuation") {
        // f = 1/(x(1-x)) satisfies the geometric equation scaled by x
        const RatFunc r = parse_ratfunc_expr("1/(x*(1-x))");
        const MahlerEquation eq = mt::induced_order1(r, 2);
        const LaurentTrunc f = must_solve(eq, mt::seed_from(r, 6), 20);
        REQUIRE(f.agrees_with(laurent_expand(r, 20)));
    }
}
