#ifndef MAHLERKIT_EQUATION_HPP
#define MAHLERKIT_EQUATION_HPP

#include <cassert>
#include <string>
#include <variant>
#include <vector>

#include "mahlerkit/errors.hpp"
#include "mahlerkit/sectioning.hpp"

namespace mahlerkit {

/// Checked integer power for radix towers (p^i stays far below overflow at
/// desk scale, but fail loudly rather than wrap).
inline unsigned long radix_power(unsigned long p, unsigned long i) {
    unsigned long out = 1;
    for (unsigned long k = 0; k < i; ++k) {
        if (out > (1UL << 60) / p) throw std::overflow_error("radix_power: exponent tower too large");
        out *= p;
    }
    return out;
}

/// Scalar p-Mahler equation
///
///     f(x^(p^m)) + b_{m-1}(x) f(x^(p^(m-1))) + ... + b_0(x) f(x) = 0
///
/// with rational-function coefficients. The leading coefficient is fixed to 1;
/// coeffs stores b_0 .. b_{m-1}.
struct MahlerEquation {
    unsigned long radix = 2;
    std::vector<RatFunc> coeffs;

    unsigned long order() const { return coeffs.size(); }

    void validate() const {
        if (radix < 2) throw std::invalid_argument("MahlerEquation: radix must be >= 2");
        if (coeffs.empty()) throw std::invalid_argument("MahlerEquation: order must be >= 1");
    }
};

/// Applies the equation's operator to a truncated series:
/// S(f) = f(x^(p^m)) + sum_i b_i(x) f(x^(p^i)), truncated to the minimum
/// guaranteed order across the terms (carried by the result).
///
/// Throws PrecisionError when that window is empty, i.e. not a single
/// coefficient of the result is determined by the input's known terms.
inline LaurentTrunc apply_operator(const MahlerEquation& eq, const LaurentTrunc& f) {
    eq.validate();
    LaurentTrunc acc = f.substitute_power(radix_power(eq.radix, eq.order()));
    for (unsigned long i = 0; i < eq.order(); ++i) {
        if (eq.coeffs[i].is_zero()) continue;
        const LaurentTrunc term = (i == 0) ? f : f.substitute_power(radix_power(eq.radix, i));
        acc = acc + mul_ratfunc(term, eq.coeffs[i]);
    }
    if (acc.order() <= acc.valuation_bound() && f.order() > f.valuation_bound())
        throw PrecisionError("apply_operator: result order does not exceed its valuation bound");
    return acc;
}

/// Result of normalization. The input equation's solution set equals the
/// intersection of the returned equations' solution sets, except that
/// forces_zero marks inputs whose only Laurent-series solution is 0 (the
/// sectioning then produced a constraint c(x) f(x^(p^t)) = 0 with c != 0).
struct NormalizeResult {
    std::vector<MahlerEquation> equations;
    bool forces_zero = false;
};

namespace detail {

inline void normalize_rec(const MahlerEquation& eq, NormalizeResult& out) {
    unsigned long k = 0;
    while (k < eq.order() && eq.coeffs[k].is_zero()) ++k;
    if (k == 0) {
        out.equations.push_back(eq);
        return;
    }
    if (k == eq.order()) {
        // f(x^(p^m)) = 0 alone
        out.forces_zero = true;
        return;
    }
    const unsigned long m_sec = radix_power(eq.radix, k);

    // sections of every coefficient from b_k up; the leading 1 contributes
    // (1, 0, ..., 0)
    std::vector<std::vector<RatFunc>> sec(eq.order() - k);
    for (unsigned long i = k; i < eq.order(); ++i) sec[i - k] = section_ratfunc(eq.coeffs[i], m_sec);

    bool any = false;
    for (unsigned long j = 0; j < m_sec; ++j) {
        // section j of the equation, an equation of order <= m - k in y = x^(p^k)
        std::vector<RatFunc> terms(eq.order() - k + 1);
        for (unsigned long i = k; i < eq.order(); ++i) terms[i - k] = sec[i - k][j];
        terms[eq.order() - k] = (j == 0) ? RatFunc(1) : RatFunc(0);

        long top = static_cast<long>(terms.size()) - 1;
        while (top >= 0 && terms[static_cast<std::size_t>(top)].is_zero()) --top;
        if (top < 0) continue; // trivial section 0 = 0
        any = true;
        if (top == 0) {
            // c(y) f(y) = 0 with c != 0
            out.forces_zero = true;
            continue;
        }
        MahlerEquation sub;
        sub.radix = eq.radix;
        sub.coeffs.resize(static_cast<std::size_t>(top));
        const RatFunc& lead = terms[static_cast<std::size_t>(top)];
        for (long i = 0; i < top; ++i) sub.coeffs[static_cast<std::size_t>(i)] = terms[static_cast<std::size_t>(i)] / lead;
        normalize_rec(sub, out);
    }
    assert(any && "sectioning a nonzero equation produced only trivial sections");
    (void)any;
}

} // namespace detail

/// Rewrites an equation with b_0 = 0 as a set of lower-order equations with
/// the same solutions, by sectioning every coefficient with modulus p^k
/// (k = least index with b_k != 0) and recursing. An equation that already
/// has b_0 != 0 is returned unchanged.
inline NormalizeResult normalize_equation(const MahlerEquation& eq) {
    eq.validate();
    NormalizeResult out;
    detail::normalize_rec(eq, out);
    return out;
}

/// Denominator-cleared form of an equation plus the index threshold beyond
/// which the coefficient recurrence is triangular: for all n > threshold the
/// coefficient f_n is determined by coefficients of lower index.
struct SolveBound {
    long threshold = 0;
    std::vector<Poly> cleared; // P_0 .. P_m with sum_i P_i(x) f(x^(p^i)) = 0
};

inline SolveBound solve_bound(const MahlerEquation& eq) {
    eq.validate();
    if (eq.coeffs[0].is_zero())
        throw std::invalid_argument("solve_bound: equation must be normalized (b_0 != 0)");
    Poly common(1);
    for (const RatFunc& b : eq.coeffs)
        if (!b.is_zero()) common = lcm(common, b.den());
    SolveBound out;
    out.cleared.resize(eq.order() + 1);
    for (unsigned long i = 0; i < eq.order(); ++i) {
        if (eq.coeffs[i].is_zero()) continue;
        out.cleared[i] = (common / eq.coeffs[i].den()) * eq.coeffs[i].num();
    }
    out.cleared[eq.order()] = common;

    const long s0 = out.cleared[0].valuation();
    long threshold = 0;
    for (unsigned long i = 1; i <= eq.order(); ++i) {
        if (out.cleared[i].is_zero()) continue;
        const long gap = s0 - out.cleared[i].valuation();
        const long denom = static_cast<long>(radix_power(eq.radix, i)) - 1;
        threshold = std::max(threshold, LaurentTrunc::ceil_div(gap, denom));
    }
    out.threshold = threshold;
    return out;
}

/// Seed for the series solver: coefficients for exponents start, start+1, ...
struct SeriesSeed {
    long start = 0;
    std::vector<Rational> coeffs;
};

/// The seed violates a linear constraint of the equation; exponent names the
/// first residual coefficient that cannot vanish.
struct Inconsistent {
    long exponent = 0;
    std::string detail;
};

/// The seed is too short to determine a solution.
struct Underdetermined {
    long needed = 0;
};

using SolveResult = std::variant<LaurentTrunc, Inconsistent, Underdetermined>;

/// Extends a seed to the unique series solution of a normalized equation,
/// exact modulo x^order. Every coefficient with index above the solve_bound
/// threshold is computed from the triangular recurrence; every other residual
/// row (including rows that only constrain the seed) is checked, and the
/// first violated row is reported as Inconsistent.
inline SolveResult solve_series(const MahlerEquation& eq, const SeriesSeed& seed, long order) {
    const SolveBound bound = solve_bound(eq);
    const long v0 = seed.start;
    const long nstar = bound.threshold;
    const long needed = nstar - v0 + 1;
    if (seed.coeffs.empty() || static_cast<long>(seed.coeffs.size()) < needed)
        return Underdetermined{std::max<long>(needed, 1)};
    if (order <= v0) return LaurentTrunc::zero_to(order);

    // working window covers the requested order and the constraint range
    const long top = std::max(order, nstar + 1);
    std::vector<Rational> f(static_cast<std::size_t>(top - v0));
    const long usable = std::min<long>(static_cast<long>(seed.coeffs.size()), top - v0);
    for (long i = 0; i < usable; ++i) f[static_cast<std::size_t>(i)] = seed.coeffs[static_cast<std::size_t>(i)];
    const long seeded_to = v0 + usable; // indices below this come from the seed

    // nonzero terms of each cleared polynomial
    const unsigned long m = eq.order();
    std::vector<std::vector<std::pair<long, Rational>>> terms(m + 1);
    std::vector<long> shift(m + 1, 1);
    for (unsigned long i = 0; i <= m; ++i) {
        shift[i] = static_cast<long>(radix_power(eq.radix, i));
        const Poly& P = bound.cleared[i];
        for (long t = 0; t <= P.degree(); ++t)
            if (!P.coeff(t).is_zero()) terms[i].emplace_back(t, P.coeff(t));
    }
    const long s0 = bound.cleared[0].valuation();
    const Rational pivot = bound.cleared[0].coeff(s0);

    long e_min = v0 + s0;
    for (unsigned long i = 0; i <= m; ++i) {
        if (bound.cleared[i].is_zero()) continue;
        e_min = std::min(e_min, shift[i] * v0 + bound.cleared[i].valuation());
    }
    const long e_max = (order - 1) + s0;

    for (long e = e_min; e <= e_max; ++e) {
        const long n = e - s0; // the f-index this row pivots on
        Rational acc;
        for (unsigned long i = 0; i <= m; ++i) {
            for (const auto& [t, c] : terms[i]) {
                const long rem = e - t;
                const long k = LaurentTrunc::floor_div(rem, shift[i]);
                if (k * shift[i] != rem) continue;
                if (k < v0 || k >= top) continue; // below the seed start: exactly zero
                acc += c * f[static_cast<std::size_t>(k - v0)];
            }
        }
        const bool solvable = n > nstar && n >= seeded_to && n >= v0 && n < order;
        if (solvable) {
            f[static_cast<std::size_t>(n - v0)] = -(acc / pivot);
        } else if (!acc.is_zero()) {
            return Inconsistent{e, "residual coefficient at exponent " + std::to_string(e) + " is nonzero"};
        }
    }
    f.resize(static_cast<std::size_t>(order - v0));
    return LaurentTrunc(v0, std::move(f), order);
}

} // namespace mahlerkit

#endif // MAHLERKIT_EQUATION_HPP
