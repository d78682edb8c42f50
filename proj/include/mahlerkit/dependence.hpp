#ifndef MAHLERKIT_DEPENDENCE_HPP
#define MAHLERKIT_DEPENDENCE_HPP

#include <map>
#include <vector>

#include "mahlerkit/equation.hpp"
#include "mahlerkit/linalg.hpp"

namespace mahlerkit {

/// Safety margin on top of the information-theoretic row count before any
/// independence verdict is trusted.
inline constexpr long kPrecisionMargin = 16;

/// True iff there is no relation p^a = q^b with nonzero integers a, b.
/// Computed from trial-division factorizations: p and q are multiplicatively
/// dependent exactly when their prime-exponent vectors are parallel.
inline bool mult_independent(unsigned long p, unsigned long q) {
    if (p < 2 || q < 2) throw std::invalid_argument("mult_independent: arguments must be >= 2");
    const auto factor = [](unsigned long n) {
        std::map<unsigned long, unsigned long> f;
        for (unsigned long d = 2; d * d <= n; ++d)
            while (n % d == 0) {
                ++f[d];
                n /= d;
            }
        if (n > 1) ++f[n];
        return f;
    };
    const auto fp = factor(p), fq = factor(q);
    if (fp.size() != fq.size()) return true;
    for (const auto& [prime, _] : fp)
        if (!fq.count(prime)) return true;
    // same prime support: dependent iff exponent vectors are proportional
    const auto first = fp.begin();
    const unsigned long a0 = first->second;
    const unsigned long b0 = fq.at(first->first);
    for (const auto& [prime, a] : fp) {
        const unsigned long b = fq.at(prime);
        if (a * b0 != b * a0) return true;
    }
    return false;
}

enum class DepVerdict { dependent, independent_up_to_bounds };

/// Outcome of a polynomial-coefficient dependence test. When dependent, the
/// relation sum_k a_k w_k vanishes through the common known order of the
/// input series (re-verified by exact series arithmetic before returning).
struct DependenceResult {
    DepVerdict verdict = DepVerdict::independent_up_to_bounds;
    std::vector<Poly> relation;
};

namespace detail {

inline bool relation_holds(const std::vector<LaurentTrunc>& w, const std::vector<Poly>& a, long order) {
    LaurentTrunc acc = LaurentTrunc::zero_to(order + 1); // keep the sum's window open past order
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (a[k].is_zero()) continue;
        acc = acc + mul_ratfunc(w[k], RatFunc(a[k])).truncated(order);
    }
    return acc.is_zero_through_order();
}

inline std::vector<Poly> kernel_to_polys(const std::vector<Rational>& vec, std::size_t count, unsigned long d) {
    std::vector<Poly> polys(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Rational> c(vec.begin() + static_cast<long>(k * (d + 1)),
                                vec.begin() + static_cast<long>((k + 1) * (d + 1)));
        polys[k] = Poly(std::move(c));
    }
    return polys;
}

} // namespace detail

/// Searches for polynomials a_k of degree <= degree_bound, not all zero, with
/// sum_k a_k(x) w_k(x) = 0 modulo x^N (N = common guaranteed order), by exact
/// nullspace computation. Independence is only ever reported "up to bounds".
///
/// Requires N >= 2*(degree_bound+1)*l + margin; anything less throws
/// PrecisionError rather than returning a meaningless verdict.
inline DependenceResult lin_dep_test(const std::vector<LaurentTrunc>& series, unsigned long degree_bound) {
    if (series.empty()) throw std::invalid_argument("lin_dep_test: empty series list");
    const std::size_t l = series.size();
    const unsigned long d = degree_bound;

    long order = series[0].order();
    long min_v = series[0].valuation_bound();
    for (const auto& w : series) {
        order = std::min(order, w.order());
        min_v = std::min(min_v, w.valuation_bound());
    }
    const long required = 2 * static_cast<long>((d + 1) * l) + kPrecisionMargin;
    if (order < required)
        throw PrecisionError("lin_dep_test: common order " + std::to_string(order) +
                             " below required " + std::to_string(required));

    const std::size_t unknowns = l * (d + 1);
    const long total_rows = order - min_v;

    const auto kernel_of_rows = [&](long row_count) {
        Matrix<Rational> m(static_cast<std::size_t>(row_count), unknowns);
        for (long r = 0; r < row_count; ++r) {
            const long e = min_v + r;
            for (std::size_t k = 0; k < l; ++k)
                for (unsigned long t = 0; t <= d; ++t) {
                    const long src = e - static_cast<long>(t);
                    if (src < series[k].valuation_bound() || src >= series[k].order()) continue;
                    m.at(static_cast<std::size_t>(r), k * (d + 1) + t) = series[k].at(src);
                }
        }
        return nullspace(m);
    };

    // A kernel computed from a leading block of rows is a superset of the true
    // kernel, so a trivial kernel there already proves independence; candidate
    // relations are re-verified against the full series before being believed.
    for (long rows = std::min<long>(required, total_rows);; rows = std::min(rows * 2, total_rows)) {
        const auto kernel = kernel_of_rows(rows);
        if (kernel.empty()) return {};
        for (const auto& vec : kernel) {
            auto polys = detail::kernel_to_polys(vec, l, d);
            if (detail::relation_holds(series, polys, order))
                return {DepVerdict::dependent, std::move(polys)};
        }
        // a full-row kernel vector vanishes modulo x^order by construction,
        // so failing the exact re-check there would be a bug
        if (rows == total_rows)
            throw std::logic_error("lin_dep_test: full-row kernel vector failed exact re-check");
    }
}

/// Compares the dependence verdict of {w_k} at degree d with the verdict of
/// {w_k(x^m)} at degree m*d (a relation of degree d transforms into one of
/// degree m*d under the substitution, and sectioning maps it back). Returns
/// whether the two verdicts agree.
inline bool lift_dependence_check(const std::vector<LaurentTrunc>& series, unsigned long m, unsigned long degree_bound) {
    if (m < 2) throw std::invalid_argument("lift_dependence_check: requires m >= 2");
    std::vector<LaurentTrunc> lifted;
    lifted.reserve(series.size());
    for (const auto& w : series) lifted.push_back(w.substitute_power(m));
    const DependenceResult base = lin_dep_test(series, degree_bound);
    const DependenceResult sub = lin_dep_test(lifted, m * degree_bound);
    return base.verdict == sub.verdict;
}

} // namespace mahlerkit

#endif // MAHLERKIT_DEPENDENCE_HPP
