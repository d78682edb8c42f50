#ifndef MAHLERKIT_SYSTEM_HPP
#define MAHLERKIT_SYSTEM_HPP

#include <utility>
#include <vector>

#include "mahlerkit/dependence.hpp"

namespace mahlerkit {

/// Consistent pair of first-order systems sigma_1(g) = A g, sigma_2(g) = B g
/// on a basis g of the space spanned by sigma_1^m sigma_2^r (f). basis_tags
/// records which (m, r) each basis element came from.
struct MahlerSystem {
    unsigned long p = 2;
    unsigned long q = 3;
    std::size_t n = 0;
    Matrix<RatFunc> A;
    Matrix<RatFunc> B;
    std::vector<std::pair<unsigned long, unsigned long>> basis_tags;
};

/// Exact matrix identity A(x^q) B(x) = B(x^p) A(x).
inline bool check_consistency(const MahlerSystem& sys) {
    const auto substitute = [](const Matrix<RatFunc>& m, unsigned long k) {
        Matrix<RatFunc> out(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).substitute_monomial(k);
        return out;
    };
    return substitute(sys.A, sys.q) * sys.B == substitute(sys.B, sys.p) * sys.A;
}

/// Truncation order / coefficient degree caps for system construction.
struct BuildCaps {
    long order = 256;
    unsigned long degree = 16;
};

namespace detail {

/// Largest degree bound usable by lin_dep_test on `count` series of common
/// order `order`, capped by the caller's degree cap.
inline unsigned long usable_degree(long order, std::size_t count, unsigned long cap) {
    const long budget = (order - kPrecisionMargin) / (2 * static_cast<long>(count)) - 1;
    if (budget < 1) throw PrecisionError("series order too small for any coefficient degree");
    return std::min<unsigned long>(cap, static_cast<unsigned long>(budget));
}

/// Expresses target = sum_j coords_j * basis_j with rational-function
/// coordinates, by Hermite-Pade style guessing (degree escalated up to the
/// cap) followed by an exact series residual re-check.
inline std::vector<RatFunc> express_in_basis(const LaurentTrunc& target,
                                             const std::vector<LaurentTrunc>& basis,
                                             unsigned long degree_cap) {
    std::vector<LaurentTrunc> stacked;
    stacked.reserve(basis.size() + 1);
    stacked.push_back(target);
    for (const auto& g : basis) stacked.push_back(g);

    long order = target.order();
    for (const auto& g : basis) order = std::min(order, g.order());
    const unsigned long dmax = usable_degree(order, stacked.size(), degree_cap);

    for (unsigned long d = std::min<unsigned long>(4, dmax);; d = std::min(d * 2, dmax)) {
        const DependenceResult res = lin_dep_test(stacked, d);
        if (res.verdict == DepVerdict::dependent && !res.relation[0].is_zero()) {
            const RatFunc lead(res.relation[0]);
            std::vector<RatFunc> coords(basis.size());
            for (std::size_t j = 0; j < basis.size(); ++j)
                coords[j] = -(RatFunc(res.relation[j + 1]) / lead);

            // exact re-check: the residual series must vanish through its window
            LaurentTrunc residual = target.truncated(order);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                if (coords[j].is_zero()) continue;
                residual = residual - mul_ratfunc(basis[j], coords[j]).truncated(order);
            }
            if (!residual.is_zero_through_order())
                throw PrecisionError("express_in_basis: reconstructed coordinates failed the series re-check");
            return coords;
        }
        if (d == dmax)
            throw PrecisionError("express_in_basis: no coordinate relation within degree cap " +
                                 std::to_string(degree_cap));
    }
}

} // namespace detail

/// Builds the consistent pair of first-order systems from a p- and a q-Mahler
/// equation sharing the solution determined by the seed.
///
/// Series for h_{m,r} = sigma_1^m sigma_2^r (f) are computed for the full
/// (m, r) grid; a basis is selected greedily in lexicographic order with
/// g_1 = f; the images sigma_i(g_k) are expressed in the basis by guessing and
/// exact re-checking. Both type invariants (invertibility, consistency) are
/// verified before returning; failures signal caps that are too small.
inline MahlerSystem build_system(const MahlerEquation& eq1, const MahlerEquation& eq2,
                                 const SeriesSeed& seed, const BuildCaps& caps) {
    eq1.validate();
    eq2.validate();
    const long N = caps.order;

    const SolveResult solved = solve_series(eq1, seed, N);
    if (std::holds_alternative<Underdetermined>(solved))
        throw SeedError("build_system: seed too short; need " +
                        std::to_string(std::get<Underdetermined>(solved).needed) + " coefficients");
    if (std::holds_alternative<Inconsistent>(solved))
        throw SeedError("build_system: seed inconsistent with the first equation at exponent " +
                        std::to_string(std::get<Inconsistent>(solved).exponent));
    const LaurentTrunc f = std::get<LaurentTrunc>(solved);

    // the common solution must satisfy the second equation as well
    const LaurentTrunc residual2 = apply_operator(eq2, f);
    if (const auto bad = residual2.true_valuation())
        throw SeedError("build_system: seed fails the second equation (residual valuation " +
                        std::to_string(*bad) + ")");

    const unsigned long m1 = eq1.order(), m2 = eq2.order();
    std::vector<LaurentTrunc> basis{f};
    std::vector<std::pair<unsigned long, unsigned long>> tags{{0, 0}};

    const auto grid_series = [&](unsigned long m, unsigned long r) {
        const unsigned long e = radix_power(eq1.radix, m) * radix_power(eq2.radix, r);
        return (e == 1) ? f : f.substitute_power(e).truncated(N);
    };

    for (unsigned long m = 0; m < m1; ++m)
        for (unsigned long r = 0; r < m2; ++r) {
            if (m == 0 && r == 0) continue;
            std::vector<LaurentTrunc> trial = basis;
            trial.push_back(grid_series(m, r));
            const unsigned long d = detail::usable_degree(N, trial.size(), caps.degree);
            if (lin_dep_test(trial, d).verdict == DepVerdict::independent_up_to_bounds) {
                basis.push_back(std::move(trial.back()));
                tags.emplace_back(m, r);
            }
        }

    const std::size_t n = basis.size();
    MahlerSystem sys;
    sys.p = eq1.radix;
    sys.q = eq2.radix;
    sys.n = n;
    sys.basis_tags = tags;
    sys.A = Matrix<RatFunc>(n, n);
    sys.B = Matrix<RatFunc>(n, n);

    for (std::size_t k = 0; k < n; ++k) {
        const auto [m, r] = tags[k];
        const LaurentTrunc s1 = f.substitute_power(radix_power(eq1.radix, m + 1) * radix_power(eq2.radix, r)).truncated(N);
        const LaurentTrunc s2 = f.substitute_power(radix_power(eq1.radix, m) * radix_power(eq2.radix, r + 1)).truncated(N);
        const auto rowA = detail::express_in_basis(s1, basis, caps.degree);
        const auto rowB = detail::express_in_basis(s2, basis, caps.degree);
        for (std::size_t j = 0; j < n; ++j) {
            sys.A.at(k, j) = rowA[j];
            sys.B.at(k, j) = rowB[j];
        }
    }

    if (determinant(sys.A).is_zero() || determinant(sys.B).is_zero())
        throw PrecisionError("build_system: reconstructed system is singular; raise caps");
    if (!check_consistency(sys))
        throw PrecisionError("build_system: consistency identity failed; raise caps");
    return sys;
}

} // namespace mahlerkit

#endif // MAHLERKIT_SYSTEM_HPP
