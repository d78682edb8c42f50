#ifndef MAHLERKIT_TESTS_ORACLES_HPP
#define MAHLERKIT_TESTS_ORACLES_HPP

// Test-only oracles, kept independent of the library's solving path: the
// brute-force coefficient-matching solver below recomputes every residual
// coefficient from scratch by naive convolution, and the digit-rule sequences
// are defined straight from their base-2 descriptions.

#include <random>
#include <vector>

#include "mahlerkit/mahlerkit.hpp"

namespace mahlerkit::testing {

/// Brute-force series solver: clears denominators with a plain product (not
/// an lcm), then for each index solves the single coefficient-matching row by
/// a full naive convolution over all terms. Quadratic and stateless.
inline std::vector<Rational> oracle_solve(const MahlerEquation& eq, long v0,
                                          const std::vector<Rational>& seed, long order) {
    const unsigned long m = eq.order();
    Poly common(1);
    for (const auto& b : eq.coeffs)
        if (!b.is_zero()) common = common * b.den();
    std::vector<Poly> P(m + 1);
    for (unsigned long i = 0; i < m; ++i) {
        if (eq.coeffs[i].is_zero()) continue;
        Poly cof(1);
        for (unsigned long j = 0; j < m; ++j)
            if (j != i && !eq.coeffs[j].is_zero()) cof = cof * eq.coeffs[j].den();
        P[i] = eq.coeffs[i].num() * cof;
    }
    P[m] = common;

    std::vector<long> shift(m + 1);
    for (unsigned long i = 0; i <= m; ++i) shift[i] = static_cast<long>(radix_power(eq.radix, i));
    const long s0 = P[0].valuation();
    const Rational pivot = P[0].coeff(s0);

    long threshold = 0;
    for (unsigned long i = 1; i <= m; ++i) {
        if (P[i].is_zero()) continue;
        const long gap = s0 - P[i].valuation();
        const long den = shift[i] - 1;
        const long c = LaurentTrunc::ceil_div(gap, den);
        threshold = std::max(threshold, c);
    }

    std::vector<Rational> f(static_cast<std::size_t>(order - v0));
    for (std::size_t i = 0; i < seed.size() && i < f.size(); ++i) f[i] = seed[i];
    const long first_solved = std::max(v0 + static_cast<long>(seed.size()), threshold + 1);

    const auto coeff_of = [&](long k) -> Rational {
        if (k < v0 || k >= order) return Rational(0);
        return f[static_cast<std::size_t>(k - v0)];
    };

    for (long n = first_solved; n < order; ++n) {
        const long e = n + s0;
        Rational rest;
        for (unsigned long i = 0; i <= m; ++i) {
            for (long t = 0; t <= P[i].degree(); ++t) {
                if (P[i].coeff(t).is_zero()) continue;
                const long rem = e - t;
                const long k = LaurentTrunc::floor_div(rem, shift[i]);
                if (k * shift[i] != rem) continue;
                if (i == 0 && k == n) continue; // the unknown itself
                rest += P[i].coeff(t) * coeff_of(k);
            }
        }
        f[static_cast<std::size_t>(n - v0)] = -(rest / pivot);
    }
    return f;
}

/// +1 / -1 by parity of the binary digit sum.
inline int thue_morse_sign(unsigned long n) {
    int bits = 0;
    for (; n; n >>= 1) bits += static_cast<int>(n & 1);
    return (bits % 2 == 0) ? 1 : -1;
}

/// 1 when the binary expansion of n has no odd-length block of zeros.
inline int baum_sweet_bit(unsigned long n) {
    if (n == 0) return 1;
    int zeros = 0;
    while (n) {
        if (n & 1) {
            if (zeros % 2 != 0) return 0;
            zeros = 0;
        } else {
            ++zeros;
        }
        n >>= 1;
    }
    return 1;
}

inline Rational random_coeff(std::mt19937& rng) {
    std::uniform_int_distribution<long> dist(-9, 9);
    return Rational(dist(rng));
}

inline Poly random_poly(std::mt19937& rng, long max_deg, bool nonzero_at_0 = false) {
    std::uniform_int_distribution<long> deg_dist(0, max_deg);
    for (;;) {
        const long deg = deg_dist(rng);
        std::vector<Rational> c(static_cast<std::size_t>(deg) + 1);
        for (auto& x : c) x = random_coeff(rng);
        Poly p(std::move(c));
        if (p.is_zero()) continue;
        if (nonzero_at_0 && p.coeff(0).is_zero()) continue;
        return p;
    }
}

/// Random reduced P/Q with Q(0) != 0 and P != 0, coefficients in [-9, 9].
inline RatFunc random_ratfunc(std::mt19937& rng, long max_deg) {
    for (;;) {
        RatFunc r(random_poly(rng, max_deg), random_poly(rng, max_deg, /*nonzero_at_0=*/true));
        if (!r.is_zero()) return r;
    }
}

/// The order-1 p-Mahler equation satisfied by r: f(x^p) - (r(x^p)/r(x)) f(x) = 0.
inline MahlerEquation induced_order1(const RatFunc& r, unsigned long p) {
    return MahlerEquation{p, {-(r.substitute_monomial(p) / r)}};
}

/// Seed of `len` expansion coefficients of r starting at its valuation.
inline SeriesSeed seed_from(const RatFunc& r, long len) {
    const long v0 = r.valuation_at_origin();
    const LaurentTrunc f = laurent_expand(r, v0 + len);
    SeriesSeed s;
    s.start = v0;
    for (long e = v0; e < v0 + len; ++e) s.coeffs.push_back(f.at(e));
    return s;
}

} // namespace mahlerkit::testing

#endif // MAHLERKIT_TESTS_ORACLES_HPP
