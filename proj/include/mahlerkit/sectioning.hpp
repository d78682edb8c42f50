#ifndef MAHLERKIT_SECTIONING_HPP
#define MAHLERKIT_SECTIONING_HPP

#include <cassert>
#include <vector>

#include "mahlerkit/laurent.hpp"
#include "mahlerkit/linalg.hpp"

namespace mahlerkit {

namespace detail {

/// Resultant Res_z(z^m - w, den(z)) as a polynomial in w, up to a nonzero
/// constant: computed as the characteristic polynomial of multiplication by
/// z^m on Q[z]/(den). Its defining property is that den(x) divides D(x^m),
/// which lets a denominator be rewritten as a polynomial in x^m without
/// leaving rational arithmetic.
inline Poly power_norm(const Poly& den, unsigned long m) {
    const Poly d = den.monic();
    const std::size_t e = static_cast<std::size_t>(d.degree());
    if (e == 0) return Poly(1);

    // columns of the multiplication matrix: z^(m+t) mod d for t = 0..e-1
    Matrix<Rational> mul(e, e);
    Poly r = Poly::monomial(Rational(1), m) % d;
    for (std::size_t t = 0; t < e; ++t) {
        for (std::size_t i = 0; i < e; ++i) mul.at(i, t) = r.coeff(static_cast<long>(i));
        r = r.shifted_up(1) % d;
    }

    // Faddeev-LeVerrier: char(w) = w^e + c_{e-1} w^{e-1} + ... + c_0
    std::vector<Rational> c(e + 1);
    c[e] = Rational(1);
    Matrix<Rational> mk = mul;
    for (std::size_t k = 1; k <= e; ++k) {
        Rational tr;
        for (std::size_t i = 0; i < e; ++i) tr += mk.at(i, i);
        const Rational ck = -(tr / Rational(static_cast<long>(k)));
        c[e - k] = ck;
        if (k == e) break;
        for (std::size_t i = 0; i < e; ++i) mk.at(i, i) += ck;
        mk = mul * mk;
    }
    return Poly(std::move(c));
}

} // namespace detail

/// Unique decomposition a(x) = sum_{j<m} x^j c^j(x^m): returns (c^0, ..., c^{m-1}).
///
/// The denominator is first promoted to a polynomial in x^m by multiplying
/// with its power-norm cofactor; the numerator is then split by exponent class.
inline std::vector<RatFunc> section_ratfunc(const RatFunc& a, unsigned long m) {
    if (m < 2) throw std::invalid_argument("section_ratfunc: requires m >= 2");
    std::vector<RatFunc> out(m);
    if (a.is_zero()) return out;

    Poly big_num;
    Poly big_den; // polynomial D with big_den(x^m) * a(x) a polynomial
    if (a.den().degree() == 0) {
        big_num = a.num() * (Rational(1) / a.den().coeff(0));
        big_den = Poly(1);
    } else {
        const Poly d = detail::power_norm(a.den(), m);
        const Poly dm = d.substitute_monomial(m);
        auto [cofactor, rem] = divrem(dm, a.den());
        assert(rem.is_zero());
        big_num = a.num() * cofactor;
        big_den = d;
    }

    for (unsigned long j = 0; j < m; ++j) {
        std::vector<Rational> cj;
        for (long i = static_cast<long>(j); i <= big_num.degree(); i += static_cast<long>(m))
            cj.push_back(big_num.coeff(i));
        out[j] = RatFunc(Poly(std::move(cj)), big_den);
    }
    return out;
}

/// Series counterpart: coefficient of x^k in the result is the coefficient of
/// x^(m*k+j) in f.
inline LaurentTrunc section_series(const LaurentTrunc& f, unsigned long m, unsigned long j) {
    return f.section(m, j);
}

inline LaurentTrunc substitute_power(const LaurentTrunc& f, unsigned long m) {
    if (m < 2) throw std::invalid_argument("substitute_power: requires m >= 2");
    return f.substitute_power(m);
}

} // namespace mahlerkit

#endif // MAHLERKIT_SECTIONING_HPP
