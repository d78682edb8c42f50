#ifndef MAHLERKIT_LAURENT_HPP
#define MAHLERKIT_LAURENT_HPP

#include <algorithm>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mahlerkit/ratfunc.hpp"

namespace mahlerkit {

/// Truncated Laurent series with explicit valuation bound and truncation order.
///
/// Coefficients are stored densely for exponents in [valuation_bound, order).
/// Exponents below valuation_bound are exactly zero; exponents at or above
/// order are unknown. Every operation computes the guaranteed-correct order of
/// its result, so precision is never silently lost. A series with
/// valuation_bound == order stores nothing and means "zero modulo x^order".
class LaurentTrunc {
public:
    LaurentTrunc() : v_(0), order_(0) {}

    LaurentTrunc(long valuation, std::vector<Rational> coeffs, long order)
        : v_(valuation), order_(order), c_(std::move(coeffs)) {
        if (order_ < v_ || c_.size() != static_cast<std::size_t>(order_ - v_))
            throw std::invalid_argument("LaurentTrunc: coefficient count must equal order - valuation");
    }

    /// The series known to vanish modulo x^order, with nothing stored.
    static LaurentTrunc zero_to(long order) { return LaurentTrunc(order, {}, order); }

    long valuation_bound() const { return v_; }
    long order() const { return order_; }
    long known_terms() const { return order_ - v_; }

    /// First exponent with nonzero coefficient, if any is known.
    std::optional<long> true_valuation() const {
        for (long e = v_; e < order_; ++e)
            if (!c_[idx(e)].is_zero()) return e;
        return std::nullopt;
    }

    bool is_zero_through_order() const { return !true_valuation().has_value(); }

    /// Coefficient at exponent e; zero below the valuation bound.
    /// Asking at or above the truncation order is a logic error.
    const Rational& at(long e) const {
        static const Rational zero;
        if (e < v_) return zero;
        if (e >= order_) throw std::logic_error("LaurentTrunc: coefficient beyond truncation order");
        return c_[idx(e)];
    }

    LaurentTrunc truncated(long new_order) const {
        if (new_order >= order_) return *this;
        if (new_order <= v_) return zero_to(new_order);
        return LaurentTrunc(v_, std::vector<Rational>(c_.begin(), c_.begin() + (new_order - v_)), new_order);
    }

    /// Multiply by x^k.
    LaurentTrunc shifted(long k) const { return LaurentTrunc(v_ + k, c_, order_ + k); }

    LaurentTrunc operator-() const {
        std::vector<Rational> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
        return LaurentTrunc(v_, std::move(v), order_);
    }

    friend LaurentTrunc operator+(const LaurentTrunc& a, const LaurentTrunc& b) {
        const long v = std::min(a.v_, b.v_);
        const long order = std::min(a.order_, b.order_);
        if (order <= v) return zero_to(order);
        std::vector<Rational> c(static_cast<std::size_t>(order - v));
        for (long e = v; e < order; ++e) c[static_cast<std::size_t>(e - v)] = a.safe_at(e) + b.safe_at(e);
        return LaurentTrunc(v, std::move(c), order);
    }

    friend LaurentTrunc operator-(const LaurentTrunc& a, const LaurentTrunc& b) { return a + (-b); }

    /// Product; guaranteed order is min(Na + vb, Nb + va).
    friend LaurentTrunc operator*(const LaurentTrunc& a, const LaurentTrunc& b) {
        const long v = a.v_ + b.v_;
        const long order = std::min(a.order_ + b.v_, b.order_ + a.v_);
        if (order <= v) return zero_to(order);
        std::vector<Rational> c(static_cast<std::size_t>(order - v));
        for (long i = a.v_; i < a.order_; ++i) {
            const Rational& ai = a.c_[a.idx(i)];
            if (ai.is_zero()) continue;
            const long jmax = std::min(b.order_, order - i);
            for (long j = b.v_; j < jmax; ++j) {
                const Rational& bj = b.c_[b.idx(j)];
                if (bj.is_zero()) continue;
                c[static_cast<std::size_t>(i + j - v)] += ai * bj;
            }
        }
        return LaurentTrunc(v, std::move(c), order);
    }

    friend LaurentTrunc operator*(const LaurentTrunc& a, const Rational& s) {
        std::vector<Rational> c(a.c_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] * s;
        return LaurentTrunc(a.v_, std::move(c), a.order_);
    }

    friend LaurentTrunc operator*(const Rational& s, const LaurentTrunc& a) { return a * s; }

    /// True when the two series agree on every exponent both of them know.
    bool agrees_with(const LaurentTrunc& o) const {
        const long lo = std::min(v_, o.v_);
        const long hi = std::min(order_, o.order_);
        for (long e = lo; e < hi; ++e)
            if (safe_at(e) != o.safe_at(e)) return false;
        return true;
    }

    /// Substitutes x -> x^m (m >= 1). Valuation scales by m; the guaranteed
    /// order of the result is m*(order - 1) + 1.
    LaurentTrunc substitute_power(unsigned long m) const {
        if (m == 0) throw std::invalid_argument("LaurentTrunc: substitute_power requires m >= 1");
        if (m == 1) return *this;
        const long lm = static_cast<long>(m);
        const long new_order = lm * (order_ - 1) + 1;
        const long new_v = lm * v_;
        if (new_order <= new_v) return zero_to(new_order);
        std::vector<Rational> c(static_cast<std::size_t>(new_order - new_v));
        for (long e = v_; e < order_; ++e) {
            if (lm * e >= new_order) break;
            c[static_cast<std::size_t>(lm * e - new_v)] = c_[idx(e)];
        }
        return LaurentTrunc(new_v, std::move(c), new_order);
    }

    /// Arithmetic-progression extraction: coefficient of x^k in the result is
    /// the coefficient of x^(m*k + j) here (m >= 2, 0 <= j < m).
    LaurentTrunc section(unsigned long m, unsigned long j) const {
        if (m < 2) throw std::invalid_argument("LaurentTrunc: section requires m >= 2");
        if (j >= m) throw std::invalid_argument("LaurentTrunc: section index out of range");
        const long lm = static_cast<long>(m), lj = static_cast<long>(j);
        const long new_order = floor_div(order_ - 1 - lj, lm) + 1;
        const long new_v = ceil_div(v_ - lj, lm);
        if (new_order <= new_v) return zero_to(new_order);
        std::vector<Rational> c(static_cast<std::size_t>(new_order - new_v));
        for (long k = new_v; k < new_order; ++k) c[static_cast<std::size_t>(k - new_v)] = safe_at(lm * k + lj);
        return LaurentTrunc(new_v, std::move(c), new_order);
    }

    /// Partial-sum evaluation of the known coefficients (x != 0 when v < 0).
    std::complex<double> eval(const std::complex<double>& x) const {
        std::complex<double> acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].to_double();
        return acc * std::pow(x, std::complex<double>(static_cast<double>(v_)));
    }

    static long floor_div(long a, long b) {
        long q = a / b, r = a % b;
        return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
    }
    static long ceil_div(long a, long b) { return -floor_div(-a, b); }

private:
    std::size_t idx(long e) const { return static_cast<std::size_t>(e - v_); }

    const Rational& safe_at(long e) const {
        static const Rational zero;
        return (e < v_ || e >= order_) ? zero : c_[idx(e)];
    }

    long v_;
    long order_;
    std::vector<Rational> c_;
};

/// Laurent expansion of a rational function at the origin, exact modulo x^order.
inline LaurentTrunc laurent_expand(const RatFunc& r, long order) {
    if (r.is_zero()) return LaurentTrunc::zero_to(order);
    const long vn = r.num().valuation();
    const long vd = r.den().valuation();
    const long v = vn - vd;
    if (order <= v) return LaurentTrunc::zero_to(order);
    const Poly un = r.num().shifted_down(vn);
    const Poly ud = r.den().shifted_down(vd); // ud(0) != 0
    const long terms = order - v;
    const Rational lead = ud.coeff(0);
    std::vector<Rational> c(static_cast<std::size_t>(terms));
    for (long k = 0; k < terms; ++k) {
        Rational acc = un.coeff(k);
        const long jmax = std::min<long>(k, ud.degree());
        for (long j = 1; j <= jmax; ++j) {
            if (ud.coeff(j).is_zero()) continue;
            acc -= ud.coeff(j) * c[static_cast<std::size_t>(k - j)];
        }
        c[static_cast<std::size_t>(k)] = acc / lead;
    }
    return LaurentTrunc(v, std::move(c), order);
}

/// Exact product of a truncated series with a rational function. The factor is
/// expanded far enough that the result keeps order f.order() + val(r).
inline LaurentTrunc mul_ratfunc(const LaurentTrunc& f, const RatFunc& r) {
    if (r.is_zero()) return LaurentTrunc::zero_to(f.order());
    const long vr = r.valuation_at_origin();
    const long target = f.order() + vr;
    const LaurentTrunc rs = laurent_expand(r, target - f.valuation_bound());
    return f * rs;
}

} // namespace mahlerkit

#endif // MAHLERKIT_LAURENT_HPP
