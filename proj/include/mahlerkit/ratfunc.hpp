#ifndef MAHLERKIT_RATFUNC_HPP
#define MAHLERKIT_RATFUNC_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include "mahlerkit/poly.hpp"

namespace mahlerkit {

/// Reduced rational function num/den over Rational coefficients.
///
/// Invariants: den != 0, gcd(num, den) = 1, and den is normalized so that its
/// lowest nonzero coefficient equals 1. That unit choice keeps familiar
/// denominators like 1 - x intact in printed output and makes the printed
/// form canonical.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(int c) : num_(c), den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(const Poly& num) : num_(num), den_(1) {}

    RatFunc(Poly num, Poly den) {
        if (den.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
        if (num.is_zero()) {
            num_ = Poly();
            den_ = Poly(1);
            return;
        }
        const Poly g = gcd(num, den);
        num_ = num / g;
        den_ = den / g;
        const Rational unit = den_.trailing();
        num_ = num_ * (Rational(1) / unit);
        den_ = den_ * (Rational(1) / unit);
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    /// Order of vanishing at the origin: ord_0(num) - ord_0(den). Undefined for zero.
    long valuation_at_origin() const {
        if (is_zero()) throw std::logic_error("RatFunc: valuation of zero");
        return num_.valuation() - den_.valuation();
    }

    RatFunc operator-() const {
        RatFunc r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::invalid_argument("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// Substitutes x -> x^m, exactly.
    RatFunc substitute_monomial(unsigned long m) const {
        RatFunc r;
        r.num_ = num_.substitute_monomial(m);
        r.den_ = den_.substitute_monomial(m);
        return r; // substitution preserves both normalizations
    }

    std::complex<double> eval(const std::complex<double>& x) const {
        return num_.eval(x) / den_.eval(x);
    }

    /// Canonical print, e.g. "1/(1 - x)", "(1 + x)/(1 - x)", "3*x^2".
    std::string str() const {
        if (den_.is_one()) return num_.str();
        const bool wrap_num = count_terms(num_) > 1;
        const std::string n = wrap_num ? "(" + num_.str() + ")" : num_.str();
        return n + "/(" + den_.str() + ")";
    }

private:
    static int count_terms(const Poly& p) {
        int k = 0;
        for (const auto& c : p.coeffs())
            if (!c.is_zero()) ++k;
        return k;
    }

    Poly num_;
    Poly den_;
};

inline RatFunc pow(const RatFunc& base, unsigned long e) {
    RatFunc out(1), sq = base;
    while (e) {
        if (e & 1) out = out * sq;
        sq = sq * sq;
        e >>= 1;
    }
    return out;
}

} // namespace mahlerkit

#endif // MAHLERKIT_RATFUNC_HPP
