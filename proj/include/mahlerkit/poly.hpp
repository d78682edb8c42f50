#ifndef MAHLERKIT_POLY_HPP
#define MAHLERKIT_POLY_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mahlerkit/rational.hpp"

namespace mahlerkit {

/// Dense univariate polynomial over Rational. Coefficient index = exponent,
/// trailing zeros stripped; the zero polynomial stores no coefficients.
class Poly {
public:
    Poly() = default;
    Poly(int c) { if (c != 0) c_.push_back(Rational(c)); }
    Poly(const Rational& c) { if (!c.is_zero()) c_.push_back(c); }
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { strip(); }

    static Poly monomial(const Rational& c, std::size_t k) {
        if (c.is_zero()) return Poly();
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }

    static Poly x() { return monomial(Rational(1), 1); }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    /// Least exponent with nonzero coefficient. Undefined for zero.
    long valuation() const {
        if (is_zero()) throw std::logic_error("Poly: valuation of zero polynomial");
        std::size_t i = 0;
        while (c_[i].is_zero()) ++i;
        return static_cast<long>(i);
    }

    const Rational& coeff(long i) const {
        static const Rational zero;
        if (i < 0 || i >= static_cast<long>(c_.size())) return zero;
        return c_[static_cast<std::size_t>(i)];
    }

    Rational leading() const {
        if (is_zero()) throw std::logic_error("Poly: leading coefficient of zero polynomial");
        return c_.back();
    }

    /// Lowest nonzero coefficient.
    Rational trailing() const { return coeff(valuation()); }

    const std::vector<Rational>& coeffs() const { return c_; }

    Poly operator-() const {
        std::vector<Rational> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<long>(i)) + b.coeff(static_cast<long>(i));
        return Poly(std::move(v));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<long>(i)) - b.coeff(static_cast<long>(i));
        return Poly(std::move(v));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                v[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Poly(std::move(v));
    }

    friend Poly operator*(const Poly& a, const Rational& s) {
        if (s.is_zero()) return Poly();
        std::vector<Rational> v(a.c_.size());
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i] * s;
        return Poly(std::move(v));
    }

    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Euclidean division: returns (quotient, remainder) with deg rem < deg divisor.
    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::invalid_argument("Poly: division by zero polynomial");
        Poly rem = a;
        if (a.degree() < b.degree()) return {Poly(), rem};
        std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
        const Rational lb = b.leading();
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            const long shift = rem.degree() - b.degree();
            const Rational f = rem.leading() / lb;
            q[static_cast<std::size_t>(shift)] = f;
            // rem -= f * x^shift * b, exact cancellation of the leading term
            std::vector<Rational> rv = rem.c_;
            for (long j = 0; j <= b.degree(); ++j)
                rv[static_cast<std::size_t>(j + shift)] -= f * b.coeff(j);
            rem = Poly(std::move(rv));
        }
        return {Poly(std::move(q)), rem};
    }

    friend Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (Rational(1) / leading());
    }

    /// Multiply by x^k (k >= 0).
    Poly shifted_up(long k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<Rational> v(c_.size() + static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < c_.size(); ++i) v[i + static_cast<std::size_t>(k)] = c_[i];
        return Poly(std::move(v));
    }

    /// Exact division by x^k; requires valuation() >= k.
    Poly shifted_down(long k) const {
        if (k == 0) return *this;
        if (is_zero()) return *this;
        if (valuation() < k) throw std::logic_error("Poly: shifted_down would truncate");
        return Poly(std::vector<Rational>(c_.begin() + k, c_.end()));
    }

    /// Substitutes x -> x^m.
    Poly substitute_monomial(unsigned long m) const {
        if (m == 0) throw std::invalid_argument("Poly: substitute_monomial requires m >= 1");
        if (is_zero() || m == 1) return *this;
        std::vector<Rational> v(static_cast<std::size_t>(degree()) * m + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) v[i * m] = c_[i];
        return Poly(std::move(v));
    }

    Rational eval(const Rational& x) const {
        Rational acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    std::complex<double> eval(const std::complex<double>& x) const {
        std::complex<double> acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].to_double();
        return acc;
    }

    /// Canonical form: ascending exponents, explicit '*' and '^', e.g. "1 - 3*x^2".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const Rational& c = c_[i];
            if (c.is_zero()) continue;
            const Rational mag = mahlerkit::abs(c);
            std::string term;
            if (i == 0) {
                term = mag.str();
            } else {
                const std::string power = (i == 1) ? "x" : "x^" + std::to_string(i);
                term = mag.is_one() ? power : mag.str() + "*" + power;
            }
            if (first) {
                out += (c.sign() < 0 ? "-" : "") + term;
                first = false;
            } else {
                out += (c.sign() < 0 ? " - " : " + ") + term;
            }
        }
        return out;
    }

private:
    void strip() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Monic greatest common divisor.
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = r.monic(); // keep coefficient growth in check
    }
    return a.monic();
}

inline Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    return ((a * b) / gcd(a, b)).monic();
}

inline Poly pow(const Poly& base, unsigned long e) {
    Poly out(1), sq = base;
    while (e) {
        if (e & 1) out = out * sq;
        sq = sq * sq;
        e >>= 1;
    }
    return out;
}

} // namespace mahlerkit

#endif // MAHLERKIT_POLY_HPP
