#ifndef MAHLERKIT_PROBE_HPP
#define MAHLERKIT_PROBE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "mahlerkit/rationality.hpp"

namespace mahlerkit {

using Complex = std::complex<double>;

/// Cauchy-Hadamard estimate of the convergence radius from the known
/// coefficients: 1 / max |c_n|^(1/n) over the top half of the available
/// positive exponents. Returns +infinity when that window is identically zero
/// (no finite singularity detected). Needs at least 16 known coefficients.
inline double radius_estimate(const LaurentTrunc& f) {
    if (f.known_terms() < 16)
        throw std::invalid_argument("radius_estimate: at least 16 known coefficients required");
    const long lo = std::max<long>(1, f.valuation_bound() + f.known_terms() / 2);
    double best = -std::numeric_limits<double>::infinity(); // log2 of limsup estimate
    for (long n = lo; n < f.order(); ++n) {
        const Rational& c = f.at(n);
        if (c.is_zero()) continue;
        best = std::max(best, c.log2_abs() / static_cast<double>(n));
    }
    if (best == -std::numeric_limits<double>::infinity())
        return std::numeric_limits<double>::infinity();
    return std::exp2(-best);
}

/// Rational evaluation with an explicit pole guard.
inline Complex eval_guarded(const RatFunc& r, const Complex& z) {
    const Complex den = r.den().eval(z);
    const Complex num = r.num().eval(z);
    if (std::abs(den) < 1e-9 * (1.0 + std::abs(num)))
        throw PoleProximityError("evaluation point within pole tolerance");
    return num / den;
}

namespace detail {

/// Evaluates the solution of a Mahler equation outside the convergence disk of
/// its series by the annulus walk: x = xi^(p^j) with xi in [r0, r0^p), the
/// base vector (f(xi), f(xi^p), ..., f(xi^(p^(m-1)))) from the origin data,
/// then j applications of the companion recursion.
///
/// Base values come from the series itself where it demonstrably converges;
/// otherwise from an exact rational resummation of the series (anything with
/// a finite-degree reconstruction matching every known term). Series that
/// admit neither - e.g. a natural boundary on the unit circle - cannot be
/// continued outward and raise PrecisionError.
class Continuation {
public:
    Continuation(const MahlerEquation& eq, const LaurentTrunc& f, double r0)
        : eq_(eq), f_(f), r0_(r0), radius_(radius_estimate(f)) {
        eq_.validate();
        if (!(r0 > 1.0)) throw std::invalid_argument("Continuation: r0 must exceed 1");
    }

    Complex base_value(const Complex& z) {
        if (std::abs(z) < 0.8 * radius_) return f_.eval(z);
        if (!resummed_.has_value()) resum();
        return eval_guarded(*resummed_, z);
    }

    /// |x| >= r0 required. Returns f(x); collects per-step companion norms and
    /// the base vector norm when asked (used by the growth report).
    Complex value_at(const Complex& x, std::vector<std::pair<double, double>>* step_norms = nullptr,
                     double* base_norm = nullptr) {
        const double ax = std::abs(x);
        if (ax < r0_) throw std::invalid_argument("Continuation: |x| below r0");
        unsigned long j = 0;
        double lx = std::log(ax);
        while (lx >= static_cast<double>(eq_.radix) * std::log(r0_)) {
            lx /= static_cast<double>(eq_.radix);
            ++j;
        }
        const Complex xi = std::exp(std::log(x) / static_cast<double>(radix_power(eq_.radix, j)));

        const unsigned long m = eq_.order();
        std::vector<Complex> v(m);
        for (unsigned long t = 0; t < m; ++t)
            v[t] = base_value(std::pow(xi, static_cast<double>(radix_power(eq_.radix, t))));
        if (base_norm) {
            double nrm = 0;
            for (const auto& c : v) nrm = std::max(nrm, std::abs(c));
            *base_norm = nrm;
        }

        for (unsigned long k = 0; k < j; ++k) {
            const Complex y = std::pow(xi, static_cast<double>(radix_power(eq_.radix, k)));
            std::vector<Complex> next(m);
            Complex last = 0;
            double row_sum = 0;
            for (unsigned long i = 0; i < m; ++i) {
                const Complex bi = eq_.coeffs[i].is_zero() ? Complex(0) : eval_guarded(eq_.coeffs[i], y);
                last -= bi * v[i];
                row_sum += std::abs(bi);
            }
            for (unsigned long i = 0; i + 1 < m; ++i) next[i] = v[i + 1];
            next[m - 1] = last;
            if (step_norms) step_norms->emplace_back(std::abs(y), std::max(row_sum, m > 1 ? 1.0 : 0.0));
            v = std::move(next);
        }
        return v[0];
    }

private:
    void resum() {
        const long nu = f_.known_terms();
        for (unsigned long d = 4;; d *= 2) {
            if (static_cast<long>(2 * d) + 2 + kPrecisionMargin > nu)
                throw PrecisionError("Continuation: series neither converges at the base annulus "
                                     "nor admits a rational resummation from the available terms");
            const auto r = pade_reconstruct(f_, d, d);
            if (r.has_value()) {
                resummed_ = *r;
                return;
            }
        }
    }

    MahlerEquation eq_;
    LaurentTrunc f_;
    double r0_;
    double radius_;
    std::optional<RatFunc> resummed_;
};

} // namespace detail

/// Evaluates the equation's solution at x with |x| >= r0 > 1 by writing
/// x = xi^(p^j) with xi in the base annulus [r0, r0^p) (principal root), and
/// walking outward with the companion recursion of the equation.
inline Complex continue_outward(const MahlerEquation& eq, const LaurentTrunc& f_base,
                                const Complex& x, double r0) {
    detail::Continuation cont(eq, f_base, r0);
    return cont.value_at(x);
}

struct GrowthSample {
    Complex x;
    double value_abs = 0;
    double bound = 0;
};

/// Empirical verification of the polynomial growth bound
/// |g(x)| <= L (log|x|)^d |x|^(M/(p-1)).
struct GrowthReport {
    double r0 = 2.0;
    double K = 1.0;
    double M = 0.0;
    double L = 0.0;
    double d = 0.0;
    std::vector<GrowthSample> samples;
    bool all_within_bound = false;
};

/// Samples the annuli A_j = { r0^(p^j) <= |x| < r0^(p^(j+1)) } for
/// j = 0..j_max, evaluates the solution by outward continuation, fits the
/// constants K, M from the companion-matrix norms along the actual walks and
/// L from the base-annulus maximum, and checks every sample against the bound.
inline GrowthReport growth_check(const MahlerEquation& eq, const LaurentTrunc& f_base, double r0,
                                 unsigned long j_max, unsigned long samples_per_annulus) {
    if (!(r0 > 1.0)) throw std::invalid_argument("growth_check: r0 must exceed 1");
    detail::Continuation cont(eq, f_base, r0);
    const double p = static_cast<double>(eq.radix);
    std::mt19937 rng(0x4d61686cU);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double two_pi = 2.0 * std::acos(-1.0);
    const auto draw = [&](double log_lo, double log_hi) {
        const double lr = log_lo + (log_hi - log_lo) * unit(rng);
        const double arg = two_pi * unit(rng);
        return std::polar(std::exp(lr), arg);
    };

    struct Eval {
        Complex x;
        double value_abs;
        unsigned long j;
    };
    std::vector<Eval> evals;
    std::vector<std::pair<double, double>> step_norms;
    double base_max = 0.0;

    // base annulus maximum for L
    for (unsigned long s = 0; s < samples_per_annulus; ++s) {
        for (int attempt = 0;; ++attempt) {
            try {
                const Complex xi = draw(std::log(r0), p * std::log(r0));
                double bn = 0;
                (void)cont.value_at(xi, nullptr, &bn);
                base_max = std::max(base_max, bn);
                break;
            } catch (const PoleProximityError&) {
                if (attempt > 64) throw;
            }
        }
    }

    // annulus samples; the walk data doubles as the fitting set for K, M
    for (unsigned long j = 0; j <= j_max; ++j) {
        const double lo = std::pow(p, static_cast<double>(j)) * std::log(r0);
        const double hi = p * lo;
        for (unsigned long s = 0; s < samples_per_annulus; ++s) {
            for (int attempt = 0;; ++attempt) {
                try {
                    const Complex x = draw(lo, hi);
                    double bn = 0;
                    const Complex g = cont.value_at(x, &step_norms, &bn);
                    base_max = std::max(base_max, bn);
                    evals.push_back({x, std::abs(g), j});
                    break;
                } catch (const PoleProximityError&) {
                    if (attempt > 64) throw;
                }
            }
        }
    }

    GrowthReport report;
    report.r0 = r0;
    double m_fit = 0.0;
    for (const auto& [ay, norm] : step_norms)
        if (norm > 1.0 && ay > 1.0) m_fit = std::max(m_fit, std::log(norm) / std::log(ay));
    report.M = m_fit + 0.25; // slack so K stays at 1 on the fitted points
    double k_fit = 1.0;
    for (const auto& [ay, norm] : step_norms)
        if (ay > 1.0) k_fit = std::max(k_fit, norm / std::pow(ay, report.M));
    report.K = k_fit;
    report.d = std::max(0.0, std::log(report.K) / std::log(p));
    report.L = std::max(base_max, 1e-300) * std::max(1.0, std::pow(1.0 / std::log(r0), report.d)) * 1.05;

    report.all_within_bound = true;
    for (const auto& ev : evals) {
        const double lx = std::log(std::abs(ev.x));
        const double bound = report.L * std::pow(lx, report.d) * std::pow(std::abs(ev.x), report.M / (p - 1.0));
        report.samples.push_back({ev.x, ev.value_abs, bound});
        if (!(ev.value_abs <= bound)) report.all_within_bound = false;
    }
    return report;
}

/// Suggests a walk radius from the pole data: twice an upper root bound of the
/// denominators involved (Fujiwara bound), floored at 2.
inline double auto_r0(const RatFunc& value, const MahlerEquation& eq) {
    const auto root_bound = [](const Poly& d) {
        if (d.degree() < 1) return 0.0;
        const double lead = std::fabs(d.leading().to_double());
        double best = 0.0;
        for (long k = 1; k <= d.degree(); ++k) {
            const double c = std::fabs(d.coeff(d.degree() - k).to_double());
            if (c > 0) best = std::max(best, std::pow(c / lead, 1.0 / static_cast<double>(k)));
        }
        return 2.0 * best;
    };
    double r0 = 2.0;
    r0 = std::max(r0, 1.05 * 2.0 * root_bound(value.den()));
    for (const auto& b : eq.coeffs)
        if (!b.is_zero()) r0 = std::max(r0, 1.05 * root_bound(b.den()));
    return r0;
}

} // namespace mahlerkit

#endif // MAHLERKIT_PROBE_HPP
