#ifndef MAHLERKIT_RATIONALITY_HPP
#define MAHLERKIT_RATIONALITY_HPP

#include <optional>
#include <string>
#include <variant>

#include "mahlerkit/system.hpp"

namespace mahlerkit {

/// Reconstructs a rational function x^v * P/Q (deg P <= dnum, deg Q <= dden,
/// Q != 0) whose expansion matches f through its full guaranteed order, via
/// exact nullspace computation over all available coefficient rows. The
/// congruence is re-checked by direct series convolution before returning.
/// Returns nullopt when no candidate survives, i.e. no such function exists.
inline std::optional<RatFunc> pade_reconstruct(const LaurentTrunc& f, unsigned long dnum, unsigned long dden) {
    const auto tv = f.true_valuation();
    if (!tv.has_value()) return RatFunc(0); // zero through the whole window
    const long v = *tv;
    const long nu = f.order() - v; // known coefficients of the unit part
    const long required = static_cast<long>(dnum + dden) + 2 + kPrecisionMargin;
    if (nu < required)
        throw PrecisionError("pade_reconstruct: " + std::to_string(nu) + " terms available, " +
                             std::to_string(required) + " required");

    const auto u = [&](long j) -> const Rational& { return f.at(v + j); };

    // unknowns: Q_0..Q_dden, P_0..P_dnum; rows: Q*u - P = 0 mod x^nu
    const std::size_t cols = dnum + dden + 2;
    Matrix<Rational> m(static_cast<std::size_t>(nu), cols);
    for (long j = 0; j < nu; ++j) {
        for (unsigned long t = 0; t <= dden && static_cast<long>(t) <= j; ++t)
            m.at(static_cast<std::size_t>(j), t) = u(j - static_cast<long>(t));
        if (j <= static_cast<long>(dnum))
            m.at(static_cast<std::size_t>(j), dden + 1 + static_cast<std::size_t>(j)) = Rational(-1);
    }

    for (const auto& vec : nullspace(m)) {
        Poly den(std::vector<Rational>(vec.begin(), vec.begin() + static_cast<long>(dden) + 1));
        Poly num(std::vector<Rational>(vec.begin() + static_cast<long>(dden) + 1, vec.end()));
        if (den.is_zero()) continue;

        // independent full-order re-check by direct convolution
        bool ok = true;
        for (long j = 0; j < nu && ok; ++j) {
            Rational acc;
            for (long t = 0; t <= den.degree() && t <= j; ++t) acc += den.coeff(t) * u(j - t);
            ok = (acc == num.coeff(j));
        }
        if (!ok) continue;

        if (v >= 0) return RatFunc(num.shifted_up(v), den);
        return RatFunc(num, den.shifted_up(-v));
    }
    return std::nullopt;
}

/// Exact substitution check: S(r) = r(x^(p^m)) + sum_i b_i(x) r(x^(p^i))
/// computed in rational-function arithmetic and compared with zero.
inline bool verify_certificate(const MahlerEquation& eq, const RatFunc& r) {
    eq.validate();
    RatFunc acc = r.substitute_monomial(radix_power(eq.radix, eq.order()));
    for (unsigned long i = 0; i < eq.order(); ++i) {
        if (eq.coeffs[i].is_zero()) continue;
        const RatFunc term = (i == 0) ? r : r.substitute_monomial(radix_power(eq.radix, i));
        acc += eq.coeffs[i] * term;
    }
    return acc.is_zero();
}

/// A fully verified rationality certificate: the value satisfies both
/// equations as exact identities and its expansion reproduces the
/// seed-extended series through prefix_matched terms.
struct RationalityCertificate {
    RatFunc value;
    MahlerEquation eq1, eq2;
    long terms_used = 0;
    unsigned long dnum = 0, dden = 0;
    bool verified1 = false, verified2 = false;
    long prefix_matched = 0;
};

struct CertifyFailure {
    enum class Reason { hypothesis_violated, seed_inconsistent, caps_exhausted };
    Reason reason;
    std::string details;
};

inline const char* to_string(CertifyFailure::Reason r) {
    switch (r) {
        case CertifyFailure::Reason::hypothesis_violated: return "hypothesis_violated";
        case CertifyFailure::Reason::seed_inconsistent: return "seed_inconsistent";
        case CertifyFailure::Reason::caps_exhausted: return "caps_exhausted";
    }
    return "unknown";
}

struct CertifyCaps {
    long order_cap = 512;
    unsigned long degree_cap = 32;
};

using CertifyResult = std::variant<RationalityCertificate, CertifyFailure>;

/// The rationality pipeline. Multiplicatively dependent radices are refused
/// outright (the rationality conclusion can genuinely fail for them); the seed
/// is cross-checked under every normalized equation from both inputs; then
/// reconstruction escalates (order, degree) doubling from (64, 4) up to the
/// caps, verifying each candidate against both equations exactly. Cap
/// exhaustion is reported as such; it is never evidence of irrationality.
inline CertifyResult certify_rational(const MahlerEquation& eq1, const MahlerEquation& eq2,
                                      const SeriesSeed& seed, const CertifyCaps& caps) {
    eq1.validate();
    eq2.validate();
    if (!mult_independent(eq1.radix, eq2.radix))
        return CertifyFailure{CertifyFailure::Reason::hypothesis_violated,
                              "radices " + std::to_string(eq1.radix) + " and " + std::to_string(eq2.radix) +
                                  " are multiplicatively dependent"};

    const NormalizeResult n1 = normalize_equation(eq1);
    const NormalizeResult n2 = normalize_equation(eq2);

    bool seed_all_zero = true;
    for (const auto& c : seed.coeffs) seed_all_zero = seed_all_zero && c.is_zero();

    if (n1.forces_zero || n2.forces_zero) {
        if (!seed_all_zero)
            return CertifyFailure{CertifyFailure::Reason::seed_inconsistent,
                                  "an equation admits only the zero series, but the seed is nonzero"};
        RationalityCertificate cert;
        cert.value = RatFunc(0);
        cert.eq1 = eq1;
        cert.eq2 = eq2;
        cert.terms_used = 64;
        cert.verified1 = verify_certificate(eq1, cert.value);
        cert.verified2 = verify_certificate(eq2, cert.value);
        cert.prefix_matched = 64;
        return cert;
    }

    const MahlerEquation& solver_eq = n1.equations.front();
    std::vector<const MahlerEquation*> cross_checks;
    for (std::size_t i = 1; i < n1.equations.size(); ++i) cross_checks.push_back(&n1.equations[i]);
    for (const auto& e : n2.equations) cross_checks.push_back(&e);

    long order = 64;
    unsigned long degree = 4;
    for (;;) {
        const long n_eff = std::min(order, caps.order_cap);
        const unsigned long d_eff = std::min(degree, caps.degree_cap);

        const SolveResult solved = solve_series(solver_eq, seed, n_eff);
        if (std::holds_alternative<Underdetermined>(solved))
            return CertifyFailure{CertifyFailure::Reason::seed_inconsistent,
                                  "seed too short: " + std::to_string(std::get<Underdetermined>(solved).needed) +
                                      " coefficients needed to determine a solution"};
        if (std::holds_alternative<Inconsistent>(solved))
            return CertifyFailure{CertifyFailure::Reason::seed_inconsistent,
                                  std::get<Inconsistent>(solved).detail};
        const LaurentTrunc f = std::get<LaurentTrunc>(solved);

        for (const MahlerEquation* e : cross_checks) {
            const LaurentTrunc res = apply_operator(*e, f);
            if (const auto bad = res.true_valuation())
                return CertifyFailure{CertifyFailure::Reason::seed_inconsistent,
                                      "solution of the first equation fails a companion equation "
                                      "(residual valuation " + std::to_string(*bad) + ")"};
        }

        const std::optional<RatFunc> guess = pade_reconstruct(f, d_eff, d_eff);
        if (guess.has_value() && verify_certificate(eq1, *guess) && verify_certificate(eq2, *guess)) {
            RationalityCertificate cert;
            cert.value = *guess;
            cert.eq1 = eq1;
            cert.eq2 = eq2;
            cert.terms_used = n_eff;
            cert.dnum = d_eff;
            cert.dden = d_eff;
            cert.verified1 = true;
            cert.verified2 = true;
            const LaurentTrunc expansion = laurent_expand(*guess, f.order());
            if (!expansion.agrees_with(f))
                throw std::logic_error("certify_rational: verified value disagrees with the solved series");
            cert.prefix_matched = f.order();
            return cert;
        }

        if (n_eff == caps.order_cap && d_eff == caps.degree_cap)
            return CertifyFailure{CertifyFailure::Reason::caps_exhausted,
                                  "no verified reconstruction within order " + std::to_string(caps.order_cap) +
                                      " and degree " + std::to_string(caps.degree_cap)};
        order *= 2;
        degree *= 2;
    }
}

} // namespace mahlerkit

#endif // MAHLERKIT_RATIONALITY_HPP
