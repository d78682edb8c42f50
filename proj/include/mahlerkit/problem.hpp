#ifndef MAHLERKIT_PROBLEM_HPP
#define MAHLERKIT_PROBLEM_HPP

#include <chrono>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mahlerkit/parser.hpp"
#include "mahlerkit/probe.hpp"

namespace mahlerkit {

using Json = nlohmann::ordered_json;

// process exit codes; part of the tool's contract
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitHonestFailure = 2; // caps exhausted, no reconstruction, precision deficit
inline constexpr int kExitRefused = 3;       // hypothesis violated or seed inconsistent
inline constexpr int kExitInputError = 4;

struct ProbeConfig {
    std::optional<double> r0; // absent: derived from the pole data
    unsigned long j_max = 3;
    unsigned long samples = 32;
};

/// Parsed problem file (JSON, schema version "1").
struct ProblemFile {
    std::string mode; // solve | build-system | check-consistency | certify | probe
    unsigned long p = 0;
    unsigned long q = 0;
    std::vector<std::string> eq1_coeffs;
    std::vector<std::string> eq2_coeffs;
    SeriesSeed seed;
    long terms = 64;
    CertifyCaps caps;
    ProbeConfig probe;

    static ProblemFile parse(const Json& doc);
    MahlerEquation equation1() const { return make_equation(p, eq1_coeffs); }
    MahlerEquation equation2() const { return make_equation(q, eq2_coeffs); }

private:
    static MahlerEquation make_equation(unsigned long radix, const std::vector<std::string>& coeffs) {
        MahlerEquation eq;
        eq.radix = radix;
        eq.coeffs.reserve(coeffs.size());
        for (const auto& s : coeffs) eq.coeffs.push_back(parse_ratfunc_expr(s));
        eq.validate();
        return eq;
    }
};

inline ProblemFile ProblemFile::parse(const Json& doc) {
    const auto fail = [](const std::string& msg) -> void { throw std::invalid_argument("problem file: " + msg); };
    if (!doc.is_object()) fail("top level must be an object");
    if (doc.value("schema_version", "") != "1") fail("missing or unsupported schema_version (expected \"1\")");

    ProblemFile pf;
    static const std::vector<std::string> modes{"solve", "build-system", "check-consistency", "certify", "probe"};
    pf.mode = doc.value("mode", "");
    if (std::find(modes.begin(), modes.end(), pf.mode) == modes.end())
        fail("mode must be one of solve, build-system, check-consistency, certify, probe");

    const bool needs_pair = pf.mode == "certify" || pf.mode == "build-system" || pf.mode == "check-consistency";

    if (!doc.contains("p") || !doc["p"].is_number_unsigned()) fail("p must be a positive integer");
    pf.p = doc["p"].get<unsigned long>();
    if (pf.p < 2) fail("p must be >= 2");
    if (doc.contains("q")) {
        if (!doc["q"].is_number_unsigned()) fail("q must be a positive integer");
        pf.q = doc["q"].get<unsigned long>();
        if (pf.q < 2) fail("q must be >= 2");
    } else if (needs_pair) {
        fail("q is required for mode " + pf.mode);
    }

    if (!doc.contains("equations") || !doc["equations"].is_array() || doc["equations"].empty())
        fail("equations must be a nonempty array of coefficient lists");
    const auto& eqs = doc["equations"];
    const auto read_coeffs = [&](const Json& list, std::vector<std::string>& out) {
        if (!list.is_array() || list.empty()) fail("each equation is a nonempty array of coefficient strings");
        for (const auto& item : list) {
            if (!item.is_string()) fail("equation coefficients must be strings");
            out.push_back(item.get<std::string>());
        }
    };
    read_coeffs(eqs[0], pf.eq1_coeffs);
    if (needs_pair) {
        if (eqs.size() < 2) fail("mode " + pf.mode + " requires two equations");
        read_coeffs(eqs[1], pf.eq2_coeffs);
    }

    if (doc.contains("seed")) {
        const auto& s = doc["seed"];
        if (!s.is_object() || !s.contains("coeffs") || !s["coeffs"].is_array())
            fail("seed must be an object with a coeffs array");
        pf.seed.start = s.value("start", 0L);
        for (const auto& item : s["coeffs"]) {
            if (!item.is_string()) fail("seed coefficients must be rational strings");
            pf.seed.coeffs.push_back(Rational::from_string(item.get<std::string>()));
        }
    }
    if (pf.seed.coeffs.empty()) fail("a nonempty seed is required");

    if (doc.contains("terms")) {
        if (!doc["terms"].is_number_integer()) fail("terms must be an integer");
        pf.terms = doc["terms"].get<long>();
        if (pf.terms < 1) fail("terms must be >= 1");
    }
    if (doc.contains("caps")) {
        const auto& c = doc["caps"];
        pf.caps.order_cap = c.value("N_max", pf.caps.order_cap);
        pf.caps.degree_cap = c.value("d_max", pf.caps.degree_cap);
        if (pf.caps.order_cap < 64 || pf.caps.degree_cap < 4) fail("caps must allow at least N_max 64, d_max 4");
    }
    if (doc.contains("probe")) {
        const auto& pr = doc["probe"];
        if (pr.contains("r0")) pf.probe.r0 = pr["r0"].get<double>();
        pf.probe.j_max = pr.value("j_max", pf.probe.j_max);
        pf.probe.samples = pr.value("samples", pf.probe.samples);
    }
    return pf;
}

struct RunOptions {
    std::optional<long> terms;
    std::optional<unsigned long> max_degree;
    bool deterministic = false;
};

struct RunOutcome {
    int exit_code = kExitSuccess;
    Json document;
};

namespace detail {

inline std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline Json envelope(const std::string& mode, const std::string& status, const RunOptions& opts) {
    Json doc;
    doc["schema_version"] = "1";
    doc["tool"] = "mahlerkit";
    doc["mode"] = mode;
    doc["status"] = status;
    if (!opts.deterministic) doc["generated_at"] = iso_timestamp();
    return doc;
}

inline Json series_json(const LaurentTrunc& f) {
    Json out;
    out["valuation"] = f.valuation_bound();
    out["order"] = f.order();
    Json coeffs = Json::array();
    for (long e = f.valuation_bound(); e < f.order(); ++e) coeffs.push_back(f.at(e).str());
    out["coefficients"] = std::move(coeffs);
    return out;
}

inline Json matrix_json(const Matrix<RatFunc>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json system_json(const MahlerSystem& sys) {
    Json out;
    out["p"] = sys.p;
    out["q"] = sys.q;
    out["n"] = sys.n;
    Json tags = Json::array();
    for (const auto& [m, r] : sys.basis_tags) tags.push_back(Json::array({m, r}));
    out["basis_tags"] = std::move(tags);
    out["A"] = matrix_json(sys.A);
    out["B"] = matrix_json(sys.B);
    return out;
}

inline LaurentTrunc solve_or_throw(const MahlerEquation& eq, const SeriesSeed& seed, long order) {
    const SolveResult res = solve_series(eq, seed, order);
    if (std::holds_alternative<Underdetermined>(res))
        throw SeedError("seed too short: " + std::to_string(std::get<Underdetermined>(res).needed) +
                        " coefficients needed");
    if (std::holds_alternative<Inconsistent>(res))
        throw SeedError("seed inconsistent: " + std::get<Inconsistent>(res).detail);
    return std::get<LaurentTrunc>(res);
}

} // namespace detail

/// Executes a parsed problem and produces the machine-readable document plus
/// the process exit code. Never throws on mathematical failure; the failure
/// vocabulary maps to exit codes 2 and 3, input errors to 4.
inline RunOutcome run(const ProblemFile& problem, const RunOptions& opts) {
    const long terms = opts.terms.value_or(problem.terms);
    CertifyCaps caps = problem.caps;
    if (opts.max_degree) caps.degree_cap = *opts.max_degree;

    try {
        if (problem.mode == "solve") {
            const MahlerEquation eq = problem.equation1();
            const SolveResult res = solve_series(eq, problem.seed, terms);
            if (std::holds_alternative<Underdetermined>(res)) {
                Json doc = detail::envelope(problem.mode, "failure", opts);
                doc["reason"] = "seed_underdetermined";
                doc["details"] = std::to_string(std::get<Underdetermined>(res).needed) + " seed coefficients needed";
                return {kExitRefused, doc};
            }
            if (std::holds_alternative<Inconsistent>(res)) {
                Json doc = detail::envelope(problem.mode, "failure", opts);
                doc["reason"] = "seed_inconsistent";
                doc["details"] = std::get<Inconsistent>(res).detail;
                return {kExitRefused, doc};
            }
            Json doc = detail::envelope(problem.mode, "ok", opts);
            doc["series"] = detail::series_json(std::get<LaurentTrunc>(res));
            return {kExitSuccess, doc};
        }

        if (problem.mode == "certify") {
            const CertifyResult res = certify_rational(problem.equation1(), problem.equation2(), problem.seed, caps);
            if (std::holds_alternative<CertifyFailure>(res)) {
                const auto& f = std::get<CertifyFailure>(res);
                Json doc = detail::envelope(problem.mode, "failure", opts);
                doc["reason"] = to_string(f.reason);
                doc["details"] = f.details;
                const bool refusal = f.reason != CertifyFailure::Reason::caps_exhausted;
                return {refusal ? kExitRefused : kExitHonestFailure, doc};
            }
            const auto& cert = std::get<RationalityCertificate>(res);
            Json doc = detail::envelope(problem.mode, "certified", opts);
            Json c;
            c["value"] = cert.value.str();
            c["p"] = problem.p;
            c["q"] = problem.q;
            c["terms_used"] = cert.terms_used;
            c["degree_bounds"] = Json::array({cert.dnum, cert.dden});
            c["verified"] = Json::array({cert.verified1, cert.verified2});
            c["prefix_matched"] = cert.prefix_matched;
            doc["certificate"] = std::move(c);
            return {kExitSuccess, doc};
        }

        if (problem.mode == "build-system" || problem.mode == "check-consistency") {
            BuildCaps bcaps{std::max<long>(caps.order_cap / 2, 128), caps.degree_cap};
            const MahlerSystem sys = build_system(problem.equation1(), problem.equation2(), problem.seed, bcaps);
            Json doc = detail::envelope(problem.mode, "ok", opts);
            if (problem.mode == "build-system") {
                doc["system"] = detail::system_json(sys);
                doc["consistent"] = check_consistency(sys);
                doc["det_nonzero"] = Json::array({!determinant(sys.A).is_zero(), !determinant(sys.B).is_zero()});
            } else {
                doc["consistent"] = check_consistency(sys);
                doc["n"] = sys.n;
            }
            return {kExitSuccess, doc};
        }

        if (problem.mode == "probe") {
            const MahlerEquation eq = problem.equation1();
            const LaurentTrunc f = detail::solve_or_throw(eq, problem.seed, terms);
            const double radius = radius_estimate(f);
            double r0 = 2.0;
            if (problem.probe.r0) {
                r0 = *problem.probe.r0;
            } else {
                RatFunc value(0);
                try {
                    if (const auto g = pade_reconstruct(f, 8, 8)) value = *g;
                } catch (const PrecisionError&) {
                }
                r0 = auto_r0(value, eq);
            }
            const GrowthReport report = growth_check(eq, f, r0, problem.probe.j_max, problem.probe.samples);
            Json doc = detail::envelope(problem.mode, "ok", opts);
            Json pj;
            if (std::isinf(radius)) pj["radius_estimate"] = "infinity";
            else pj["radius_estimate"] = radius;
            Json gj;
            gj["r0"] = report.r0;
            gj["K"] = report.K;
            gj["M"] = report.M;
            gj["L"] = report.L;
            gj["d"] = report.d;
            gj["all_within_bound"] = report.all_within_bound;
            Json samples = Json::array();
            for (const auto& s : report.samples) {
                Json e;
                e["x"] = Json::array({s.x.real(), s.x.imag()});
                e["abs_value"] = s.value_abs;
                e["bound"] = s.bound;
                samples.push_back(std::move(e));
            }
            gj["samples"] = std::move(samples);
            pj["growth"] = std::move(gj);
            doc["probe"] = std::move(pj);
            return {kExitSuccess, doc};
        }

        throw std::invalid_argument("unknown mode " + problem.mode);
    } catch (const SeedError& e) {
        Json doc = detail::envelope(problem.mode, "failure", opts);
        doc["reason"] = "seed_inconsistent";
        doc["details"] = e.what();
        return {kExitRefused, doc};
    } catch (const PrecisionError& e) {
        Json doc = detail::envelope(problem.mode, "failure", opts);
        doc["reason"] = "precision_deficit";
        doc["details"] = e.what();
        return {kExitHonestFailure, doc};
    } catch (const PoleProximityError& e) {
        Json doc = detail::envelope(problem.mode, "failure", opts);
        doc["reason"] = "pole_proximity";
        doc["details"] = e.what();
        return {kExitHonestFailure, doc};
    }
}

} // namespace mahlerkit

#endif // MAHLERKIT_PROBLEM_HPP
