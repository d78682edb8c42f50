// mahlerkit: exact solving, system building, and rationality certification
// for scalar Mahler equations, plus a floating-point growth probe.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mahlerkit/problem.hpp"

namespace {

using mahlerkit::Json;
using mahlerkit::RunOptions;
using mahlerkit::RunOutcome;

RunOutcome run_one(const std::string& path, const std::string& cli_mode, const RunOptions& opts) {
    try {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open problem file: " + path);
        Json doc;
        try {
            in >> doc;
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument("problem file is not valid JSON: " + std::string(e.what()));
        }
        if (doc.is_object() && doc.contains("mode") && doc["mode"].is_string() &&
            doc["mode"].get<std::string>() != cli_mode)
            throw std::invalid_argument("problem file declares mode \"" + doc["mode"].get<std::string>() +
                                        "\" but the command line requested \"" + cli_mode + "\"");
        doc["mode"] = cli_mode;
        const mahlerkit::ProblemFile problem = mahlerkit::ProblemFile::parse(doc);
        return mahlerkit::run(problem, opts);
    } catch (const std::exception& e) {
        Json err;
        err["schema_version"] = "1";
        err["tool"] = "mahlerkit";
        err["mode"] = cli_mode;
        err["status"] = "error";
        err["message"] = e.what();
        return {mahlerkit::kExitInputError, err};
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for scalar Mahler equations: series solving, consistent\n"
                 "first-order systems, rationality certificates, and a numeric growth probe."};
    app.name("mahlerkit");

    std::string mode;
    std::vector<std::string> files;
    long terms = 0;
    unsigned long max_degree = 0;
    bool deterministic = false;
    unsigned jobs = 1;
    std::string output;

    app.add_option("mode", mode, "solve | build-system | check-consistency | certify | probe")
        ->required()
        ->check(CLI::IsMember({"solve", "build-system", "check-consistency", "certify", "probe"}));
    app.add_option("problem-file", files, "problem file(s), JSON schema version 1")->required();
    app.add_option("--terms", terms, "series truncation order (overrides the problem file)");
    app.add_option("--max-degree", max_degree, "degree cap for reconstruction (overrides the problem file)");
    app.add_flag("--deterministic", deterministic, "suppress the timestamp field; output is byte-reproducible");
    app.add_option("--jobs", jobs, "process this many problem files in parallel")->check(CLI::PositiveNumber);
    app.add_option("--output", output, "write the output document to a file (single problem file only)");

    CLI11_PARSE(app, argc, argv);

    if (!output.empty() && files.size() != 1) {
        std::cerr << "mahlerkit: --output requires exactly one problem file\n";
        return mahlerkit::kExitInputError;
    }

    RunOptions opts;
    if (terms > 0) opts.terms = terms;
    if (max_degree > 0) opts.max_degree = max_degree;
    opts.deterministic = deterministic;

    std::vector<RunOutcome> outcomes(files.size());
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::min<unsigned>(std::max(1u, jobs), static_cast<unsigned>(files.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= files.size()) return;
                outcomes[i] = run_one(files[i], mode, opts);
            }
        });
    for (auto& t : pool) t.join();

    int exit_code = mahlerkit::kExitSuccess;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const std::string text = outcomes[i].document.dump(2) + "\n";
        if (!output.empty()) {
            std::ofstream out(output);
            if (!out) {
                std::cerr << "mahlerkit: cannot write " << output << "\n";
                return mahlerkit::kExitInputError;
            }
            out << text;
        } else {
            std::cout << text;
        }
        exit_code = std::max(exit_code, outcomes[i].exit_code);
    }
    return exit_code;
}
