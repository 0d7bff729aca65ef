// Acceptance suite: one PASS/FAIL line per criterion, details indented below it.
// Usage: acceptance [--only k[,k...]] [--seed s] [--json path]

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tuop/verify.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> only;
    std::uint64_t seed = tuop::VerifyConfig{}.seed;
    std::string json_path;
    app.add_option("--only", only, "criterion ids to run")->delimiter(',');
    app.add_option("--seed", seed, "Monte Carlo seed");
    app.add_option("--json", json_path, "write results as JSON");
    CLI11_PARSE(app, argc, argv);
    if (only.empty())
        for (int k = 1; k <= 12; ++k) only.push_back(k);

    tuop::VerifyConfig cfg;
    cfg.seed = seed;
    int failed = 0;
    nlohmann::json all = nlohmann::json::array();
    for (int id : only) {
        const auto t0 = std::chrono::steady_clock::now();
        const tuop::CriterionResult r = tuop::run_criterion(id, cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2d: %s (%.1fs)\n", r.pass() ? "PASS" : "FAIL", id, r.title.c_str(), secs);
        for (const auto& c : r.checks)
            std::printf("    %-4s %-62s %.6g in [%.6g, %.6g]\n", c.pass ? "ok" : "BAD", c.name.c_str(), c.value, c.lo,
                        c.hi);
        for (const auto& [k, v] : r.metrics) std::printf("    info %-62s %.6g\n", k.c_str(), v);
        if (!r.error.empty()) std::printf("    error: %s\n", r.error.c_str());
        std::fflush(stdout);
        if (!r.pass()) ++failed;
        all.push_back(tuop::to_json(r));
    }
    if (!json_path.empty()) std::ofstream(json_path) << all.dump(2) << "\n";
    return failed == 0 ? 0 : 1;
}
