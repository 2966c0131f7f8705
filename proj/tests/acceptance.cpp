// Acceptance runner: `acceptance N` evaluates criterion N, `acceptance` runs all of them.
// Each criterion prints one PASS/FAIL line; the exit status is nonzero if any failed.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "fracutm/checks.hpp"

using namespace fracutm;
using checks::CheckResult;

namespace {

struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<std::vector<CheckResult>()> run;
};

std::vector<CheckResult> classical() {
    auto f = solve(checks::heat_spec());
    double worst = 0.0;
    for (double t : {0.1, 0.25, 0.5})
        for (double x : {0.25, 0.5, 1.0, 2.0})
            worst = std::max(worst, std::abs(f(x, t) - heat_oracle(1.0, 1.0, x, t)));
    return {checks::at_most("max abs error vs oracle", worst, 1e-3),
            checks::at_most("|q(1,0.25) - 0.2144410|", std::abs(f(1.0, 0.25).real() - 0.2144410), 5e-8)};
}

std::vector<CheckResult> fractional() {
    return {checks::at_most("global relation residual / (1+|q0^|)", checks::gr_max(2.2), 1e-3),
            checks::at_most("PDE relative residual", checks::pde_rel(2.2), 5e-2),
            checks::at_most("max |q(x,1e-3) - q0(x)|, x in {0.5,1,2}", checks::initial_recovery(2.2), 5e-3)};
}

std::vector<CheckResult> regions() {
    std::vector<CheckResult> out;
    for (double a : {1.6, 2.0, 2.2, 2.4})
        out.push_back(checks::at_most("sector/indicator disagreements, alpha=" + format_double(a),
                                      checks::region_disagreements(a), 0.0));
    for (double a : {1.1, 1.3, 1.5})
        out.push_back(
            checks::at_most("indicator hits (D+ empty), alpha=" + format_double(a), checks::region_hits(a), 0.0));
    return out;
}

std::vector<CheckResult> admissibility() {
    const double as[] = {0.5, 1.0, 1.2, 2.0, 3.0, 3.5, 5.5};
    const bool want[] = {false, true, true, true, true, false, true};
    int bad = 0;
    for (int i = 0; i < 7; ++i) bad += monomial_admissible(as[i]) != want[i];
    return {checks::at_most("table mismatches", bad, 0.0)};
}

std::vector<CheckResult> nu_checks() {
    std::vector<CheckResult> out;
    for (double a : {2.0, 2.2})
        out.push_back(checks::at_most("w preservation, 100 points, alpha=" + format_double(a),
                                      checks::nu_preservation_error(a), 1e-12));
    // window obtained from the rotated ray angles, not from a stated inequality
    out.push_back(checks::at_most("rotated-ray window mismatches vs computed (7/5, 7/3)",
                                  checks::nu_window_mismatches(), 0.0));
    return out;
}

std::vector<CheckResult> self_convergence() {
    namespace fs = std::filesystem;
    std::vector<CheckResult> out;
    for (const char* name : {"heat_alpha2", "frac_alpha22"}) {
        RunConfig rc = load_config((fs::path(FRACUTM_SOURCE_DIR) / "configs" / (std::string(name) + ".json")).string());
        auto rep = cli::converge(rc, 3, 60);
        double worst = INFINITY;
        for (double p : rep.orders) worst = std::min(worst, p);
        out.push_back({std::string("min observed order, ") + name, worst, 1.0, worst >= 1.0});
    }
    return out;
}

std::vector<CheckResult> deformation() {
    std::vector<CheckResult> out;
    for (double a : {2.0, 2.2})
        out.push_back(checks::at_most("max |dq| / (3 err_est), alpha=" + format_double(a),
                                      checks::deformation_ratio(a), 1.0));
    return out;
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "classical reduction, alpha=2", 60, classical},
        {2, "fractional run, alpha=2.2", 300, fractional},
        {3, "region geometry", 5, regions},
        {4, "admissibility table", 1, admissibility},
        {5, "fractional-operator suite", 60, [] { return checks::fraccalc_suite(); }},
        {6, "nu map", 5, nu_checks},
        {7, "self-convergence", 600, self_convergence},
        {8, "deformation independence", 300, deformation},
    };
    return list;
}

bool run(const Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    std::string failure;
    try {
        results = c.run();
    } catch (const std::exception& e) {
        failure = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = failure.empty();
    std::string detail;
    for (const auto& r : results) {
        ok = ok && r.pass;
        detail += "\n    " + std::string(r.pass ? "ok   " : "fail ") + r.name + ": " + format_double(r.measured) +
                  (r.name.rfind("min observed", 0) == 0 ? " >= " : " <= ") + format_double(r.threshold);
    }
    if (!failure.empty()) detail += "\n    error: " + failure;
    bool in_time = secs <= c.budget_s;
    detail += "\n    runtime " + std::to_string(secs).substr(0, 6) + " s (budget " + format_double(c.budget_s) + " s)";
    ok = ok && in_time;
    std::printf("%s criterion %d: %s%s\n", ok ? "PASS" : "FAIL", c.id, c.title, detail.c_str());
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 2) {
        std::fprintf(stderr, "usage: acceptance [criterion]\n");
        return 2;
    }
    bool all_ok = true;
    bool found = false;
    int which = argc == 2 ? std::atoi(argv[1]) : 0;
    for (const auto& c : criteria())
        if (which == 0 || c.id == which) {
            found = true;
            all_ok = run(c) && all_ok;
        }
    if (!found) {
        std::fprintf(stderr, "unknown criterion %s\n", argv[1]);
        return 2;
    }
    return all_ok ? 0 : 1;
}
