#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "fracutm/checks.hpp"
#include "fracutm/config.hpp"
#include "fracutm/symbolgeo.hpp"
#include "fracutm/utm.hpp"
#include "json.hpp"

namespace fracutm::cli {

enum ExitCode : int { ok = 0, check_failed = 1, validation = 2, tolerance = 3 };

using nlohmann::ordered_json;

inline bool env_flag(const char* name) {
    const char* v = std::getenv(name);
    return v && *v && std::string(v) != "0";
}

inline void log(const std::string& msg) {
    if (env_flag("FRACUTM_VERBOSE")) std::cerr << "[fracutm] " << msg << '\n';
}

inline int report_error(const Error& e, std::ostream& err) {
    ordered_json j{{"error", e.reason()}, {"message", e.what()}};
    if (auto* te = dynamic_cast<const ToleranceError*>(&e)) j["achieved"] = te->achieved();
    err << j.dump() << '\n';
    const std::string r = e.reason();
    if (r == "tolerance" || r == "resolution" || r == "non_finite") return tolerance;
    return validation;
}

inline std::vector<double> pick(const std::vector<double>& v, std::size_t n) {
    if (v.size() <= n) return v;
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(v[i * (v.size() - 1) / (n - 1)]);
    return out;
}

struct SolveOutcome {
    std::vector<FieldRecord> rows;
    std::size_t over_tolerance = 0;
    double max_err = 0.0;
    double imag_max = 0.0;
};

inline SolveOutcome sample_field(const RunConfig& rc, const SolutionField& field) {
    std::vector<std::pair<double, double>> pts;
    for (double t : rc.t.values())
        for (double x : rc.x.values()) pts.emplace_back(x, t);
    auto vals = field.evaluate_points(pts);
    SolveOutcome out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& v = vals[i];
        out.rows.push_back({pts[i].first, pts[i].second, v.q.real(), v.q.imag(), v.err});
        out.max_err = std::max(out.max_err, v.err);
        out.imag_max = std::max(out.imag_max, std::abs(v.q.imag()));
        if (v.err > rc.tol_abs + rc.tol_rel * std::abs(v.q)) ++out.over_tolerance;
    }
    return out;
}

inline ordered_json nullable(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

inline int cmd_solve(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        auto t0 = std::chrono::steady_clock::now();
        RunConfig rc = load_config(path);
        const auto& spec = rc.spec;
        log("solving alpha=" + format_double(spec.alpha));
        auto field = solve(spec);
        auto res = sample_field(rc, field);

        double gr_max = std::numeric_limits<double>::quiet_NaN(), gr_med = gr_max, pde = gr_max;
        bool pde_low = false;
        if (rc.gr_diagnostic) {
            log("global relation diagnostic");
            ProblemSpec ds = spec;
            ds.window = {0.0, GROptions{}.x_max, std::min(1e-6, rc.t.lo), spec.T};
            auto df = solve(ds);
            auto rep = global_relation_report(ds, df.as_function(), sample_gr_ks(), {spec.T / 4, spec.T / 2});
            gr_max = rep.max_rel;
            gr_med = rep.median_rel;
        }
        if (rc.pde_diagnostic) {
            log("pde residual diagnostic");
            const double dt = 1e-3 * spec.T;
            std::vector<double> xs, ts;
            for (double x : rc.x.values())
                if (x >= 0.25) xs.push_back(x);
            for (double t : rc.t.values())
                if (t > 4 * dt && t < spec.T - 4 * dt) ts.push_back(t);
            xs = pick(xs, 6);
            ts = pick(ts, 3);
            if (!xs.empty() && !ts.empty()) {
                ProblemSpec ds = spec;
                ds.window = {0.0, xs.back(), ts.front() - 2 * dt, spec.T};
                auto df = solve(ds);
                auto rep = pde_residual(ds, df.as_function(), xs, ts);
                pde = rep.rel;
                pde_low = rep.low_resolution;
            }
        }

        const bool deterministic = env_flag("FRACUTM_DETERMINISTIC");
        double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        auto st = field.stats();
        ordered_json report;
        report["gr_residual_max"] = nullable(gr_max);
        report["gr_residual_median"] = nullable(gr_med);
        report["pde_residual_rel"] = nullable(pde);
        report["runtime_s"] = deterministic ? 0.0 : runtime;
        report["quadrature"] = {{"eps_rel", rc.tol_rel},
                                {"eps_abs", rc.tol_abs},
                                {"k_max", st.k_max},
                                {"r_max", st.r_max},
                                {"eps_rot", spec.contour.eps_rot},
                                {"nodes_per_ray", spec.contour.nodes_per_ray},
                                {"nodes_real", st.nodes_real},
                                {"nodes_contour", st.nodes_contour},
                                {"max_err_est", res.max_err},
                                {"points_over_tolerance", res.over_tolerance}};
        report["imag_max"] = res.imag_max;
        report["pde_low_resolution"] = pde_low;
        report["warnings"] = field.warnings();

        write_atomic(rc.field_path, field_csv(res.rows));
        write_atomic(rc.report_path, report.dump(2) + "\n");
        out << "wrote " << rc.field_path << " and " << rc.report_path << '\n';
        if (res.over_tolerance) {
            err << ordered_json{{"error", "tolerance"},
                                {"message", std::to_string(res.over_tolerance) +
                                                " grid points exceed the requested tolerance"},
                                {"achieved", res.max_err}}
                       .dump()
                << '\n';
            return tolerance;
        }
        return ok;
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

inline ordered_json regions_json(double alpha) {
    auto sec = dplus_sectors(alpha);
    auto [t1, t2] = gamma_ray_angles(alpha);
    ordered_json j;
    j["alpha"] = alpha;
    j["sectors"] = ordered_json::array();
    for (const auto& s : sec.sectors) j["sectors"].push_back({s.first, s.second});
    j["gamma_rays"] = {t1, t2};
    auto nus = nu_candidates(alpha);
    if (nus.empty())
        j["nu"] = nullptr;
    else
        j["nu"] = {nus.front().factor.real(), nus.front().factor.imag()};
    return j;
}

// Rays 1 and 2 are Gamma, 3 onward are D+ sector edges; each from 0 to radius R.
inline std::string regions_csv(double alpha, double R = 10.0, int samples = 21) {
    auto [t1, t2] = gamma_ray_angles(alpha);
    std::vector<double> angles{t1, t2};
    for (const auto& s : dplus_sectors(alpha).sectors) {
        angles.push_back(s.first);
        angles.push_back(s.second);
    }
    std::string csv = "ray_id,re,im\n";
    for (std::size_t r = 0; r < angles.size(); ++r)
        for (int i = 0; i < samples; ++i) {
            cplx z = std::polar(R * i / (samples - 1), angles[r]);
            csv += std::to_string(r + 1) + ',' + format_double(z.real()) + ',' + format_double(z.imag()) + '\n';
        }
    return csv;
}

inline int cmd_regions(double alpha, const std::string& out_path, const std::string& csv_path,
                       std::ostream& out, std::ostream& err) {
    try {
        if (!(alpha > 1.0 && alpha < 2.5))
            throw ValidationError("alpha outside regions range (1, 5/2)");
        auto j = regions_json(alpha);
        if (out_path.empty())
            out << j.dump() << '\n';
        else
            write_atomic(out_path, j.dump(2) + "\n");
        if (!csv_path.empty()) write_atomic(csv_path, regions_csv(alpha));
        return ok;
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

inline int cmd_check(const std::string& suite, std::ostream& out, std::ostream& err) {
    std::vector<checks::CheckResult> results;
    try {
        results = checks::run_suite(suite);
    } catch (const Error& e) {
        return report_error(e, err);
    }
    std::vector<std::string> failed;
    for (const auto& r : results) {
        char line[256];
        std::snprintf(line, sizeof line, "%s  %-72s measured %.3e  threshold %.1e\n", r.pass ? "PASS" : "FAIL",
                      r.name.c_str(), r.measured, r.threshold);
        out << line;
        if (!r.pass) failed.push_back(r.name);
    }
    if (failed.empty()) {
        out << "all " << results.size() << " invariants pass\n";
        return ok;
    }
    out << failed.size() << " of " << results.size() << " invariants failed:\n";
    for (const auto& f : failed) out << "  " << f << '\n';
    return check_failed;
}

struct ConvergeReport {
    std::vector<int> nodes;
    std::vector<double> diffs;   // max |u_{l+1} - u_l| over the grid
    std::vector<double> orders;  // +inf when the finer difference is at the rounding floor
    double floor = 0.0;
    bool converged = false;
};

inline ConvergeReport converge(const RunConfig& rc, int levels, int base_nodes) {
    if (levels < 3) throw ValidationError("converge needs --levels >= 3");
    if (base_nodes < 30) throw ValidationError("converge base nodes_per_ray must be >= 30");
    ConvergeReport rep;
    std::vector<std::vector<cplx>> sols;
    double umax = 0.0;
    for (int l = 0; l < levels; ++l) {
        ProblemSpec s = rc.spec;
        s.contour.nodes_per_ray = base_nodes << l;
        rep.nodes.push_back(s.contour.nodes_per_ray);
        log("converge level " + std::to_string(l) + " nodes_per_ray " + std::to_string(s.contour.nodes_per_ray));
        auto field = solve(s);
        auto res = sample_field(rc, field);
        std::vector<cplx> u;
        for (const auto& r : res.rows) {
            u.emplace_back(r.re_q, r.im_q);
            umax = std::max(umax, std::abs(u.back()));
        }
        sols.push_back(std::move(u));
    }
    rep.floor = 1e-12 * (1.0 + umax);
    for (int l = 0; l + 1 < levels; ++l) {
        double d = 0.0;
        for (std::size_t i = 0; i < sols[l].size(); ++i) d = std::max(d, std::abs(sols[l + 1][i] - sols[l][i]));
        rep.diffs.push_back(d);
    }
    rep.converged = true;
    for (std::size_t l = 0; l + 1 < rep.diffs.size(); ++l) {
        double a = rep.diffs[l], b = rep.diffs[l + 1];
        double p;
        if (b <= rep.floor)
            p = std::numeric_limits<double>::infinity();
        else if (a <= rep.floor)
            p = 0.0;  // stagnated above the floor after reaching it
        else
            p = std::log2(a / b);
        rep.orders.push_back(p);
        if (!(p >= 1.0)) rep.converged = false;
    }
    return rep;
}

inline int cmd_converge(const std::string& path, int levels, int base_nodes, std::ostream& out,
                        std::ostream& err) {
    try {
        RunConfig rc = load_config(path);
        auto rep = converge(rc, levels, base_nodes > 0 ? base_nodes : rc.spec.contour.nodes_per_ray);
        ordered_json j;
        j["nodes_per_ray"] = rep.nodes;
        j["differences"] = rep.diffs;
        j["floor"] = rep.floor;
        j["orders"] = ordered_json::array();
        for (double p : rep.orders) j["orders"].push_back(std::isinf(p) ? ordered_json("max") : ordered_json(p));
        j["converged"] = rep.converged;
        out << j.dump() << '\n';
        if (!rep.converged) {
            err << ordered_json{{"error", "tolerance"}, {"message", "observed order below 1"}}.dump() << '\n';
            return tolerance;
        }
        return ok;
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

}  // namespace fracutm::cli
