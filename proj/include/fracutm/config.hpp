#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "fracutm/error.hpp"
#include "fracutm/function.hpp"
#include "fracutm/utm.hpp"

namespace fracutm {

struct GridAxis {
    double lo = 0.0, hi = 0.0;
    int n = 1;

    std::vector<double> values() const {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
        if (n > 1) v.back() = hi;
        return v;
    }
};

struct RunConfig {
    ProblemSpec spec;
    GridAxis x, t;
    double tol_rel = 1e-6;  // per-point tolerance on err_est
    double tol_abs = 1e-9;
    std::string field_path = "field.csv";
    std::string report_path = "report.json";
    bool gr_diagnostic = true;
    bool pde_diagnostic = true;
};

struct FieldRecord {
    double x, t, re_q, im_q, err_est;
};

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError("missing key " + where + key);
    return j.at(key);
}

inline double number(const nlohmann::json& j, const char* key, const std::string& where) {
    const auto& v = require(j, key, where);
    if (!v.is_number()) throw ValidationError(where + key + " must be a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ValidationError(where + key + " must be finite");
    return d;
}

inline double number_or(const nlohmann::json& j, const char* key, double def, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) return def;
    return number(j, key, where);
}

inline GridAxis axis(const nlohmann::json& g, const char* key) {
    const auto& a = require(g, key, "grid.");
    std::string w = std::string("grid.") + key;
    if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
        !a[2].is_number_integer())
        throw ValidationError(w + " must be [lo, hi, count]");
    GridAxis ax{a[0].get<double>(), a[1].get<double>(), a[2].get<int>()};
    if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi)) throw ValidationError(w + " must be finite");
    if (ax.n < 1) throw ValidationError(w + " count must be >= 1");
    if (ax.hi < ax.lo) throw ValidationError(w + " needs lo <= hi");
    return ax;
}

inline FunctionHandle q0_family(const nlohmann::json& j) {
    const auto& fam = require(j, "family", "q0.");
    if (!fam.is_string()) throw ValidationError("q0.family must be a string");
    std::string f = fam.get<std::string>();
    double amp = number_or(j, "amplitude", 1.0, "q0.");
    if (f == "zero") return FunctionHandle::zero();
    double lam = number(j, "lambda", "q0.");
    if (!(lam > 0.0)) throw ValidationError("q0.lambda must be positive");
    if (f == "exp_decay") return FunctionHandle::exp_decay(lam, amp);
    if (f == "gaussian_x") return FunctionHandle::gaussian_x(lam, amp);
    if (f == "poly_exp") {
        double p = number(j, "p", "q0.");
        if (!(p >= 0.0)) throw ValidationError("q0.p must be nonnegative");
        return FunctionHandle::poly_exp(p, lam, amp);
    }
    throw ValidationError("q0.family must be one of zero, exp_decay, poly_exp, gaussian_x");
}

inline FunctionHandle h_family(const nlohmann::json& j, double T) {
    const auto& fam = require(j, "family", "bc.h.");
    if (!fam.is_string()) throw ValidationError("bc.h.family must be a string");
    std::string f = fam.get<std::string>();
    if (f == "zero") return FunctionHandle::zero();
    if (f == "constant") return FunctionHandle::constant(number(j, "value", "bc.h."), T);
    if (f == "exp_decay") {
        double lam = number(j, "lambda", "bc.h.");
        if (!(lam > 0.0)) throw ValidationError("bc.h.lambda must be positive");
        return FunctionHandle::exp_decay(lam, number_or(j, "amplitude", 1.0, "bc.h."));
    }
    throw ValidationError("bc.h.family must be one of zero, constant, exp_decay");
}

}  // namespace detail

// Parses and validates; throws ValidationError with a human-readable reason.
inline RunConfig parse_config(const nlohmann::json& j) {
    using namespace detail;
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    RunConfig rc;
    auto& s = rc.spec;
    s.alpha = number(j, "alpha", "");
    s.A = number(j, "A", "");
    s.T = number(j, "T", "");
    if (!(s.T > 0.0)) throw ValidationError("T must be positive and finite");
    if (!(s.A > 0.0)) throw ValidationError("A must be positive and finite");
    if (!(s.alpha > kSolveAlphaLo && s.alpha < kSolveAlphaHi))
        throw ValidationError("alpha outside solve range (3/2, 7/3)");

    s.q0 = q0_family(require(j, "q0", ""));
    const auto& bc = require(j, "bc", "");
    const auto& kind = require(bc, "kind", "bc.");
    if (!kind.is_string()) throw ValidationError("bc.kind must be a string");
    if (kind == "frac_dirichlet")
        s.bc = BcKind::frac_dirichlet;
    else if (kind == "frac_neumann")
        s.bc = BcKind::frac_neumann;
    else
        throw ValidationError("bc.kind must be frac_dirichlet or frac_neumann");
    s.h = h_family(require(bc, "h", "bc."), s.T);

    const auto& g = require(j, "grid", "");
    rc.x = axis(g, "x");
    rc.t = axis(g, "t");
    if (!(rc.x.lo > 0.0)) throw ValidationError("grid.x must lie in x > 0");
    if (!(rc.t.lo > 0.0 && rc.t.hi <= s.T)) throw ValidationError("grid.t must lie in (0, T]");

    nlohmann::json q = j.contains("quadrature") ? j.at("quadrature") : nlohmann::json::object();
    if (!q.is_object()) throw ValidationError("quadrature must be an object");
    rc.tol_rel = number_or(q, "eps_rel", rc.tol_rel, "quadrature.");
    rc.tol_abs = number_or(q, "eps_abs", rc.tol_abs, "quadrature.");
    if (!(rc.tol_rel > 0.0 && rc.tol_rel <= 1e-2))
        throw ValidationError("quadrature.eps_rel must lie in (0, 1e-2]");
    if (!(rc.tol_abs > 0.0)) throw ValidationError("quadrature.eps_abs must be positive");
    s.contour.r_max = number_or(q, "r_max", 0.0, "quadrature.");
    s.quadrature.k_max = number_or(q, "k_max", 80.0, "quadrature.");
    s.contour.eps_rot = number_or(q, "eps_rot", 0.05, "quadrature.");
    double nodes = number_or(q, "nodes_per_ray", 1200, "quadrature.");
    if (nodes != std::floor(nodes) || nodes > 1e7)
        throw ValidationError("quadrature.nodes_per_ray must be an integer");
    s.contour.nodes_per_ray = static_cast<int>(nodes);

    const auto& out = require(j, "output", "");
    const auto& fp = require(out, "field_path", "output.");
    const auto& rp = require(out, "report_path", "output.");
    if (!fp.is_string() || !rp.is_string()) throw ValidationError("output paths must be strings");
    rc.field_path = fp.get<std::string>();
    rc.report_path = rp.get<std::string>();

    if (j.contains("diagnostics")) {
        const auto& d = j.at("diagnostics");
        if (!d.is_object()) throw ValidationError("diagnostics must be an object");
        rc.gr_diagnostic = d.value("gr", true);
        rc.pde_diagnostic = d.value("pde", true);
    }

    s.window = {rc.x.lo, rc.x.hi, rc.t.lo, rc.t.hi};
    s.validate();
    return rc;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

// Shortest representation that round-trips to the same binary64.
inline std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string field_csv(const std::vector<FieldRecord>& rows) {
    std::string s = "x,t,re_q,im_q,err_est\n";
    for (const auto& r : rows) {
        s += format_double(r.x) + ',' + format_double(r.t) + ',' + format_double(r.re_q) + ',' +
             format_double(r.im_q) + ',' + format_double(r.err_est) + '\n';
    }
    return s;
}

// Write to a sibling temp file, then rename over the target.
inline void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("io", "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error("io", "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw Error("io", "rename to " + target.string() + " failed: " + ec.message());
}

}  // namespace fracutm
