#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fracutm/fraccalc.hpp"
#include "fracutm/function.hpp"
#include "fracutm/symbolgeo.hpp"
#include "fracutm/transforms.hpp"
#include "fracutm/utm.hpp"

namespace fracutm::checks {

struct CheckResult {
    std::string name;
    double measured;
    double threshold;
    bool pass;
};

inline CheckResult at_most(std::string name, double measured, double threshold) {
    return {std::move(name), measured, threshold, measured <= threshold};
}

// ---- fraccalc --------------------------------------------------------------

inline double power_rule_error() {
    double worst = 0.0;
    for (int n = 0; n <= 2; ++n)
        for (double a : {0.3, 0.5, 1.5, 2.2})
            for (double x : {0.25, 0.5, 1.0, 1.5, 2.0}) {
                auto f = [n](double s) { return cplx(std::pow(s, n)); };
                double exact = std::tgamma(n + 1.0) * reciprocal_gamma(n - a + 1.0) * std::pow(x, n - a);
                worst = std::max(worst, std::abs(rl_derivative(f, a, x) - exact));
            }
    return worst;
}

inline double rl_gl_disagreement() {
    double worst = 0.0;
    for (int n = 0; n <= 2; ++n)
        for (double a : {0.3, 0.5, 1.5, 2.2})
            for (double x : {0.25, 0.5, 1.0, 1.5, 2.0}) {
                auto f = [n](double s) { return cplx(std::pow(s, n)); };
                worst = std::max(worst, std::abs(rl_derivative(f, a, x) - gl_derivative(f, a, x, 0.0, 16384)));
            }
    return worst;
}

inline double semigroup_defect(std::size_t nodes = 512) {
    double worst = 0.0;
    std::vector<std::function<cplx(double)>> fs{[](double s) { return cplx(std::exp(-s)); },
                                                [](double s) { return cplx(s * std::exp(-s)); }};
    for (const auto& f : fs)
        for (double a : {0.25, 0.5, 1.0})
            for (double b : {0.25, 0.5, 1.0})
                for (double x : {0.5, 1.0, 2.0}) {
                    // inner integral behaves like s^b at 0, so sample it on a quadratically graded grid
                    std::vector<double> grid(nodes + 1);
                    std::vector<cplx> vals(nodes + 1);
                    for (std::size_t j = 0; j <= nodes; ++j) {
                        double u = double(j) / nodes;
                        grid[j] = x * u * u;
                        vals[j] = j ? rl_integral(f, b, grid[j], 0.0, nodes) : cplx(0.0);
                    }
                    cplx lhs = rl_integral(SampledFunction(grid, vals), a, x);
                    cplx rhs = rl_integral(f, a + b, x, 0.0, nodes);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
    return worst;
}

inline double composition_defect() {
    double worst = 0.0;
    auto f = [](double s) { return cplx(std::exp(-s) + 1.0); };
    auto fp = [](double s) { return cplx(-std::exp(-s)); };
    for (double a : {0.5, 1.5})
        for (double x : {0.5, 1.0, 2.0}) {
            cplx d = rl_derivative(fp, a, x) - rl_derivative(f, a + 1.0, x) +
                     std::pow(x, -a - 1.0) * reciprocal_gamma(-a) * f(0.0);
            worst = std::max(worst, std::abs(d));
        }
    return worst;
}

// Residual of the fractional integration-by-parts identity on [0, 3].
inline double integration_by_parts_residual(double a, std::size_t nodes = 1024) {
    auto f = [](double x) { return cplx(std::exp(-x)); };
    auto g = [](double x) { return cplx(x * std::exp(-x)); };
    const double b = 3.0;
    const int n = Order{a}.n();
    std::vector<double> br{0.0, 1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    auto lhs = integrate_adaptive([&](double x) { return f(x) * rl_derivative(g, a, x, 0.0, nodes); },
                                  br, 1e-9, 1e-11, 300);
    auto rhs = integrate_adaptive(
        [&](double x) { return g(x) * right_caputo_derivative(f, a, x, b, nodes); }, br, 1e-9, 1e-11, 300);
    cplx boundary = 0.0;
    for (int j = 0; j < n; ++j) {
        double order = a - n + j;
        int m = n - j - 1;
        double sign = (n + j) % 2 ? -1.0 : 1.0;
        // classical m-th derivative of e^{-x}
        auto term = [&](double x, bool at_a) {
            cplx dg = at_a && order < 0.0 ? cplx(0.0) : rl_differintegral(g, order, x, 0.0, nodes);
            return sign * dg * ((m % 2 ? -1.0 : 1.0) * std::exp(-x));
        };
        boundary += term(b, false) - term(1e-9, true);
    }
    return std::abs(lhs.value - (rhs.value - boundary));
}

inline double exponential_rule_error() {
    auto f = [](double s) { return cplx(std::exp(s)); };
    return std::abs(rl_derivative(f, 0.5, 0.0, -40.0) - 1.0);
}

inline double gamma_recurrence_error() {
    double worst = std::abs(gamma_real(1.5) - 0.8862269254527580) / 0.8862269254527580;
    for (double x = -19.95; x < 49.0; x += 0.37) {
        if (is_gamma_pole(x) || is_gamma_pole(x + 1.0)) continue;
        double lhs = gamma_real(x + 1.0), rhs = x * gamma_real(x);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
    return worst;
}

inline std::vector<CheckResult> fraccalc_suite() {
    return {at_most("gamma: recurrence and reference value, relative", gamma_recurrence_error(), 1e-12),
            at_most("power rule max error", power_rule_error(), 1e-4),
            at_most("semigroup defect", semigroup_defect(), 1e-4),
            at_most("composition defect (n=1)", composition_defect(), 1e-3),
            at_most("integration by parts residual, alpha=0.5", integration_by_parts_residual(0.5), 1e-3),
            at_most("integration by parts residual, alpha=1.5", integration_by_parts_residual(1.5), 1e-3),
            at_most("RL vs Grunwald-Letnikov", rl_gl_disagreement(), 1e-3),
            at_most("exponential rule at x=0, lower limit -40", exponential_rule_error(), 1e-3)};
}

// ---- geometry --------------------------------------------------------------

inline double branch_consistency_error(int samples = 2000) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(0.01, 2.99), ur(-3.0, 3.0), u01(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double a = ua(rng);
        double lim = std::min(kPi, kPi / a) * 0.999;
        double th = lim * u01(rng);
        double r = std::pow(10.0, ur(rng));
        cplx k = std::polar(r, th);
        cplx p = principal_power(k, a);
        double arg_err = std::abs(std::arg(p) - a * std::arg(k));
        double mod_err = std::abs(std::abs(p) - std::pow(std::abs(k), a)) / std::pow(std::abs(k), a);
        worst = std::max({worst, arg_err, mod_err});
    }
    return worst;
}

inline int region_disagreements(double alpha, int samples = 10000, std::uint64_t seed = 5) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.1, 10.0), ut(0.0, kPi);
    auto w = FractionalSymbol::monomial(1.0, alpha);
    auto sec = dplus_sectors(alpha);
    int bad = 0;
    for (int i = 0; i < samples; ++i) {
        double th = ut(rng);
        if (th <= 0.0) continue;
        cplx k = std::polar(ur(rng), th);
        if (dplus_indicator(w, k) != sec.contains(k)) ++bad;
    }
    return bad;
}

inline int region_hits(double alpha, int samples = 10000, std::uint64_t seed = 6) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.1, 10.0), ut(0.0, kPi);
    auto w = FractionalSymbol::monomial(1.0, alpha);
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
        double th = ut(rng);
        if (th <= 0.0) continue;
        if (dplus_indicator(w, std::polar(ur(rng), th))) ++hits;
    }
    return hits;
}

// Sampled where arg(ik) and arg(i nu k) both stay on the principal branch.
inline double nu_preservation_error(double alpha, int samples = 100, std::uint64_t seed = 9) {
    auto nus = nu_candidates(alpha);
    if (nus.empty()) return std::numeric_limits<double>::infinity();
    const auto& nu = nus.front();
    auto w = FractionalSymbol::monomial(1.0, alpha);
    std::mt19937_64 rng(seed);
    double rot = 2.0 * kPi / alpha;
    std::uniform_real_distribution<double> ua(-kPi + rot + 1e-6, kPi - 1e-6), ur(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double arg_ik = ua(rng);
        cplx k = std::polar(std::pow(10.0, ur(rng)), arg_ik - 0.5 * kPi);
        cplx wk = w(k), wn = w(nu(k));
        worst = std::max(worst, std::abs(wn - wk) / (1.0 + std::abs(wk)));
    }
    return worst;
}

// Per-ray rotation on the nodes of the deformed contour.
inline double per_ray_nu_preservation_error(double alpha) {
    auto c = gamma_contour(alpha, 50.0, 0.05, 300);
    auto w = FractionalSymbol::monomial(1.0, alpha);
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        cplx k = c.nodes[i];
        cplx nk = branch_consistent_nu(alpha, c.ray_of[i]) * k;
        if (!(nk.imag() < 0.0)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::abs(w(nk) - w(k)) / (1.0 + std::abs(w(k))));
    }
    return worst;
}

inline int nu_window_mismatches() {
    int bad = 0;
    for (int i = 1; i <= 50; ++i) {
        double a = 1.4 + 1.1 * i / 51.0;
        auto [r1, r2] = nu_rotated_angles(a);
        bool geometric = r1 > -kPi && r1 < 0.0 && r2 > -kPi && r2 < 0.0;
        bool window = a > 1.4 && a < 7.0 / 3.0;
        bool got = !nu_candidates(a).empty();
        if (got != geometric || got != window) ++bad;
    }
    return bad;
}

inline int admissibility_mismatches() {
    const double as[] = {0.5, 1.0, 1.2, 2.0, 3.0, 3.5, 5.5};
    const bool expect[] = {false, true, true, true, true, false, true};
    int bad = 0;
    for (int i = 0; i < 7; ++i)
        if (monomial_admissible(as[i]) != expect[i]) ++bad;
    return bad;
}

inline std::vector<CheckResult> geometry_suite() {
    std::vector<CheckResult> out;
    out.push_back(at_most("branch consistency of principal_power", branch_consistency_error(), 1e-12));
    for (double a : {1.6, 2.0, 2.2, 2.4})
        out.push_back(at_most("region agreement, alpha=" + std::to_string(a).substr(0, 3) + " (disagreements)",
                              region_disagreements(a), 0));
    for (double a : {1.1, 1.3, 1.5})
        out.push_back(at_most("D+ empty, alpha=" + std::to_string(a).substr(0, 3) + " (indicator hits)",
                              region_hits(a), 0));
    out.push_back(at_most("admissibility table mismatches", admissibility_mismatches(), 0));
    for (double a : {2.0, 2.2}) {
        std::string s = std::to_string(a).substr(0, 3);
        out.push_back(at_most("nu preserves w, alpha=" + s, nu_preservation_error(a), 1e-12));
        out.push_back(at_most("per-ray nu preserves w on Gamma, alpha=" + s, per_ray_nu_preservation_error(a), 1e-12));
    }
    out.push_back(at_most("nu window (7/5, 7/3) mismatches on 50 alphas", nu_window_mismatches(), 0));
    return out;
}

// ---- transforms ------------------------------------------------------------

inline double closed_form_vs_quadrature() {
    std::vector<FunctionHandle> fs{FunctionHandle::exp_decay(1.0), FunctionHandle::poly_exp(1.5, 2.0),
                                   FunctionHandle::gaussian_x(1.0), FunctionHandle::poly_exp(2.0, 1.0)};
    const cplx ks[] = {{0.0, 0.0}, {1.0, -0.5}, {-3.0, -2.0}, {7.0, 0.0}, {0.4, -0.1}};
    double worst = 0.0;
    for (const auto& f : fs)
        for (cplx k : ks) {
            cplx a = half_fourier(f, k), b = half_fourier(f, k, {}, true);
            worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::abs(a)));
        }
    return worst;
}

inline double continuation_error() {
    auto f = FunctionHandle::exp_decay(1.0);
    const cplx I(0.0, 1.0);
    double worst = 0.0;
    for (cplx k : {cplx(0.0, 0.3), cplx(1.0, 0.6), cplx(-2.0, 0.8), cplx(0.5, 0.9)})
        worst = std::max(worst, std::abs(half_fourier(f, k, {}, true) - 1.0 / (1.0 + I * k)));
    return worst;
}

inline double time_transform_error() {
    auto c = FunctionHandle::constant(1.5, 2.0);
    auto e = FunctionHandle::exp_decay(0.7, 2.0);
    FunctionHandle cq([](double) { return cplx(1.5); }, 1.0, 1.5 * std::exp(2.0), 2.0);
    FunctionHandle eq([](double s) { return cplx(2.0 * std::exp(-0.7 * s)); }, 0.7, 2.0);
    double worst = std::abs(time_transform(c, -1.0, 1.0) - 1.5 * (1.0 - std::exp(-1.0)));
    for (cplx wk : {cplx(0.0), cplx(-1.0), cplx(0.5, 3.0), cplx(-2.0, -7.0)})
        for (double t : {0.3, 1.0, 2.0}) {
            worst = std::max(worst, std::abs(time_transform(c, wk, t) - time_transform(cq, wk, t)));
            worst = std::max(worst, std::abs(time_transform(e, wk, t) - time_transform(eq, wk, t)));
            worst = std::max(worst, std::abs(damped_time_transform(e, wk, t) -
                                             std::exp(-wk * t) * time_transform(eq, wk, t)));
        }
    return worst;
}

inline double linearity_error() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.5, 2.0), uk(-3.0, 3.0), ui(-2.0, 0.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        auto f = FunctionHandle::gaussian_x(u(rng));
        auto g = FunctionHandle::exp_decay(u(rng), u(rng));
        cplx k(uk(rng), ui(rng));
        cplx s = half_fourier(f + g, k, {}, true), parts = half_fourier(f, k) + half_fourier(g, k);
        worst = std::max(worst, std::abs(s - parts) / std::abs(parts));
        cplx wk(uk(rng), uk(rng));
        double t = u(rng);
        auto hc = FunctionHandle::constant(u(rng), 3.0);
        cplx ts = time_transform(hc + g, wk, t), tp = time_transform(hc, wk, t) + time_transform(g, wk, t);
        worst = std::max(worst, std::abs(ts - tp) / std::abs(tp));
    }
    return worst;
}

inline Contour gaussian_check_contour(int nodes) {
    auto [t1, t2] = gamma_ray_angles(2.0);
    const double eps = 0.2, R = 11.0;
    int panels = std::max(1, nodes / 15);
    auto br = uniform_breaks(0.0, R, R / panels);
    return make_ray_contour({{t1 + eps, 0.0, R, -1}, {t2 - eps, 0.0, R, +1}}, {br, br});
}

inline double cauchy_gaussian_error(int nodes = 600) {
    auto c = gaussian_check_contour(nodes);
    auto r = contour_integral([](cplx k) { return std::exp(-k * k); }, c);
    return std::abs(r.value - std::sqrt(kPi));
}

inline double inverse_square_error() {
    auto [t1, t2] = gamma_ray_angles(2.2);
    auto br = uniform_breaks(0.5, 5.0, 0.5);
    auto c = make_ray_contour({{t1, 0.5, 5.0, -1}, {t2, 0.5, 5.0, +1}}, {br, br});
    auto r = contour_integral([](cplx k) { return 1.0 / (k * k); }, c);
    auto F = [](cplx k) { return -1.0 / k; };
    cplx exact = (F(std::polar(0.5, t1)) - F(std::polar(5.0, t1))) +
                 (F(std::polar(5.0, t2)) - F(std::polar(0.5, t2)));
    return std::abs(r.value - exact);
}

inline double boundary_nu_invariance_error() {
    const double a = 2.2;
    BoundaryTransforms bt(FractionalSymbol::monomial(1.0, a));
    bt.set(a - 2.0, FunctionHandle::exp_decay(1.3, 0.5));
    auto c = gamma_contour(a, 8.0, 0.05, 150);
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        cplx k = c.nodes[i];
        cplx nk = branch_consistent_nu(a, c.ray_of[i]) * k;
        cplx f1 = bt.F(a - 2.0, k, 0.25), f2 = bt.F(a - 2.0, nk, 0.25);
        worst = std::max(worst, std::abs(f1 - f2) / (1.0 + std::abs(f1)));
    }
    return worst;
}

inline std::vector<CheckResult> transforms_suite() {
    auto f = FunctionHandle::poly_exp(2.0, 1.0);
    return {at_most("half_fourier closed form vs quadrature, relative", closed_form_vs_quadrature(), 1e-10),
            at_most("half_fourier continuation into 0 < Im k < delta", continuation_error(), 1e-8),
            at_most("time_transform fast paths vs quadrature", time_transform_error(), 1e-10),
            at_most("linearity of half_fourier and time_transform", linearity_error(), 1e-10),
            at_most("transform identity residual, alpha=1, k=-i",
                    fractional_transform_identity_residual(f, 1.0, {0.0, -1.0}), 1e-6),
            at_most("transform identity residual, alpha=0.5, k=-0.5-0.5i",
                    fractional_transform_identity_residual(f, 0.5, {-0.5, -0.5}), 1e-3),
            at_most("transform identity residual, alpha=2.2, k=-i",
                    fractional_transform_identity_residual(f, 2.2, {0.0, -1.0}), 1e-3),
            at_most("Cauchy deformation of exp(-k^2) onto Gamma", cauchy_gaussian_error(), 1e-8),
            at_most("1/k^2 on truncated V against antiderivative", inverse_square_error(), 1e-10),
            at_most("boundary transform nu invariance", boundary_nu_invariance_error(), 1e-12)};
}

// ---- utm -------------------------------------------------------------------

inline ProblemSpec heat_spec(double alpha = 2.0) {
    ProblemSpec s;
    s.alpha = alpha;
    s.A = 1.0;
    s.T = 0.5;
    s.q0 = FunctionHandle::gaussian_x(1.0);
    s.window = {0.25, 2.0, 0.1, 0.5};
    return s;
}

inline double heat_oracle_error() {
    auto f = solve(heat_spec());
    double worst = 0.0;
    for (double t : {0.1, 0.25, 0.5})
        for (double x : {0.25, 0.5, 1.0, 2.0})
            worst = std::max(worst, std::abs(f(x, t) - heat_oracle(1.0, 1.0, x, t)));
    return worst;
}

inline double zero_solution_max() {
    ProblemSpec s = heat_spec(2.2);
    s.q0 = FunctionHandle::zero();
    auto f = solve(s);
    double worst = 0.0;
    for (double t : {0.1, 0.3, 0.5})
        for (double x : {0.25, 1.0, 2.0}) worst = std::max(worst, std::abs(f(x, t)));
    return worst;
}

inline double boundary_recovery() {
    ProblemSpec s = heat_spec();
    s.window = {0.0, 1.0, 0.05, 0.5};
    auto f = solve(s);
    return std::max(std::abs(f(1e-2, 0.25)), std::abs(f(5e-3, 0.1)));
}

inline double initial_recovery(double alpha) {
    ProblemSpec s = heat_spec(alpha);
    s.window = {0.5, 2.0, 1e-3, 1e-3};
    auto f = solve(s);
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(f(x, 1e-3) - s.q0(x)));
    return worst;
}

inline ProblemSpec gr_spec(double alpha) {
    ProblemSpec s = heat_spec(alpha);
    s.window = {0.0, 40.0, 1e-6, 0.5};
    return s;
}

inline double gr_max(double alpha) {
    auto s = gr_spec(alpha);
    auto f = solve(s);
    return global_relation_report(s, f.as_function(), sample_gr_ks(), {s.T / 4, s.T / 2}).max_rel;
}

inline double pde_rel(double alpha) {
    ProblemSpec s = heat_spec(alpha);
    s.window = {0.0, 2.0, 0.1, 0.5};
    auto f = solve(s);
    return pde_residual(s, f.as_function(), {0.25, 0.5, 0.75, 1.0, 1.5, 2.0},
                        {s.T / 4, s.T / 2, 3 * s.T / 4})
        .rel;
}

inline double imaginary_part_max(double alpha) {
    auto f = solve(heat_spec(alpha));
    double worst = 0.0;
    for (double t : {0.1, 0.25, 0.5})
        for (double x : {0.25, 0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(f(x, t).imag()));
    return worst;
}

// max |q_a - q_b| / (3 max(err_a, err_b)) over eps_rot pairs; <= 1 means agreement.
inline double deformation_ratio(double alpha) {
    std::vector<SolutionField> fs;
    for (double e : {0.03, 0.05, 0.08}) {
        ProblemSpec s = heat_spec(alpha);
        s.contour.eps_rot = e;
        fs.push_back(solve(s));
    }
    double worst = 0.0;
    for (double t : {0.1, 0.25, 0.5})
        for (double x : {0.25, 0.5, 1.0, 2.0}) {
            std::vector<PointValue> v;
            for (const auto& f : fs) v.push_back(f.evaluate(x, t));
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = i + 1; j < v.size(); ++j) {
                    double tol = 3.0 * std::max(v[i].err, v[j].err);
                    worst = std::max(worst, std::abs(v[i].q - v[j].q) / tol);
                }
        }
    return worst;
}

inline double linearity_defect(double alpha) {
    ProblemSpec sf = heat_spec(alpha), sg = sf, ss = sf;
    sg.q0 = FunctionHandle::exp_decay(2.0, 0.5);
    ss.q0 = sf.q0 + sg.q0;
    auto f = solve(sf), g = solve(sg), s = solve(ss);
    double worst = 0.0;
    for (double t : {0.1, 0.25, 0.5})
        for (double x : {0.25, 1.0, 2.0}) {
            cplx sum = f(x, t) + g(x, t);
            worst = std::max(worst, std::abs(s(x, t) - sum) / (1e-8 + 1e-6 * std::abs(sum)));
        }
    return worst;
}

// max |v(x,t) - u(lam x, lam^alpha t)| relative to the combined error estimates (<= 1 passes).
inline double scaling_ratio(double alpha, double lam) {
    ProblemSpec su = heat_spec(alpha);
    su.T = 1.0;
    su.window = {0.1, 4.0, 0.01, 1.0};
    ProblemSpec sv = su;
    sv.q0 = FunctionHandle::gaussian_x(lam * lam, lam);
    auto u = solve(su), v = solve(sv);
    double worst = 0.0;
    for (double x : {0.5, 1.0, 1.5})
        for (double t : {0.05, 0.1, 0.2}) {
            auto a = v.evaluate(x, t);
            auto b = u.evaluate(lam * x, std::pow(lam, alpha) * t);
            double tol = std::max(3.0 * (a.err + b.err), 1e-12);
            worst = std::max(worst, std::abs(a.q - b.q) / tol);
        }
    return worst;
}

inline std::vector<CheckResult> utm_suite() {
    std::vector<CheckResult> out;
    out.push_back(at_most("zero data gives zero field", zero_solution_max(), 0.0));
    out.push_back(at_most("alpha=2 vs heat oracle, max abs error", heat_oracle_error(), 1e-3));
    out.push_back(at_most("boundary recovery |q(eps,t)|, alpha=2", boundary_recovery(), 5e-3));
    for (double a : {2.0, 2.2})
        out.push_back(at_most("initial recovery at t=1e-3, alpha=" + std::to_string(a).substr(0, 3),
                              initial_recovery(a), 5e-3));
    out.push_back(at_most("imaginary part for real data, alpha=2.2", imaginary_part_max(2.2), 1e-10));
    for (double a : {2.0, 2.2}) {
        std::string s = std::to_string(a).substr(0, 3);
        out.push_back(at_most("linearity in q0 (ratio to tolerance), alpha=" + s, linearity_defect(a), 1.0));
        for (double lam : {0.5, 2.0})
            out.push_back(at_most("scaling covariance (ratio to error estimate), alpha=" + s + ", lambda=" +
                                      std::to_string(lam).substr(0, 3),
                                  scaling_ratio(a, lam), 1.0));
        out.push_back(at_most("eps_rot independence (ratio to 3x error estimate), alpha=" + s,
                              deformation_ratio(a), 1.0));
        out.push_back(at_most("global relation max relative residual, alpha=" + s, gr_max(a), 1e-3));
    }
    out.push_back(at_most("PDE relative residual, alpha=2.0", pde_rel(2.0), 1e-2));
    out.push_back(at_most("PDE relative residual, alpha=2.2", pde_rel(2.2), 5e-2));
    return out;
}

inline std::vector<CheckResult> run_suite(const std::string& name) {
    if (name == "fraccalc") return fraccalc_suite();
    if (name == "geometry") return geometry_suite();
    if (name == "transforms") return transforms_suite();
    if (name == "utm") return utm_suite();
    if (name == "all") {
        std::vector<CheckResult> all;
        for (const char* s : {"fraccalc", "geometry", "transforms", "utm"}) {
            auto r = run_suite(s);
            all.insert(all.end(), r.begin(), r.end());
        }
        return all;
    }
    throw ValidationError("unknown suite " + name + " (fraccalc|geometry|transforms|utm|all)");
}

}  // namespace fracutm::checks
