#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracutm/error.hpp"
#include "fracutm/fraccalc.hpp"
#include "fracutm/function.hpp"
#include "fracutm/parallel.hpp"
#include "fracutm/quadrature.hpp"
#include "fracutm/symbolgeo.hpp"
#include "fracutm/transforms.hpp"

namespace fracutm {

enum class BcKind { frac_dirichlet, frac_neumann };

// per_ray: w-preserving rotation chosen per ray of Gamma; single: e^{-2 pi i/alpha} on both rays.
enum class NuMode { per_ray, single };

inline constexpr double kSolveAlphaLo = 1.5;
inline constexpr double kSolveAlphaHi = 7.0 / 3.0;

struct ContourParams {
    double r_max = 0.0;  // 0 selects the decay-based default
    double eps_rot = 0.05;
    int nodes_per_ray = 1200;
};

// Region of (x, t) the field is expected to be evaluated on; drives node placement and truncation.
struct EvalWindow {
    double x_lo = 0.0;
    double x_hi = 4.0;
    double t_lo = 1e-3;
    double t_hi = 0.0;  // 0 means T
};

struct ProblemSpec {
    double A = 1.0;
    double alpha = 2.0;
    double T = 1.0;
    FunctionHandle q0 = FunctionHandle::zero();
    BcKind bc = BcKind::frac_dirichlet;
    FunctionHandle h = FunctionHandle::zero();
    QuadratureSpec quadrature{};
    ContourParams contour{};
    EvalWindow window{};
    NuMode nu_mode = NuMode::per_ray;

    double prescribed_order() const { return bc == BcKind::frac_dirichlet ? alpha - 2.0 : alpha - 1.0; }
    double unknown_order() const { return bc == BcKind::frac_dirichlet ? alpha - 1.0 : alpha - 2.0; }
    double t_hi() const { return window.t_hi > 0.0 ? window.t_hi : T; }

    // Throws ValidationError on a violated invariant; returns compatibility warnings.
    std::vector<std::string> validate() const {
        auto fail = [](const std::string& m) { throw ValidationError(m); };
        if (!(A > 0.0) || !std::isfinite(A)) fail("A must be positive and finite");
        if (!(T > 0.0) || !std::isfinite(T)) fail("T must be positive and finite");
        if (!std::isfinite(alpha) || !(alpha > kSolveAlphaLo && alpha < kSolveAlphaHi) ||
            !monomial_admissible(alpha))
            fail("alpha outside solve range (3/2, 7/3)");
        try {
            quadrature.validate();
        } catch (const DomainError& e) {
            fail(std::string("quadrature: ") + e.what());
        }
        if (!(contour.r_max >= 0.0) || !std::isfinite(contour.r_max))
            fail("contour: r_max must be >= 0 (0 selects the default)");
        double gap = gamma_ray_angles(alpha).second;
        if (!(contour.eps_rot > 0.0 && contour.eps_rot < 0.5 * gap)) {
            std::ostringstream os;
            os << "contour: eps_rot must lie in (0, " << 0.5 * gap << ") for alpha=" << alpha;
            fail(os.str());
        }
        if (contour.nodes_per_ray < 30) fail("contour: nodes_per_ray must be >= 30");
        if (!(window.x_lo >= 0.0 && window.x_hi >= window.x_lo) || !std::isfinite(window.x_hi))
            fail("window: need 0 <= x_lo <= x_hi");
        if (!(window.t_lo > 0.0 && window.t_lo <= t_hi() && t_hi() <= T * (1.0 + 1e-12)))
            fail("window: need 0 < t_lo <= t_hi <= T");
        std::vector<std::string> warnings;
        double beta = prescribed_order();
        const double x0 = 1e-4;
        cplx d = rl_differintegral(q0, beta, x0, 0.0, 256);
        cplx h0 = h(0.0);
        if (!(std::abs(d - h0) <= 1e-3)) {
            std::ostringstream os;
            os << "compatibility: D^" << beta << " q0(0+) ~ " << std::abs(d) << " differs from h(0) = "
               << std::abs(h0);
            warnings.push_back(os.str());
        }
        return warnings;
    }
};

// g with the unknown boundary transform eliminated through the nu map.
class EliminatedIntegrand {
public:
    explicit EliminatedIntegrand(const ProblemSpec& spec)
        : A_(spec.A), alpha_(spec.alpha), bc_(spec.bc), mode_(spec.nu_mode), q0_(spec.q0),
          h_(spec.h), q_(spec.quadrature), w_(FractionalSymbol::monomial(spec.A, spec.alpha)) {
        if (nu_candidates(alpha_).empty()) {
            std::ostringstream os;
            os << "no valid nu map for alpha=" << alpha_ << " (window (7/5, 7/3))";
            throw DomainError(os.str());
        }
    }

    // Descending ray of Gamma has Re k < 0.
    cplx nu(cplx k) const {
        if (mode_ == NuMode::single) return branch_consistent_nu(alpha_, 1);
        return branch_consistent_nu(alpha_, k.real() < 0.0 ? 0 : 1);
    }
    cplx q0_coeff(cplx k) const { return bc_ == BcKind::frac_dirichlet ? cplx(1.0) : 1.0 / nu(k); }
    cplx f_coeff(cplx k) const {
        const cplx I(0.0, 1.0);
        cplx n = nu(k);
        return bc_ == BcKind::frac_dirichlet ? I * A_ * k * (1.0 - n) : A_ * (1.0 - 1.0 / n);
    }
    cplx q0_hat_rotated(cplx k) const { return half_fourier(q0_, nu(k) * k, q_); }

    cplx operator()(cplx k, double t) const {
        cplx g = q0_coeff(k) * q0_hat_rotated(k);
        if (!h_.is_zero()) g += f_coeff(k) * time_transform(h_, w_(k), t, q_);
        return g;
    }
    // e^{-w(k) t} g_elim, bounded where Re w > 0.
    cplx damped(cplx k, double t) const {
        cplx wk = w_(k);
        cplx g = q0_coeff(k) * q0_hat_rotated(k) * std::exp(-wk * t);
        if (!h_.is_zero()) g += f_coeff(k) * damped_time_transform(h_, wk, t, q_);
        return g;
    }

private:
    double A_, alpha_;
    BcKind bc_;
    NuMode mode_;
    FunctionHandle q0_, h_;
    QuadratureSpec q_;
    FractionalSymbol w_;
};

inline EliminatedIntegrand eliminate_boundary(const ProblemSpec& spec) {
    return EliminatedIntegrand(spec);
}

// A [F_{alpha-1} + ik F_{alpha-2}] with both boundary transforms known.
inline cplx assemble_g(const ProblemSpec& spec, const BoundaryTransforms& bt, cplx k, double t) {
    const cplx I(0.0, 1.0);
    double a = spec.alpha;
    int fl = static_cast<int>(std::floor(a));
    cplx g = 0.0;
    for (int j = 0; j < fl; ++j) g += std::pow(I * k, double(j)) * bt.F(a - j - 1.0, k, t);
    return spec.A * g;
}

struct PointValue {
    cplx q;
    double err;
};

class SolutionField {
public:
    struct Branch {
        double angle = 0.0;
        double sin_phi = 0.0;   // decay of e^{ikx} per unit r and x
        double decay_c = 0.0;   // decay of e^{A(ik)^alpha t} per unit r^alpha, t and A
        double R = 0.0;
        int panels = 0;
        std::vector<cplx> k, w, wlo;
        std::vector<int> panel;
        std::vector<cplx> p;   // A (ik)^alpha = -w(k)
        std::vector<cplx> a0;  // multiplies e^{ikx + p t}
        std::vector<cplx> aF;  // multiplies e^{ikx} G(k, t)
    };

    struct Stats {
        std::size_t nodes_real = 0;
        std::size_t nodes_contour = 0;
        double k_max = 0.0;
        double r_max = 0.0;
    };

    PointValue evaluate(double x, double t) const {
        const auto& s = *impl_;
        if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("SolutionField: need x >= 0");
        if (!(t > 0.0) || t > s.spec.T * (1.0 + 1e-12))
            throw DomainError("SolutionField: need 0 < t <= T");
        const cplx I(0.0, 1.0);
        const bool has_h = !s.spec.h.is_zero();
        cplx total = 0.0;
        double err = 0.0, tail = 0.0, mass = 0.0;
        std::vector<cplx> hi, lo;
        for (const auto& b : s.branches) {
            hi.assign(b.panels, 0.0);
            lo.assign(b.panels, 0.0);
            cplx last0 = 0.0, lastF = 0.0;
            for (std::size_t i = 0; i < b.k.size(); ++i) {
                cplx ikx = I * b.k[i] * x;
                cplx v = std::exp(ikx + b.p[i] * t) * b.a0[i];
                last0 = v;
                if (has_h && b.aF[i] != cplx(0.0)) {
                    lastF = std::exp(ikx) * b.aF[i] *
                            damped_time_transform(s.spec.h, -b.p[i], t, s.spec.quadrature);
                    v += lastF;
                }
                hi[b.panel[i]] += b.w[i] * v;
                lo[b.panel[i]] += b.wlo[i] * v;
                mass += std::abs(b.w[i] * v);
            }
            for (int p = 0; p < b.panels; ++p) {
                total += hi[p];
                err += std::abs(hi[p] - lo[p]);
            }
            // beyond R each part decays at least like e^{-rate (r - R)}
            auto tail_of = [&](cplx last, double rate) {
                return rate > 0.0 ? std::abs(last) / rate : std::abs(last) * b.R;
            };
            tail += tail_of(last0, b.sin_phi * x + b.decay_c * s.spec.alpha * s.spec.A *
                                                       std::pow(b.R, s.spec.alpha - 1.0) * t);
            tail += tail_of(lastF, b.sin_phi * x);
        }
        const double inv = 1.0 / (2.0 * kPi);
        double e = (err + tail + 64.0 * std::numeric_limits<double>::epsilon() * mass) * inv;
        return {total * inv, e};
    }

    cplx operator()(double x, double t) const { return evaluate(x, t).q; }

    std::vector<PointValue> evaluate_points(const std::vector<std::pair<double, double>>& pts) const {
        std::vector<PointValue> out(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) { out[i] = evaluate(pts[i].first, pts[i].second); });
        return out;
    }

    const ProblemSpec& spec() const { return impl_->spec; }
    const std::vector<std::string>& warnings() const { return impl_->warnings; }
    const std::vector<Branch>& branches() const { return impl_->branches; }
    Stats stats() const {
        Stats st;
        for (std::size_t i = 0; i < impl_->branches.size(); ++i)
            (i < 2 ? st.nodes_real : st.nodes_contour) += impl_->branches[i].k.size();
        st.k_max = impl_->branches[0].R;
        st.r_max = impl_->branches[2].R;
        return st;
    }

    std::function<cplx(double, double)> as_function() const {
        auto self = *this;
        return [self](double x, double t) { return self(x, t); };
    }

private:
    struct Impl {
        ProblemSpec spec;
        std::vector<std::string> warnings;
        std::vector<Branch> branches;  // real +, real -, Gamma left, Gamma right
    };
    explicit SolutionField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    friend SolutionField solve(const ProblemSpec& spec);

    std::shared_ptr<const Impl> impl_;
};

namespace detail {

// -Re of e^{i alpha arg(ik)} for k on the ray of angle phi.
inline double ray_decay_c(double phi, double alpha) {
    double a = phi + 0.5 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return -std::cos(alpha * a);
}

// Radius where r s x + c A r^alpha t reaches `level`, capped at `cap`.
inline double decay_radius(double s, double c, double A, double alpha, double x, double t,
                           double level, double cap) {
    auto g = [&](double r) { return r * s * x + c * A * std::pow(r, alpha) * t; };
    if (g(cap) < level) return cap;
    double lo = 0.0, hi = cap;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (g(mid) < level ? lo : hi) = mid;
    }
    return hi;
}

inline std::vector<double> window_breaks(const ProblemSpec& spec, double phi, double R) {
    const double L = 40.0;
    double s = std::max(0.0, std::sin(phi));
    if (phi == 0.0 || phi == kPi) s = 0.0;
    double c = std::max(0.0, ray_decay_c(phi, spec.alpha));
    const auto& w = spec.window;
    double t_lo = w.t_lo, t_hi = spec.t_hi();
    double A = spec.A, a = spec.alpha;
    const bool forced = !spec.h.is_zero();
    auto rho = [=](double r) {
        double base = 1.0;
        double ex = r * s * w.x_lo, et = c * A * std::pow(r, a) * t_lo;
        if (!forced && ex + et > L) return base;
        double xe = s > 0.0 && r > 0.0 ? std::min(w.x_hi, L / (r * s)) : w.x_hi;
        double te = c > 0.0 && r > 0.0 ? std::min(t_hi, L / (c * A * std::pow(r, a))) : t_hi;
        double v = base;
        if (ex <= L) v += xe;
        if (et <= L) v += a * A * te * std::pow(r, a - 1.0);
        return v;
    };
    int total = std::max(2, spec.contour.nodes_per_ray / 15);
    int graded = default_graded_panels(total);
    return radial_breaks(R, total - graded, graded, rho);
}

}  // namespace detail

inline SolutionField solve(const ProblemSpec& spec) {
    auto warnings = spec.validate();
    auto elim = eliminate_boundary(spec);
    auto impl = std::make_shared<SolutionField::Impl>();
    impl->spec = spec;
    impl->warnings = std::move(warnings);
    const double a = spec.alpha, A = spec.A;
    const cplx I(0.0, 1.0);
    const double level = std::log(1e10);

    auto [t1, t2] = gamma_ray_angles(a);
    const double eps = spec.contour.eps_rot;
    const double phiL = t1 + eps, phiR = t2 - eps;
    double R = spec.contour.r_max;
    if (R <= 0.0) {
        // the boundary-forcing part has no e^{-w t} factor, only e^{ikx}
        double c = spec.h.is_zero() ? detail::ray_decay_c(phiR, a) : 0.0;
        R = detail::decay_radius(std::sin(phiR), c, A, a, spec.window.x_lo, spec.window.t_lo, level,
                                 200.0);
    }
    const double K = spec.quadrature.k_max;

    auto real_branch = [&](double sign) {
        SolutionField::Branch b;
        b.angle = sign > 0.0 ? 0.0 : kPi;
        b.sin_phi = 0.0;
        b.decay_c = detail::ray_decay_c(b.angle, a);
        b.R = K;
        auto br = detail::window_breaks(spec, b.angle, K);
        auto pn = gk15_panels(br);
        b.panels = pn.panels;
        for (std::size_t i = 0; i < pn.x.size(); ++i) {
            b.k.push_back(sign * pn.x[i]);
            b.w.push_back(pn.w[i]);
            b.wlo.push_back(pn.wlo[i]);
            b.panel.push_back(pn.panel[i]);
        }
        return b;
    };
    impl->branches.push_back(real_branch(1.0));
    impl->branches.push_back(real_branch(-1.0));

    auto brL = detail::window_breaks(spec, phiL, R);
    auto brR = detail::window_breaks(spec, phiR, R);
    Contour gamma = gamma_contour(a, eps, brL, brR);
    for (int ray = 0; ray < 2; ++ray) {
        SolutionField::Branch b;
        b.angle = ray == 0 ? phiL : phiR;
        b.sin_phi = std::sin(b.angle);
        b.decay_c = detail::ray_decay_c(b.angle, a);
        b.R = R;
        int first_panel = -1;
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            if (gamma.ray_of[i] != ray) continue;
            if (first_panel < 0) first_panel = gamma.panel_of[i];
            b.k.push_back(gamma.nodes[i]);
            b.w.push_back(gamma.weights[i]);
            b.wlo.push_back(gamma.weights_lo[i]);
            b.panel.push_back(gamma.panel_of[i] - first_panel);
        }
        b.panels = b.panel.empty() ? 0 : b.panel.back() + 1;
        impl->branches.push_back(std::move(b));
    }

    for (std::size_t bi = 0; bi < impl->branches.size(); ++bi) {
        auto& b = impl->branches[bi];
        const std::size_t n = b.k.size();
        b.p.resize(n);
        b.a0.resize(n);
        b.aF.assign(n, 0.0);
        const bool contour = bi >= 2;
        parallel_for(n, [&](std::size_t i) {
            cplx k = b.k[i];
            b.p[i] = A * principal_power(I * k, a);
            if (!contour) {
                b.a0[i] = half_fourier(spec.q0, k, spec.quadrature);
            } else {
                b.a0[i] = -elim.q0_coeff(k) * elim.q0_hat_rotated(k);
                if (!spec.h.is_zero()) b.aF[i] = -elim.f_coeff(k);
            }
        });
    }
    return SolutionField(std::move(impl));
}

// Closed-form solution of q_t = A q_xx on the half-line with q(0,t)=0 and q0 = x e^{-lam x^2}.
inline double heat_oracle(double lam, double A, double x, double t) {
    if (t < 0.0) throw DomainError("heat_oracle: t < 0");
    double s = 1.0 + 4.0 * A * lam * t;
    return x * std::pow(s, -1.5) * std::exp(-lam * x * x / s);
}

using FieldFn = std::function<cplx(double, double)>;

struct GRSample {
    cplx k;
    double t;
    double residual;
    double normalization;  // |q0^(k)|
    double relative;       // residual / (1 + |q0^(k)|)
};

struct GRReport {
    std::vector<GRSample> samples;
    double max_rel = 0.0;
    double median_rel = 0.0;
};

struct GROptions {
    double x_max = 40.0;
    double panel_width = 0.25;
    double x_edge = 1e-3;  // boundary differintegral estimated from samples on [0, x_edge]
    int edge_intervals = 64;
    int tau_nodes = 32;
};

// k with Re k in [-2, 2], Im k in [-2, -0.1]; fixed seed.
inline std::vector<cplx> sample_gr_ks(int n = 20, std::uint64_t seed = 20240601) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(-2.0, -0.1);
    std::vector<cplx> ks;
    for (int i = 0; i < n; ++i) {
        double r = re(rng);
        ks.emplace_back(r, im(rng));
    }
    return ks;
}

inline GRReport global_relation_report(const ProblemSpec& spec, const FieldFn& q,
                                       const std::vector<cplx>& ks, const std::vector<double>& ts,
                                       const GROptions& opt = {}) {
    for (const auto& k : ks)
        if (!(k.imag() < 0.0)) throw DomainError("global relation: need Im k < 0");
    const cplx I(0.0, 1.0);
    const auto w = FractionalSymbol::monomial(spec.A, spec.alpha);
    const double beta_u = spec.unknown_order();

    std::vector<double> br{0.0, 1e-3, 1e-2, 0.05, 0.1, opt.panel_width};
    for (double x : uniform_breaks(opt.panel_width, opt.x_max, opt.panel_width))
        if (x > br.back()) br.push_back(x);
    const auto slice = gk15_panels(br);

    std::vector<double> gu, gw;
    gauss_legendre(opt.tau_nodes, gu, gw);

    GRReport rep;
    for (double t : ts) {
        if (!(t > 0.0 && t <= spec.T)) throw DomainError("global relation: need 0 < t <= T");
        std::vector<cplx> qs(slice.x.size());
        parallel_for(qs.size(), [&](std::size_t i) { qs[i] = q(slice.x[i], t); });

        // unknown boundary differintegral at tau = t u^2
        const std::size_t nt = gu.size();
        std::vector<double> tau(nt), tw(nt);
        std::vector<cplx> bval(nt);
        for (std::size_t j = 0; j < nt; ++j) {
            double u = 0.5 * (gu[j] + 1.0);
            tau[j] = t * u * u;
            tw[j] = 0.5 * gw[j] * 2.0 * t * u;
        }
        parallel_for(nt, [&](std::size_t j) {
            std::vector<double> xs(opt.edge_intervals + 1);
            std::vector<cplx> vs(xs.size());
            for (int i = 0; i <= opt.edge_intervals; ++i) {
                xs[i] = opt.x_edge * i / opt.edge_intervals;
                vs[i] = q(xs[i], tau[j]);
            }
            SampledFunction f(xs, vs);
            bval[j] = rl_differintegral(f, beta_u, opt.x_edge);
        });

        for (const auto& k : ks) {
            cplx wk = w(k);
            cplx qhat = 0.0;
            for (std::size_t i = 0; i < slice.x.size(); ++i)
                qhat += slice.w[i] * std::exp(-I * k * slice.x[i]) * qs[i];
            cplx fu = 0.0;
            for (std::size_t j = 0; j < nt; ++j) fu += tw[j] * std::exp(wk * tau[j]) * bval[j];
            cplx fp = time_transform(spec.h, wk, t, spec.quadrature);
            cplx f1 = spec.bc == BcKind::frac_dirichlet ? fu : fp;  // order alpha-1
            cplx f2 = spec.bc == BcKind::frac_dirichlet ? fp : fu;  // order alpha-2
            cplx g = spec.A * (f1 + I * k * f2);
            cplx q0h = half_fourier(spec.q0, k, spec.quadrature);
            double res = std::abs(std::exp(wk * t) * qhat - q0h + g);
            double nrm = std::abs(q0h);
            rep.samples.push_back({k, t, res, nrm, res / (1.0 + nrm)});
        }
    }
    std::vector<double> rel;
    for (const auto& s : rep.samples) rel.push_back(s.relative);
    if (!rel.empty()) {
        rep.max_rel = *std::max_element(rel.begin(), rel.end());
        std::sort(rel.begin(), rel.end());
        std::size_t m = rel.size();
        rep.median_rel = m % 2 ? rel[m / 2] : 0.5 * (rel[m / 2 - 1] + rel[m / 2]);
    }
    return rep;
}

inline double global_relation_residual(const ProblemSpec& spec, const FieldFn& q, cplx k, double t,
                                       const GROptions& opt = {}) {
    return global_relation_report(spec, q, {k}, {t}, opt).samples.front().residual;
}

inline double global_relation_residual(const ProblemSpec& spec, const SolutionField& field, cplx k,
                                       double t, const GROptions& opt = {}) {
    return global_relation_residual(spec, field.as_function(), k, t, opt);
}

struct PdePoint {
    double x, t;
    cplx q_t, a_dalpha, residual;
    bool low_resolution;
};

struct PdeReport {
    std::vector<PdePoint> points;
    double rel = 0.0;      // ||q_t - A D^alpha q|| / ||A D^alpha q||
    double max_abs = 0.0;
    bool low_resolution = false;
};

struct PdeOptions {
    int slice_intervals = 2048;
    double dt = 0.0;  // 0 selects 1e-3 T
};

inline PdeReport pde_residual(const ProblemSpec& spec, const FieldFn& q, const std::vector<double>& xs,
                              const std::vector<double>& ts, const PdeOptions& opt = {}) {
    if (xs.empty() || ts.empty()) return {};
    const double dt = opt.dt > 0.0 ? opt.dt : 1e-3 * spec.T;
    for (double t : ts)
        if (!(t - dt > 0.0 && t + dt <= spec.T)) throw DomainError("pde_residual: t too close to 0 or T");
    for (double x : xs)
        if (!(x > 0.0)) throw DomainError("pde_residual: need x > 0");
    const double xm = *std::max_element(xs.begin(), xs.end());
    const int N = opt.slice_intervals;
    const double dx = xm / N;

    PdeReport rep;
    double num = 0.0, den = 0.0;
    for (double t : ts) {
        std::vector<double> grid(N + 1);
        std::vector<cplx> vals(N + 1);
        for (int i = 0; i <= N; ++i) grid[i] = i == N ? xm : dx * i;
        parallel_for(grid.size(), [&](std::size_t i) { vals[i] = q(grid[i], t); });
        SampledFunction slice(grid, vals);
        std::vector<PdePoint> pts(xs.size());
        parallel_for(xs.size(), [&](std::size_t j) {
            double x = xs[j];
            double s = x / dx;
            DiffintegralResult d;
            if (std::abs(s - std::round(s)) < 1e-9) {
                d = rl_derivative_report(slice, spec.alpha, x);
            } else {
                d = rl_derivative_report([&](double y) { return q(y, t); }, spec.alpha, x, 0.0, N);
            }
            d.low_resolution = d.low_resolution || x < 4.0 * dx;
            cplx qt = (q(x, t + dt) - q(x, t - dt)) / (2.0 * dt);
            cplx ad = spec.A * d.value;
            pts[j] = {x, t, qt, ad, qt - ad, d.low_resolution};
        });
        for (const auto& p : pts) {
            num += std::norm(p.residual);
            den += std::norm(p.a_dalpha);
            rep.max_abs = std::max(rep.max_abs, std::abs(p.residual));
            rep.low_resolution = rep.low_resolution || p.low_resolution;
            rep.points.push_back(p);
        }
    }
    rep.rel = den > 0.0 ? std::sqrt(num / den) : (num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return rep;
}

}  // namespace fracutm
