#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "fracutm/error.hpp"
#include "fracutm/faddeeva.hpp"
#include "fracutm/fraccalc.hpp"
#include "fracutm/function.hpp"
#include "fracutm/gamma.hpp"
#include "fracutm/quadrature.hpp"
#include "fracutm/symbolgeo.hpp"

namespace fracutm {

struct QuadratureSpec {
    double eps_rel = 1e-10;
    double eps_abs = 1e-13;
    int max_subdivisions = 4000;
    double x_max = 0.0;  // half-line truncation; 0 selects it from the decay bound
    double k_max = 80.0;

    void validate() const {
        if (!(eps_rel > 0.0 && eps_rel <= 1e-2)) throw DomainError("eps_rel must lie in (0, 1e-2]");
        if (!(eps_abs > 0.0)) throw DomainError("eps_abs must be positive");
        if (max_subdivisions < 1) throw DomainError("max_subdivisions must be positive");
        if (x_max < 0.0) throw DomainError("x_max must be nonnegative");
        if (!(k_max > 0.0)) throw DomainError("k_max must be positive");
    }
};

// (e^z - 1)/z with the removable singularity filled in.
inline cplx exprel(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx term = 1.0, sum = 1.0;
        for (int n = 2; n < 30; ++n) {
            term *= z / double(n);
            sum += term;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

namespace detail {

inline cplx closed_half_fourier(const ClosedTerm& t, cplx k) {
    const cplx I(0.0, 1.0);
    switch (t.kind) {
        case ClosedTerm::Kind::constant:
            throw DomainError("half_fourier: constant term has no half-line transform");
        case ClosedTerm::Kind::exp_decay: return t.amp / (t.lambda + I * k);
        case ClosedTerm::Kind::poly_exp:
            return t.amp * std::tgamma(t.p + 1.0) * principal_power(t.lambda + I * k, -(t.p + 1.0));
        case ClosedTerm::Kind::gaussian_x: {
            double lam = t.lambda, sl = std::sqrt(lam);
            cplx i0 = 0.5 * std::sqrt(kPi / lam) * faddeeva(-k / (2.0 * sl));
            return t.amp * (1.0 / (2.0 * lam) - I * k / (2.0 * lam) * i0);
        }
    }
    return 0.0;
}

}  // namespace detail

// Truncation point where M e^{-gamma X}/gamma <= eps_abs.
inline double half_line_cut(double M, double gamma, double eps_abs) {
    double X = std::log(std::max(M / (gamma * eps_abs), 2.0)) / gamma;
    return std::max(X, 1.0 / gamma);
}

inline cplx half_fourier(const FunctionHandle& f, cplx k, const QuadratureSpec& q = {},
                         bool force_quadrature = false) {
    const double delta = f.decay_rate();
    if (!(k.imag() < delta)) {
        std::ostringstream os;
        os << "half_fourier: Im k=" << k.imag() << " not below decay rate " << delta;
        throw DecayError(os.str());
    }
    if (f.is_zero()) return 0.0;
    if (f.has_closed_form() && !force_quadrature) {
        cplx s = 0.0;
        for (const auto& t : f.terms()) s += detail::closed_half_fourier(t, k);
        return s;
    }
    const double gamma = delta - k.imag();
    const double M = f.decay_amp();
    double X = q.x_max > 0.0 ? q.x_max : half_line_cut(M, gamma, q.eps_abs);
    double tail = M * std::exp(-gamma * X) / gamma;
    double width = X / 16.0;
    if (k.real() != 0.0) width = std::min(width, kPi / (4.0 * std::abs(k.real())));
    auto br = uniform_breaks(0.0, X, width);
    const cplx mik = -cplx(0.0, 1.0) * k;
    auto res = integrate_adaptive([&](double x) { return std::exp(mik * x) * f(x); }, br,
                                  q.eps_rel, q.eps_abs, q.max_subdivisions);
    if (!res.converged || tail > std::max(q.eps_abs, q.eps_rel * std::abs(res.value))) {
        std::ostringstream os;
        os << "half_fourier: tolerance not met (quadrature error " << res.error << ", tail " << tail
           << ")";
        throw ToleranceError(os.str(), res.error + tail);
    }
    return res.value;
}

namespace detail {

inline void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time transform: t must be >= 0");
}

inline cplx time_quadrature(const std::function<cplx(double)>& g, double t, double osc,
                            const QuadratureSpec& q) {
    double width = t;
    if (osc > 0.0) width = std::min(width, kPi / (4.0 * osc));
    auto res = integrate_adaptive(g, uniform_breaks(0.0, t, width), q.eps_rel, q.eps_abs,
                                  q.max_subdivisions);
    if (!res.converged)
        throw ToleranceError("time transform: tolerance not met", res.error);
    return res.value;
}

}  // namespace detail

// int_0^t e^{wk tau} h(tau) dtau
inline cplx time_transform(const FunctionHandle& h, cplx wk, double t, const QuadratureSpec& q = {}) {
    detail::check_time(t);
    if (wk.real() * t > 700.0) {
        std::ostringstream os;
        os << "time_transform: exponent Re(wk)*t=" << wk.real() * t << " exceeds 700";
        throw OverflowError(os.str());
    }
    if (h.is_zero() || t == 0.0) return 0.0;
    if (h.has_closed_form()) {
        bool all_fast = true;
        cplx s = 0.0;
        for (const auto& term : h.terms()) {
            if (term.kind == ClosedTerm::Kind::constant)
                s += term.amp * t * exprel(wk * t);
            else if (term.kind == ClosedTerm::Kind::exp_decay)
                s += term.amp * t * exprel((wk - term.lambda) * t);
            else
                all_fast = false;
        }
        if (all_fast) return s;
    }
    return detail::time_quadrature([&](double tau) { return std::exp(wk * tau) * h(tau); }, t,
                                   std::abs(wk.imag()), q);
}

// int_0^t e^{-wk (t - tau)} h(tau) dtau, the time transform scaled by e^{-wk t};
// bounded whenever Re(wk) >= 0.
inline cplx damped_time_transform(const FunctionHandle& h, cplx wk, double t,
                                  const QuadratureSpec& q = {}) {
    detail::check_time(t);
    if (-wk.real() * t > 700.0) throw OverflowError("damped_time_transform: exponent exceeds 700");
    if (h.is_zero() || t == 0.0) return 0.0;
    if (h.has_closed_form()) {
        bool all_fast = true;
        cplx s = 0.0;
        for (const auto& term : h.terms()) {
            if (term.kind == ClosedTerm::Kind::constant) {
                s += term.amp * t * exprel(-wk * t);
            } else if (term.kind == ClosedTerm::Kind::exp_decay) {
                cplx z = (term.lambda - wk) * t;
                if (std::abs(z) >= 0.5)
                    s += term.amp * (std::exp(-wk * t) - std::exp(-term.lambda * t)) /
                         (term.lambda - wk);
                else
                    s += term.amp * std::exp(-term.lambda * t) * t * exprel(z);
            } else {
                all_fast = false;
            }
        }
        if (all_fast) return s;
    }
    return detail::time_quadrature(
        [&](double tau) { return std::exp(-wk * (t - tau)) * h(tau); }, t, std::abs(wk.imag()), q);
}

// Time transforms of the boundary differintegrals D^beta q(0, .) for the orders with known data.
class BoundaryTransforms {
public:
    BoundaryTransforms(FractionalSymbol w, QuadratureSpec q = {}) : w_(std::move(w)), q_(q) {}

    void set(double beta, FunctionHandle h) { data_.insert_or_assign(beta, std::move(h)); }
    bool has(double beta) const { return data_.count(beta) > 0; }
    const FunctionHandle& data(double beta) const {
        auto it = data_.find(beta);
        if (it == data_.end()) throw DomainError("BoundaryTransforms: no data for requested order");
        return it->second;
    }
    const FractionalSymbol& symbol() const { return w_; }

    cplx F(double beta, cplx k, double t) const { return time_transform(data(beta), w_(k), t, q_); }
    cplx damped(double beta, cplx k, double t) const {
        return damped_time_transform(data(beta), w_(k), t, q_);
    }

private:
    FractionalSymbol w_;
    QuadratureSpec q_;
    std::map<double, FunctionHandle> data_;
};

// |transform of D^alpha f - (ik)^alpha f^ - boundary terms| for the integration-by-parts identity.
inline double fractional_transform_identity_residual(const FunctionHandle& f, double alpha, cplx k,
                                                     const QuadratureSpec& q = {},
                                                     std::size_t nodes = kDefaultNodes) {
    if (!(k.imag() < 0.0)) throw DomainError("identity residual: need Im k < 0");
    if (!(alpha > 0.0)) throw DomainError("identity residual: alpha must be positive");
    const cplx I(0.0, 1.0);
    const double gamma = -k.imag();
    double X = half_line_cut(f.decay_amp() * 10.0, std::min(gamma, f.decay_rate()), q.eps_abs);
    std::vector<double> br{0.0, 1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.5};
    double width = 1.0;
    if (k.real() != 0.0) width = std::min(width, kPi / (4.0 * std::abs(k.real())));
    for (double x : uniform_breaks(0.5, X, width))
        if (x > br.back()) br.push_back(x);
    const cplx mik = -I * k;
    auto res = integrate_adaptive(
        [&](double x) { return std::exp(mik * x) * rl_derivative(f, alpha, x, 0.0, nodes); }, br,
        1e-8, 1e-10, 300);
    cplx rhs = principal_power(I * k, alpha) * half_fourier(f, k, q);
    const int n = Order{alpha}.n();
    const double x0 = 1e-7;
    for (int j = 0; j < n; ++j) {
        double beta = alpha - n + j;
        cplx b0 = rl_differintegral(f, beta, x0, 0.0, nodes);
        rhs -= std::pow(I * k, double(n - j - 1)) * b0;
    }
    return std::abs(res.value - rhs);
}

struct ContourIntegral {
    cplx value = 0.0;
    double error = 0.0;  // embedded-rule estimate
};

inline ContourIntegral contour_integral(const std::function<cplx(cplx)>& F, const Contour& c) {
    ContourIntegral out;
    std::vector<cplx> hi(1, 0.0), lo(1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        cplx v = F(c.nodes[i]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream os;
            os << "contour_integral: non-finite integrand at k=" << c.nodes[i];
            throw NonFiniteError(os.str());
        }
        std::size_t p = static_cast<std::size_t>(c.panel_of[i]);
        if (p >= hi.size()) {
            hi.resize(p + 1, 0.0);
            lo.resize(p + 1, 0.0);
        }
        hi[p] += c.weights[i] * v;
        lo[p] += c.weights_lo[i] * v;
    }
    for (std::size_t p = 0; p < hi.size(); ++p) {
        out.value += hi[p];
        out.error += std::abs(hi[p] - lo[p]);
    }
    return out;
}

// Value on the finer contour and the difference to the coarser one.
inline ContourIntegral contour_integral_doubling(const std::function<cplx(cplx)>& F,
                                                 const std::function<Contour(int)>& make,
                                                 int nodes_per_ray) {
    auto coarse = contour_integral(F, make(nodes_per_ray));
    auto fine = contour_integral(F, make(2 * nodes_per_ray));
    return {fine.value, std::abs(fine.value - coarse.value)};
}

}  // namespace fracutm
