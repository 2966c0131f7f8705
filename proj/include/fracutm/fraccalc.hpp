#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <type_traits>
#include <vector>

#include "fracutm/error.hpp"
#include "fracutm/function.hpp"
#include "fracutm/gamma.hpp"

namespace fracutm {

inline constexpr std::size_t kDefaultNodes = 2048;

// m = floor(alpha)+1 for the RL derivative, n = ceil(alpha) for integration by parts.
struct Order {
    double alpha;
    int m() const { return static_cast<int>(std::floor(alpha)) + 1; }
    int n() const { return static_cast<int>(std::ceil(alpha)); }
};

struct DiffintegralResult {
    cplx value;
    bool low_resolution = false;
};

namespace detail {

template <class F>
inline constexpr bool is_sampled_v = std::is_same_v<std::decay_t<F>, SampledFunction>;

struct Knots {
    std::vector<double> x;
    std::vector<cplx> y;
    bool low_resolution = false;
};

// Nodes a = x_0 < ... < x_M = x at which the operand is sampled.
template <class F>
Knots make_knots(const F& f, double a, double x, std::size_t n) {
    Knots k;
    if constexpr (is_sampled_v<F>) {
        double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(x)});
        k.x.push_back(a);
        k.y.push_back(f(a));
        for (std::size_t i = 0; i < f.grid().size(); ++i) {
            double g = f.grid()[i];
            if (g > a + tol && g < x - tol) {
                k.x.push_back(g);
                k.y.push_back(f.values()[i]);
            }
        }
        k.x.push_back(x);
        k.y.push_back(f(x));
        k.low_resolution = k.x.size() < 5;
        if (k.x.size() < 4) {
            // too few samples for a cubic: resample the linear interpolant
            Knots r;
            for (int i = 0; i <= 3; ++i) {
                double xi = a + (x - a) * i / 3.0;
                r.x.push_back(xi);
                r.y.push_back(f(xi));
            }
            r.low_resolution = true;
            return r;
        }
    } else {
        if (n < 3) n = 3;
        double h = (x - a) / static_cast<double>(n);
        k.x.resize(n + 1);
        k.y.resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            k.x[i] = i == n ? x : a + h * static_cast<double>(i);
            k.y[i] = f(k.x[i]);
        }
    }
    return k;
}

// Not-a-knot cubic spline; per interval S = c3 + c2 u + c1 u^2 + c0 u^3.
struct Spline {
    std::vector<double> x;
    std::vector<cplx> c0, c1, c2, c3;
};

inline Spline not_a_knot_spline(const std::vector<double>& x, const std::vector<cplx>& y) {
    const std::size_t n = x.size();
    std::vector<double> dx(n - 1);
    std::vector<cplx> slope(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        dx[i] = x[i + 1] - x[i];
        slope[i] = (y[i + 1] - y[i]) / dx[i];
    }
    // tridiagonal system for the knot slopes s_i
    std::vector<double> lo(n, 0.0), di(n, 0.0), up(n, 0.0);
    std::vector<cplx> rhs(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        lo[i] = dx[i];
        di[i] = 2.0 * (dx[i - 1] + dx[i]);
        up[i] = dx[i - 1];
        rhs[i] = 3.0 * (dx[i] * slope[i - 1] + dx[i - 1] * slope[i]);
    }
    {
        double d = x[2] - x[0];
        di[0] = dx[1];
        up[0] = d;
        rhs[0] = ((dx[0] + 2.0 * d) * dx[1] * slope[0] + dx[0] * dx[0] * slope[1]) / d;
    }
    {
        double d = x[n - 1] - x[n - 3];
        di[n - 1] = dx[n - 3];
        lo[n - 1] = d;
        rhs[n - 1] = (dx[n - 2] * dx[n - 2] * slope[n - 3] +
                      (2.0 * d + dx[n - 2]) * dx[n - 3] * slope[n - 2]) / d;
    }
    // Thomas elimination
    std::vector<double> cp(n);
    std::vector<cplx> dp(n);
    cp[0] = up[0] / di[0];
    dp[0] = rhs[0] / di[0];
    for (std::size_t i = 1; i < n; ++i) {
        double den = di[i] - lo[i] * cp[i - 1];
        cp[i] = i + 1 < n ? up[i] / den : 0.0;
        dp[i] = (rhs[i] - lo[i] * dp[i - 1]) / den;
    }
    std::vector<cplx> s(n);
    s[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) s[i] = dp[i] - cp[i] * s[i + 1];

    Spline sp;
    sp.x = x;
    sp.c0.resize(n - 1);
    sp.c1.resize(n - 1);
    sp.c2.resize(n - 1);
    sp.c3.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        cplx t = (s[i] + s[i + 1] - 2.0 * slope[i]) / dx[i];
        sp.c0[i] = t / dx[i];
        sp.c1[i] = (slope[i] - s[i]) / dx[i] - t;
        sp.c2[i] = s[i];
        sp.c3[i] = y[i];
    }
    return sp;
}

// RL derivative of the spline at its last knot; Taylor terms j < skip are dropped
// (skip = m turns it into the Caputo derivative).
inline cplx spline_differintegral(const Spline& sp, double alpha, int skip) {
    const double a = sp.x.front(), x = sp.x.back();
    const double L = x - a;
    cplx d[4] = {sp.c3[0], sp.c2[0], 2.0 * sp.c1[0], 6.0 * sp.c0[0]};
    cplx acc = 0.0;
    for (int j = std::max(skip, 0); j < 4; ++j) {
        double rg = reciprocal_gamma(j + 1.0 - alpha);
        if (rg != 0.0) acc += d[j] * std::pow(L, j - alpha) * rg;
    }
    double rg4 = reciprocal_gamma(4.0 - alpha);
    if (rg4 != 0.0) {
        cplx jumps = 0.0;
        for (std::size_t i = 1; i + 1 < sp.x.size(); ++i) {
            cplx jump = 6.0 * (sp.c0[i] - sp.c0[i - 1]);
            jumps += jump * std::pow(x - sp.x[i], 3.0 - alpha);
        }
        acc += jumps * rg4;
    }
    return acc;
}

template <class F>
class Mirrored {
public:
    Mirrored(const F& f, double b) : f_(f), b_(b) {}
    cplx operator()(double s) const { return f_(b_ - s); }

private:
    const F& f_;
    double b_;
};

inline SampledFunction mirror_sampled(const SampledFunction& f, double b) {
    std::vector<double> g(f.grid().rbegin(), f.grid().rend());
    std::vector<cplx> v(f.values().rbegin(), f.values().rend());
    for (auto& s : g) s = b - s;
    return SampledFunction(std::move(g), std::move(v));
}

inline void require_finite_order(double alpha) {
    if (!std::isfinite(alpha)) throw DomainError("differintegral order must be finite");
}

}  // namespace detail

// Left RL integral by product integration against the piecewise-linear interpolant.
template <class F>
cplx rl_integral(const F& f, double alpha, double x, double a = 0.0,
                 std::size_t n = kDefaultNodes) {
    detail::require_finite_order(alpha);
    if (!(alpha > 0.0)) throw DomainError("rl_integral: order must be positive");
    if (x < a) throw DomainError("rl_integral: x < a");
    if (x == a) return 0.0;
    auto k = detail::make_knots(f, a, x, n);
    const std::size_t M = k.x.size() - 1;
    cplx acc = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        double u0 = x - k.x[j], u1 = x - k.x[j + 1];
        double h = k.x[j + 1] - k.x[j];
        double p0 = (std::pow(u0, alpha) - std::pow(u1, alpha)) / alpha;
        // integral of u^{alpha-1} (u0 - u) over [u1, u0]
        double p1 = u0 * p0 - (std::pow(u0, alpha + 1.0) - std::pow(u1, alpha + 1.0)) / (alpha + 1.0);
        double w1 = p1 / h;
        acc += k.y[j] * (p0 - w1) + k.y[j + 1] * w1;
    }
    return acc * reciprocal_gamma(alpha);
}

template <class F>
DiffintegralResult rl_derivative_report(const F& f, double alpha, double x, double a = 0.0,
                                        std::size_t n = kDefaultNodes) {
    detail::require_finite_order(alpha);
    if (alpha < 0.0) throw DomainError("rl_derivative: order must be nonnegative");
    if (alpha > 3.0) throw DomainError("rl_derivative: orders above 3 are not supported");
    if (!(x > a)) throw DomainError("rl_derivative: need x > a");
    if (alpha == 0.0) return {f(x), false};
    auto k = detail::make_knots(f, a, x, n);
    auto sp = detail::not_a_knot_spline(k.x, k.y);
    return {detail::spline_differintegral(sp, alpha, 0), k.low_resolution};
}

template <class F>
cplx rl_derivative(const F& f, double alpha, double x, double a = 0.0,
                   std::size_t n = kDefaultNodes) {
    return rl_derivative_report(f, alpha, x, a, n).value;
}

// Negative order means integral, nonnegative means derivative.
template <class F>
cplx rl_differintegral(const F& f, double order, double x, double a = 0.0,
                       std::size_t n = kDefaultNodes) {
    if (order < 0.0) return rl_integral(f, -order, x, a, n);
    return rl_derivative(f, order, x, a, n);
}

template <class F>
cplx caputo_derivative(const F& f, double alpha, double x, double a = 0.0,
                       std::size_t n = kDefaultNodes) {
    detail::require_finite_order(alpha);
    if (alpha < 0.0) throw DomainError("caputo_derivative: order must be nonnegative");
    if (alpha > 3.0) throw DomainError("caputo_derivative: orders above 3 are not supported");
    if (!(x > a)) throw DomainError("caputo_derivative: need x > a");
    auto k = detail::make_knots(f, a, x, n);
    auto sp = detail::not_a_knot_spline(k.x, k.y);
    return detail::spline_differintegral(sp, alpha, Order{alpha}.m());
}

template <class F>
cplx right_rl_integral(const F& f, double alpha, double x, double b,
                       std::size_t n = kDefaultNodes) {
    if (!(x < b)) throw DomainError("right-sided operator: need x < b");
    if constexpr (detail::is_sampled_v<F>) {
        return rl_integral(detail::mirror_sampled(f, b), alpha, b - x, 0.0, n);
    } else {
        return rl_integral(detail::Mirrored<F>(f, b), alpha, b - x, 0.0, n);
    }
}

template <class F>
cplx right_rl_derivative(const F& f, double alpha, double x, double b,
                         std::size_t n = kDefaultNodes) {
    if (!(x < b)) throw DomainError("right-sided operator: need x < b");
    if constexpr (detail::is_sampled_v<F>) {
        return rl_derivative(detail::mirror_sampled(f, b), alpha, b - x, 0.0, n);
    } else {
        return rl_derivative(detail::Mirrored<F>(f, b), alpha, b - x, 0.0, n);
    }
}

template <class F>
cplx right_rl_differintegral(const F& f, double order, double x, double b,
                             std::size_t n = kDefaultNodes) {
    if (order < 0.0) return right_rl_integral(f, -order, x, b, n);
    return right_rl_derivative(f, order, x, b, n);
}

template <class F>
cplx right_caputo_derivative(const F& f, double alpha, double x, double b,
                             std::size_t n = kDefaultNodes) {
    if (!(x < b)) throw DomainError("right-sided operator: need x < b");
    if constexpr (detail::is_sampled_v<F>) {
        return caputo_derivative(detail::mirror_sampled(f, b), alpha, b - x, 0.0, n);
    } else {
        return caputo_derivative(detail::Mirrored<F>(f, b), alpha, b - x, 0.0, n);
    }
}

template <class F>
cplx gl_derivative(const F& f, double alpha, double x, double a = 0.0,
                   std::size_t n = kDefaultNodes) {
    detail::require_finite_order(alpha);
    if (alpha < 0.0) throw DomainError("gl_derivative: order must be nonnegative");
    if (x < a) throw DomainError("gl_derivative: x < a");
    if (alpha == 0.0 || n == 0) return f(x);
    double h = (x - a) / static_cast<double>(n);
    double w = 1.0;
    cplx acc = f(x);
    for (std::size_t j = 1; j <= n; ++j) {
        w *= 1.0 - (alpha + 1.0) / static_cast<double>(j);
        acc += w * f(j == n ? a : x - h * static_cast<double>(j));
    }
    return acc * std::pow(h, -alpha);
}

}  // namespace fracutm
