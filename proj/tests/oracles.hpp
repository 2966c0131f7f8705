#pragma once

// Brute-force reference computations for tests. Deliberately share no code with the library.

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

using cplx = std::complex<double>;

template <class F>
auto simpson(const F& f, double a, double b, int n) -> decltype(f(a)) {
    if (n % 2) ++n;
    double h = (b - a) / n;
    auto s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * (h / 3.0);
}

// Left RL integral; the substitution u = (x - s)^alpha removes the kernel singularity.
inline double rl_integral(const std::function<double(double)>& f, double alpha, double x, double a = 0.0,
                          int n = 200000) {
    double U = std::pow(x - a, alpha);
    auto g = [&](double u) { return f(x - std::pow(u, 1.0 / alpha)); };
    return simpson(g, 0.0, U, n) / std::tgamma(alpha + 1.0);
}

// Half-line Fourier transform by truncated Simpson rule.
inline cplx half_fourier(const std::function<double(double)>& f, cplx k, double L = 60.0, int n = 400000) {
    const cplx I(0.0, 1.0);
    return simpson([&](double x) { return std::exp(-I * k * x) * f(x); }, 0.0, L, n);
}

// Heat equation q_t = A q_xx on x > 0 with q(0,t)=0: odd-extension Gaussian convolution.
inline double heat_convolution(const std::function<double(double)>& q0, double A, double x, double t,
                               double L = 14.0, int n = 40000) {
    double s = 4.0 * A * t;
    auto G = [s](double z) { return std::exp(-z * z / s) / std::sqrt(M_PI * s); };
    return simpson([&](double y) { return (G(x - y) - G(x + y)) * q0(y); }, 0.0, L, n);
}

}  // namespace oracle
