#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace fracutm {

namespace detail {

// Weideman's rational expansion with N = 40 terms.
struct Weideman {
    static constexpr int N = 40;
    double L;
    std::array<double, N> a;  // a[m-1] multiplies Z^{m-1}

    Weideman() {
        const int M = 2 * N, M2 = 2 * M;
        L = std::sqrt(N / std::sqrt(2.0));
        std::vector<double> f(M2, 0.0);
        for (int j = 0; j < M2 - 1; ++j) {
            int k = -M + 1 + j;
            double t = L * std::tan(0.5 * k * M_PI / M);
            f[j + 1] = std::exp(-t * t) * (L * L + t * t);
        }
        std::vector<double> shifted(M2);
        for (int i = 0; i < M2; ++i) shifted[i] = f[(i + M2 / 2) % M2];
        for (int m = 1; m <= N; ++m) {
            double s = 0.0;
            for (int n = 0; n < M2; ++n) s += shifted[n] * std::cos(2.0 * M_PI * m * n / M2);
            a[m - 1] = s / M2;
        }
    }

    std::complex<double> operator()(std::complex<double> z) const {
        const std::complex<double> I(0.0, 1.0);
        std::complex<double> den = L - I * z;
        std::complex<double> Z = (L + I * z) / den;
        std::complex<double> p = 0.0;
        for (int m = N - 1; m >= 0; --m) p = p * Z + a[m];
        return 2.0 * p / (den * den) + (1.0 / std::sqrt(M_PI)) / den;
    }
};

inline const Weideman& weideman() {
    static const Weideman w;
    return w;
}

}  // namespace detail

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
inline std::complex<double> faddeeva(std::complex<double> z) {
    if (z.imag() >= 0.0) return detail::weideman()(z);
    return 2.0 * std::exp(-z * z) - detail::weideman()(-z);
}

}  // namespace fracutm
