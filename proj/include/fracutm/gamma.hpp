#pragma once

#include <cmath>
#include <string>

#include "fracutm/error.hpp"

namespace fracutm {

inline bool is_gamma_pole(double x) {
    return x <= 0.0 && std::floor(x) == x;
}

inline double gamma_real(double x) {
    if (is_gamma_pole(x)) throw PoleError("gamma pole at x=" + std::to_string(x));
    return std::tgamma(x);
}

// 1/Gamma(x), exactly zero at the poles.
inline double reciprocal_gamma(double x) {
    if (is_gamma_pole(x)) return 0.0;
    if (x > 171.5) return 0.0;
    return 1.0 / std::tgamma(x);
}

}  // namespace fracutm
