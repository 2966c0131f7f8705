#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracutm/error.hpp"
#include "fracutm/function.hpp"
#include "fracutm/quadrature.hpp"

namespace fracutm {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// k^alpha on the principal branch, cut along (-inf, 0].
inline cplx principal_power(cplx k, double alpha) {
    if (k == cplx(0.0, 0.0)) {
        if (alpha > 0.0) return 0.0;
        throw DomainError("principal_power: zero base with nonpositive exponent");
    }
    if (k.imag() == 0.0 && k.real() < 0.0) {
        // integer powers are single-valued, so the cut is immaterial
        if (alpha == std::floor(alpha)) return std::polar(std::pow(-k.real(), alpha), alpha * kPi);
        std::ostringstream os;
        os << "principal_power: k=" << k.real() << " lies on the branch cut";
        throw BranchCutError(os.str());
    }
    return std::polar(std::pow(std::abs(k), alpha), alpha * std::arg(k));
}

// Boundary value from the upper half plane; used for k on the negative real axis.
inline cplx principal_power_from_above(cplx k, double alpha) {
    if (k.imag() == 0.0 && k.real() < 0.0)
        return std::polar(std::pow(-k.real(), alpha), alpha * kPi);
    return principal_power(k, alpha);
}

struct SymbolTerm {
    cplx coeff;
    double exponent;
};

// w(k) = sum c k^a, or the monomial normalisation w(k) = -A (ik)^alpha.
class FractionalSymbol {
public:
    explicit FractionalSymbol(std::vector<SymbolTerm> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) throw DomainError("FractionalSymbol: empty term list");
        for (const auto& t : terms_)
            if (!(t.exponent > 0.0) || !std::isfinite(t.exponent))
                throw DomainError("FractionalSymbol: exponents must be positive");
    }

    static FractionalSymbol monomial(double A, double alpha) {
        if (!(A > 0.0)) throw DomainError("monomial symbol: A must be positive");
        if (!(alpha > 0.0)) throw DomainError("monomial symbol: alpha must be positive");
        FractionalSymbol w({SymbolTerm{-A * principal_power(cplx(0.0, 1.0), alpha), alpha}});
        w.monomial_ = true;
        w.A_ = A;
        w.alpha_ = alpha;
        return w;
    }

    bool is_monomial() const { return monomial_; }
    double A() const { return A_; }
    double alpha() const { return alpha_; }
    const std::vector<SymbolTerm>& terms() const { return terms_; }

    cplx operator()(cplx k) const { return eval(k, false); }

    // Real-axis evaluation with cut points taken as limits from above.
    cplx eval_from_above(cplx k) const { return eval(k, true); }

private:
    cplx eval(cplx k, bool from_above) const {
        if (monomial_) {
            try {
                return -A_ * principal_power(cplx(0.0, 1.0) * k, alpha_);
            } catch (const BranchCutError& e) {
                throw BranchCutError(std::string("monomial term -A(ik)^alpha: ") + e.what());
            }
        }
        cplx s = 0.0;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& t = terms_[i];
            try {
                s += t.coeff * (from_above ? principal_power_from_above(k, t.exponent)
                                           : principal_power(k, t.exponent));
            } catch (const BranchCutError& e) {
                std::ostringstream os;
                os << "term " << i << " (exponent " << t.exponent << "): " << e.what();
                throw BranchCutError(os.str());
            }
        }
        return s;
    }

    std::vector<SymbolTerm> terms_;
    bool monomial_ = false;
    double A_ = 0.0;
    double alpha_ = 0.0;
};

inline cplx symbol_eval(const FractionalSymbol& w, cplx k) { return w(k); }

struct AdmissibilityVerdict {
    bool admissible = true;
    cplx k_star = 0.0;
    cplx w_star = 0.0;
};

inline AdmissibilityVerdict check_real_axis_admissible(const FractionalSymbol& w, int samples) {
    if (samples < 100) throw DomainError("check_real_axis_admissible: need at least 100 samples");
    int half = (samples + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double r = 1e-3 * std::pow(1e6, half == 1 ? 0.0 : double(i) / (half - 1));
        for (double s : {1.0, -1.0}) {
            cplx k(s * r, 0.0);
            cplx v = w.eval_from_above(k);
            if (v.real() < -1e-12 * (1.0 + std::abs(v))) return {false, k, v};
        }
    }
    return {};
}

// |4n +- alpha| >= 1 for every integer n.
inline bool monomial_admissible(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("monomial_admissible: alpha must be positive");
    double r = std::fmod(alpha, 4.0);
    return r >= 1.0 && r <= 3.0;
}

struct SectorRegion {
    std::vector<std::pair<double, double>> sectors;

    bool empty() const { return sectors.empty(); }
    bool contains(cplx k) const {
        if (!(k.imag() > 0.0)) return false;
        double th = std::arg(k);
        for (const auto& s : sectors)
            if (th > s.first && th < s.second) return true;
        return false;
    }
};

inline SectorRegion dplus_sectors(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.5))
        throw DomainError("dplus_sectors: alpha outside supported range (1, 5/2)");
    SectorRegion r;
    if (alpha > 1.5) r.sectors.push_back({1.5 * kPi / alpha - 0.5 * kPi, 1.5 * kPi - 1.5 * kPi / alpha});
    return r;
}

inline bool dplus_indicator(const FractionalSymbol& w, cplx k) {
    if (!(k.imag() > 0.0)) return false;
    return w(k).real() < 0.0;
}

// Exact ray angles of Gamma: {descending (left) ray, ascending (right) ray}.
inline std::pair<double, double> gamma_ray_angles(double alpha) {
    return {(3.0 * alpha - 3.0) * kPi / (2.0 * alpha), (3.0 - alpha) * kPi / (2.0 * alpha)};
}

struct Ray {
    double angle;
    double r_min;
    double r_max;
    int direction;  // -1 traversed from r_max to r_min, +1 from r_min to r_max
};

// Oriented union of rays with GK15 panel nodes; weights include dk and orientation.
struct Contour {
    std::vector<Ray> rays;
    std::vector<cplx> nodes, weights, weights_lo;
    std::vector<int> ray_of, panel_of;

    std::size_t size() const { return nodes.size(); }
};

inline Contour make_ray_contour(const std::vector<Ray>& rays,
                                const std::vector<std::vector<double>>& breaks) {
    if (rays.size() != breaks.size()) throw GeometryError("make_ray_contour: one partition per ray");
    Contour c;
    c.rays = rays;
    int panel_base = 0;
    for (std::size_t r = 0; r < rays.size(); ++r) {
        const Ray& ray = rays[r];
        if (!(ray.r_max > ray.r_min) || ray.r_min < 0.0)
            throw GeometryError("make_ray_contour: bad radial span");
        if (ray.direction != 1 && ray.direction != -1)
            throw GeometryError("make_ray_contour: direction must be +1 or -1");
        auto pn = gk15_panels(breaks[r]);
        cplx e = std::polar(1.0, ray.angle);
        for (std::size_t i = 0; i < pn.x.size(); ++i) {
            c.nodes.push_back(pn.x[i] * e);
            c.weights.push_back(double(ray.direction) * pn.w[i] * e);
            c.weights_lo.push_back(double(ray.direction) * pn.wlo[i] * e);
            c.ray_of.push_back(static_cast<int>(r));
            c.panel_of.push_back(panel_base + pn.panel[i]);
        }
        panel_base += pn.panels;
    }
    return c;
}

inline void check_gamma_preconditions(double alpha, double eps_rot) {
    if (!(alpha > 1.5 && alpha < 2.5))
        throw GeometryError("gamma_contour: alpha outside (3/2, 5/2)");
    double gap = gamma_ray_angles(alpha).second;  // angle between each ray and the real axis
    if (!(eps_rot >= 0.0) || !(eps_rot < 0.5 * gap)) {
        std::ostringstream os;
        os << "gamma_contour: eps_rot=" << eps_rot << " must lie in [0, " << 0.5 * gap << ")";
        throw GeometryError(os.str());
    }
}

// Gamma rotated by eps_rot away from D+, with explicit radial partitions per ray.
inline Contour gamma_contour(double alpha, double eps_rot, const std::vector<double>& breaks_left,
                             const std::vector<double>& breaks_right) {
    check_gamma_preconditions(alpha, eps_rot);
    auto [t1, t2] = gamma_ray_angles(alpha);
    std::vector<Ray> rays{{t1 + eps_rot, breaks_left.front(), breaks_left.back(), -1},
                          {t2 - eps_rot, breaks_right.front(), breaks_right.back(), +1}};
    Contour c = make_ray_contour(rays, {breaks_left, breaks_right});
    auto w = FractionalSymbol::monomial(1.0, alpha);
    for (const auto& k : c.nodes) {
        cplx v = w(k);
        bool ok = k.imag() > 0.0 &&
                  (eps_rot > 0.0 ? v.real() > 0.0 : v.real() > -1e-12 * std::abs(v));
        if (!ok) {
            std::ostringstream os;
            os << "gamma_contour: node " << k << " violates Im k > 0, Re w(k) > 0";
            throw GeometryError(os.str());
        }
    }
    return c;
}

inline int default_graded_panels(int total) { return total >= 8 ? 4 : 0; }

inline Contour gamma_contour(double alpha, double r_max, double eps_rot, int nodes_per_ray) {
    if (!(r_max > 0.0)) throw GeometryError("gamma_contour: r_max must be positive");
    int total = std::max(1, nodes_per_ray / 15);
    int graded = default_graded_panels(total);
    auto br = radial_breaks(r_max, total - graded, graded, [](double) { return 1.0; });
    return gamma_contour(alpha, eps_rot, br, br);
}

struct NuMap {
    int n = -1;
    cplx factor = 1.0;
    double window_lo = 1.4;
    double window_hi = 7.0 / 3.0;

    cplx operator()(cplx k) const { return factor * k; }
};

inline std::pair<double, double> nu_rotated_angles(double alpha) {
    auto [t1, t2] = gamma_ray_angles(alpha);
    double rot = 2.0 * kPi / alpha;
    return {t1 - rot, t2 - rot};
}

inline std::vector<NuMap> nu_candidates(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("nu_candidates: alpha must be positive");
    auto [a1, a2] = nu_rotated_angles(alpha);
    auto inside = [](double a) { return a > -kPi && a < 0.0; };
    if (!(inside(a1) && inside(a2))) return {};
    return {NuMap{-1, std::polar(1.0, -2.0 * kPi / alpha), 1.4, 7.0 / 3.0}};
}

// Rotation that preserves w on a given ray of Gamma under the principal branch of (ik)^alpha:
// e^{+2 pi i/alpha} on the descending ray (index 0), e^{-2 pi i/alpha} on the ascending ray.
inline cplx branch_consistent_nu(double alpha, int ray) {
    return std::polar(1.0, (ray == 0 ? 2.0 : -2.0) * kPi / alpha);
}

}  // namespace fracutm
