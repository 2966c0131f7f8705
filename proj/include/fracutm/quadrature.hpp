#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "fracutm/error.hpp"
#include "fracutm/function.hpp"

namespace fracutm {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
struct GK15 {
    static constexpr std::array<double, 8> xk = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static constexpr std::array<double, 8> wk = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    // Gauss weights for xk[1], xk[3], xk[5], xk[7]
    static constexpr std::array<double, 4> wg = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    // Node i in [0,15): abscissa on [-1,1], Kronrod weight, Gauss weight (0 if not a Gauss node).
    static void node(int i, double& x, double& w, double& wlo) {
        int j = i < 7 ? i : (i == 7 ? 7 : 14 - i);
        double s = i < 7 ? -1.0 : 1.0;
        x = s * xk[j];
        w = wk[j];
        wlo = (j % 2 == 1) ? wg[j / 2] : 0.0;
    }
};

// Quadrature nodes on a union of panels, with the embedded lower-order weights.
struct PanelNodes {
    std::vector<double> x, w, wlo;
    std::vector<int> panel;
    int panels = 0;
};

inline PanelNodes gk15_panels(const std::vector<double>& breaks) {
    PanelNodes out;
    out.panels = static_cast<int>(breaks.size()) - 1;
    for (int p = 0; p < out.panels; ++p) {
        double a = breaks[p], b = breaks[p + 1];
        double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int i = 0; i < 15; ++i) {
            double x, w, wlo;
            GK15::node(i, x, w, wlo);
            out.x.push_back(c + h * x);
            out.w.push_back(h * w);
            out.wlo.push_back(h * wlo);
            out.panel.push_back(p);
        }
    }
    return out;
}

// Breakpoints on [0, R]: `main` panels equidistributing rho, then the first panel split
// geometrically into `graded` + 1 pieces toward 0.
inline std::vector<double> radial_breaks(double R, int main, int graded,
                                         const std::function<double(double)>& rho) {
    if (!(R > 0.0)) throw GeometryError("radial_breaks: R must be positive");
    main = std::max(main, 1);
    const int fine = 8192;
    std::vector<double> cum(fine + 1, 0.0);
    double prev = rho(0.0);
    for (int i = 1; i <= fine; ++i) {
        double r = R * i / fine;
        double cur = rho(r);
        cum[i] = cum[i - 1] + 0.5 * (prev + cur) * (R / fine);
        prev = cur;
    }
    double total = cum[fine];
    std::vector<double> b{0.0};
    int j = 0;
    for (int p = 1; p < main; ++p) {
        double level = total * p / main;
        while (j < fine && cum[j + 1] < level) ++j;
        double seg = cum[j + 1] - cum[j];
        double s = seg > 0.0 ? (level - cum[j]) / seg : 0.0;
        double r = R * (j + s) / fine;
        if (r > b.back()) b.push_back(r);
    }
    b.push_back(R);
    if (graded > 0) {
        double first = b[1];
        std::vector<double> g{0.0};
        for (int i = graded; i >= 1; --i) g.push_back(first * std::ldexp(1.0, -i));
        g.insert(g.end(), b.begin() + 1, b.end());
        b.swap(g);
    }
    return b;
}

struct IntegrationResult {
    cplx value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

// Globally adaptive GK15 with interval halving, starting from the given partition.
inline IntegrationResult integrate_adaptive(const std::function<cplx(double)>& f,
                                            const std::vector<double>& breaks, double eps_rel,
                                            double eps_abs, int max_subdivisions) {
    struct Piece {
        double a, b;
        cplx val;
        double err;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    IntegrationResult res;
    auto rule = [&](double a, double b) {
        double c = 0.5 * (a + b), h = 0.5 * (b - a);
        cplx k = 0.0, g = 0.0;
        for (int i = 0; i < 15; ++i) {
            double x, w, wlo;
            GK15::node(i, x, w, wlo);
            cplx v = f(c + h * x);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NonFiniteError("non-finite integrand at x=" + std::to_string(c + h * x));
            k += w * v;
            g += wlo * v;
        }
        res.evaluations += 15;
        return Piece{a, b, h * k, std::abs(h * (k - g))};
    };
    std::priority_queue<Piece> heap;
    cplx total = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] <= breaks[i]) continue;
        Piece p = rule(breaks[i], breaks[i + 1]);
        total += p.val;
        err += p.err;
        heap.push(p);
    }
    int subdivisions = 0;
    while (!heap.empty() && err > std::max(eps_abs, eps_rel * std::abs(total))) {
        if (subdivisions >= max_subdivisions) {
            res.converged = false;
            break;
        }
        Piece p = heap.top();
        heap.pop();
        double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {
            res.converged = false;
            break;
        }
        Piece l = rule(p.a, m), r = rule(m, p.b);
        total += l.val + r.val - p.val;
        err += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
        ++subdivisions;
    }
    // recompute the sum in a fixed order to limit drift
    std::vector<Piece> all;
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
    total = 0.0;
    err = 0.0;
    for (const auto& p : all) {
        total += p.val;
        err += p.err;
    }
    res.value = total;
    res.error = err;
    if (err > std::max(eps_abs, eps_rel * std::abs(total))) res.converged = false;
    return res;
}

// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

// Uniform partition of [a, b] with pieces no wider than max_width.
inline std::vector<double> uniform_breaks(double a, double b, double max_width) {
    int n = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    std::vector<double> br(n + 1);
    for (int i = 0; i <= n; ++i) br[i] = a + (b - a) * i / n;
    br[n] = b;
    return br;
}

}  // namespace fracutm
