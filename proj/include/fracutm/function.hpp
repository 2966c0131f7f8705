#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracutm/error.hpp"

namespace fracutm {

using cplx = std::complex<double>;

// One term of a closed-form family; a FunctionHandle may carry a sum of them.
struct ClosedTerm {
    enum class Kind { constant, exp_decay, poly_exp, gaussian_x };
    Kind kind = Kind::constant;
    double p = 0.0;       // poly_exp power
    double lambda = 0.0;  // rate
    cplx amp = 1.0;

    cplx operator()(double x) const {
        switch (kind) {
            case Kind::constant: return amp;
            case Kind::exp_decay: return amp * std::exp(-lambda * x);
            case Kind::poly_exp:
                return p == 0.0 ? amp * std::exp(-lambda * x)
                                : amp * std::pow(x, p) * std::exp(-lambda * x);
            case Kind::gaussian_x: return amp * x * std::exp(-lambda * x * x);
        }
        return 0.0;
    }
};

// Scalar function of x >= 0 with a declared bound |f(x)| <= M exp(-delta x).
class FunctionHandle {
public:
    using Eval = std::function<cplx(double)>;

    FunctionHandle(Eval f, double decay_rate, double decay_amp,
                   double probe_end = std::numeric_limits<double>::infinity())
        : FunctionHandle(std::move(f), decay_rate, decay_amp, probe_end, {}, false) {}

    static FunctionHandle zero() {
        return FunctionHandle([](double) { return cplx(0.0); }, 1.0,
                              std::numeric_limits<double>::min(),
                              std::numeric_limits<double>::infinity(), {}, true);
    }
    // Constant on [0, T]; the decay bound is only meaningful on that interval.
    static FunctionHandle constant(cplx c, double T) {
        if (!(T > 0.0)) throw DomainError("constant: support end must be positive");
        ClosedTerm term{ClosedTerm::Kind::constant, 0.0, 0.0, c};
        double m = std::max(std::abs(c) * std::exp(T), std::numeric_limits<double>::min());
        return make_closed({term}, 1.0, m, T);
    }
    static FunctionHandle exp_decay(double lambda, cplx amp = 1.0) {
        if (!(lambda > 0.0)) throw DomainError("exp_decay: lambda must be positive");
        ClosedTerm term{ClosedTerm::Kind::exp_decay, 0.0, lambda, amp};
        return make_closed({term}, lambda, nonzero(std::abs(amp)),
                           std::numeric_limits<double>::infinity());
    }
    static FunctionHandle poly_exp(double p, double lambda, cplx amp = 1.0) {
        if (!(lambda > 0.0)) throw DomainError("poly_exp: lambda must be positive");
        if (!(p >= 0.0)) throw DomainError("poly_exp: power must be nonnegative");
        // sup_x x^p exp(-lambda x / 2) = (2p/lambda)^p e^{-p}
        double m = p == 0.0 ? 1.0 : std::pow(2.0 * p / lambda, p) * std::exp(-p);
        ClosedTerm term{ClosedTerm::Kind::poly_exp, p, lambda, amp};
        return make_closed({term}, 0.5 * lambda, nonzero(std::abs(amp) * m * (1.0 + 1e-12)),
                           std::numeric_limits<double>::infinity());
    }
    static FunctionHandle gaussian_x(double lambda, cplx amp = 1.0) {
        if (!(lambda > 0.0)) throw DomainError("gaussian_x: lambda must be positive");
        // sup_x x exp(x - lambda x^2), attained at the root of 1 + x - 2 lambda x^2
        double xs = (1.0 + std::sqrt(1.0 + 8.0 * lambda)) / (4.0 * lambda);
        double m = xs * std::exp(xs - lambda * xs * xs);
        ClosedTerm term{ClosedTerm::Kind::gaussian_x, 0.0, lambda, amp};
        return make_closed({term}, 1.0, nonzero(std::abs(amp) * m * (1.0 + 1e-9)),
                           std::numeric_limits<double>::infinity());
    }

    cplx operator()(double x) const { return (*f_)(x); }

    double decay_rate() const { return delta_; }
    double decay_amp() const { return amp_; }
    double probe_end() const { return probe_end_; }
    bool has_closed_form() const { return closed_; }
    bool is_zero() const { return closed_ && terms_.empty(); }
    const std::vector<ClosedTerm>& terms() const { return terms_; }

    friend FunctionHandle operator+(const FunctionHandle& a, const FunctionHandle& b) {
        double delta = std::min(a.delta_, b.delta_);
        double m = a.amp_ + b.amp_;
        double end = std::min(a.probe_end_, b.probe_end_);
        if (a.closed_ && b.closed_) {
            auto terms = a.terms_;
            terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
            return make_closed(std::move(terms), delta, m, end);
        }
        auto fa = a.f_, fb = b.f_;
        return FunctionHandle([fa, fb](double x) { return (*fa)(x) + (*fb)(x); }, delta, m, end);
    }

    FunctionHandle scaled(cplx c) const {
        double m = nonzero(amp_ * std::abs(c));
        if (closed_) {
            auto terms = terms_;
            for (auto& t : terms) t.amp *= c;
            return make_closed(std::move(terms), delta_, m, probe_end_);
        }
        auto f = f_;
        return FunctionHandle([f, c](double x) { return c * (*f)(x); }, delta_, m, probe_end_);
    }

private:
    FunctionHandle(Eval f, double decay_rate, double decay_amp, double probe_end,
                   std::vector<ClosedTerm> terms, bool closed)
        : f_(std::make_shared<const Eval>(std::move(f))),
          delta_(decay_rate),
          amp_(decay_amp),
          probe_end_(probe_end),
          terms_(std::move(terms)),
          closed_(closed) {
        if (!(delta_ > 0.0) || !std::isfinite(delta_))
            throw DomainError("FunctionHandle: decay rate must be positive and finite");
        if (!(amp_ > 0.0) || !std::isfinite(amp_))
            throw DomainError("FunctionHandle: decay amplitude must be positive and finite");
        probe();
    }

    static double nonzero(double m) { return std::max(m, std::numeric_limits<double>::min()); }

    static FunctionHandle make_closed(std::vector<ClosedTerm> terms, double delta, double m,
                                      double end) {
        auto copy = terms;
        Eval f = [copy](double x) {
            cplx s = 0.0;
            for (const auto& t : copy) s += t(x);
            return s;
        };
        return FunctionHandle(std::move(f), delta, m, end, std::move(terms), true);
    }

    void probe() const {
        const double lo = 1e-3;
        double hi = std::min(probe_end_, 40.0 / delta_);
        if (hi <= lo) hi = probe_end_;
        for (int i = 0; i < 64; ++i) {
            double x = hi <= lo ? hi : lo * std::pow(hi / lo, i / 63.0);
            double bound = 1.01 * amp_ * std::exp(-delta_ * x);
            double v = std::abs((*f_)(x));
            if (!(v <= bound)) {
                std::ostringstream os;
                os << "declared decay bound violated at x=" << x << ": |f|=" << v
                   << " > " << bound;
                throw DecayError(os.str());
            }
        }
    }

    std::shared_ptr<const Eval> f_;
    double delta_;
    double amp_;
    double probe_end_;
    std::vector<ClosedTerm> terms_;
    bool closed_;
};

// Piecewise-linear interpolant of samples on a strictly increasing grid.
class SampledFunction {
public:
    SampledFunction(std::vector<double> grid, std::vector<cplx> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (grid_.size() < 2) throw DomainError("SampledFunction: need at least 2 points");
        if (grid_.size() != values_.size())
            throw DomainError("SampledFunction: grid and values differ in length");
        for (std::size_t i = 1; i < grid_.size(); ++i)
            if (!(grid_[i] > grid_[i - 1]))
                throw DomainError("SampledFunction: grid must be strictly increasing");
    }

    cplx operator()(double x) const {
        double a = grid_.front(), b = grid_.back();
        double slack = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
        if (x < a - slack || x > b + slack) {
            std::ostringstream os;
            os << "SampledFunction evaluated at x=" << x << " outside [" << a << ", " << b << "]";
            throw ResolutionError(os.str());
        }
        x = std::clamp(x, a, b);
        auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
        std::size_t j = it == grid_.end() ? grid_.size() - 1 : std::size_t(it - grid_.begin());
        if (j == 0) j = 1;
        double x0 = grid_[j - 1], x1 = grid_[j];
        double s = (x - x0) / (x1 - x0);
        return values_[j - 1] * (1.0 - s) + values_[j] * s;
    }

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<cplx>& values() const { return values_; }
    double lower() const { return grid_.front(); }
    double upper() const { return grid_.back(); }

private:
    std::vector<double> grid_;
    std::vector<cplx> values_;
};

}  // namespace fracutm
