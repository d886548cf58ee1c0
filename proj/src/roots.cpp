#include "jamsurv/roots.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "jamsurv/errors.hpp"

namespace jamsurv {

RootResult bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                          const RootOptions& options) {
    if (hi < lo) std::swap(lo, hi);
    if (!(lo < hi)) {
        throw NumericalError("bracketed_root: empty bracket");
    }
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (std::isnan(f_lo) || std::isnan(f_hi)) {
        throw NumericalError("bracketed_root: function is NaN at a bracket endpoint");
    }
    if (f_lo == 0.0) return {lo, 0.0, 0};
    if (f_hi == 0.0) return {hi, 0.0, 0};
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw NumericalError("bracketed_root: endpoints do not straddle a root (f(lo)=" +
                             std::to_string(f_lo) + ", f(hi)=" + std::to_string(f_hi) + ")");
    }

    RootResult best = std::fabs(f_lo) < std::fabs(f_hi) ? RootResult{lo, f_lo, 0}
                                                        : RootResult{hi, f_hi, 0};
    bool last_halved = false;
    double prev_width = hi - lo;
    for (int it = 1; it <= options.max_iterations; ++it) {
        const double width = hi - lo;
        double x = 0.5 * (lo + hi);
        const double scale = std::max(std::fabs(lo), std::fabs(hi));
        if (last_halved && width < 1e-3 * scale) {
            const double s = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            if (s > lo && s < hi) x = s;
        }
        if (x <= lo || x >= hi) {
            // bracket is at floating-point resolution
            best.iterations = it;
            if (std::fabs(best.fx) <= options.f_tol) return best;
            break;
        }
        const double fx = f(x);
        if (std::isnan(fx)) {
            throw NumericalError("bracketed_root: function returned NaN");
        }
        if (std::fabs(fx) < std::fabs(best.fx)) best = {x, fx, it};
        best.iterations = it;
        if (fx == 0.0) return best;
        if ((fx > 0.0) == (f_lo > 0.0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        const double new_width = hi - lo;
        last_halved = new_width <= 0.5 * prev_width;
        prev_width = new_width;
        if (std::fabs(best.fx) <= options.f_tol &&
            new_width <= options.x_rel_tol * std::max(std::fabs(best.x), 1e-300)) {
            return best;
        }
    }
    throw NumericalError("bracketed_root: no convergence in " + std::to_string(options.max_iterations) +
                         " iterations (best |f| = " + std::to_string(std::fabs(best.fx)) + ")");
}

}  // namespace jamsurv
