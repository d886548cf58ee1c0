#pragma once

#include <functional>

namespace jamsurv {

struct RootOptions {
    double f_tol = 1e-12;      ///< accept when |f(x)| <= f_tol ...
    double x_rel_tol = 1e-12;  ///< ... and the bracket width <= x_rel_tol * |x|
    int max_iterations = 200;
};

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
};

/// Root of a continuous f between lo and hi (either order) where the endpoint values differ in sign.
/// Bisection, with a secant (false-position) step once the bracket is narrow
/// and the previous step halved it. Throws NumericalError when the endpoints
/// do not straddle a root or the tolerances are not met in max_iterations.
RootResult bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                          const RootOptions& options = {});

}  // namespace jamsurv
