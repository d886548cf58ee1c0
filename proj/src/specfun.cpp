#include "jamsurv/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "jamsurv/errors.hpp"

namespace jamsurv {

namespace {

using Ext = long double;

constexpr Ext kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr Ext kEps = std::numeric_limits<Ext>::epsilon();
constexpr Ext kTiny = std::numeric_limits<Ext>::min() / kEps;
constexpr int kMaxTerms = 20000;

void require_positive_arg(double x, const char* fn) {
    if (!(x > 0.0)) {
        throw DomainError(std::string(fn) + ": argument must be > 0, got " + std::to_string(x));
    }
}

void require_order(int j, const char* fn) {
    if (j < 1) {
        throw DomainError(std::string(fn) + ": order j must be >= 1, got " + std::to_string(j));
    }
}

// E1 by its power series, valid and accurate for 0 < x <= 1.
Ext e1_series(Ext x) {
    Ext sum = 0.0L;
    Ext term = 1.0L;  // (-x)^k / k!
    for (int k = 1; k < kMaxTerms; ++k) {
        term *= -x / k;
        const Ext add = term / k;
        sum += add;
        if (std::fabs(add) < kEps * std::fabs(sum)) break;
    }
    return -kEulerGamma - std::log(x) - sum;
}

// Modified Lentz evaluation of the Legendre continued fraction
//   Gamma(a, x) = e^-x x^a / (x + 1 - a - 1(1-a)/(x + 3 - a - 2(2-a)/(x + 5 - a - ...)))
// returning the bracketed fraction 1/(x + 1 - a - ...).
Ext legendre_fraction(Ext a, Ext x) {
    Ext b = x + 1.0L - a;
    Ext c = 1.0L / kTiny;
    Ext d = 1.0L / b;
    Ext h = d;
    for (int i = 1; i < kMaxTerms; ++i) {
        const Ext an = -static_cast<Ext>(i) * (static_cast<Ext>(i) - a);
        b += 2.0L;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0L / d;
        const Ext del = d * c;
        h *= del;
        if (std::fabs(del - 1.0L) <= kEps) return h;
    }
    throw NumericalError("continued fraction for the incomplete gamma did not converge");
}

// x^j e^x Gamma(1-j, x) = int_0^inf x (1+u)^-j e^{-xu} du.
Ext power_scaled_by_quadrature(int j, Ext x) {
    const double xd = static_cast<double>(x);
    auto f = [&](double u) { return xd * std::exp(-j * std::log1p(u) - xd * u); };
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    double l1 = 0.0;
    const double v = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13, &err, &l1);
    if (!(err <= 1e-11 * std::fabs(v))) {
        throw NumericalError("quadrature fallback for Gamma(1-j, x) did not converge");
    }
    return v;
}

}  // namespace

namespace detail {

Ext e1_scaled_ext(Ext x) {
    if (x <= 1.0L) {
        return std::exp(x) * e1_series(x);
    }
    // Gamma(0, x) = e^-x * fraction
    return legendre_fraction(0.0L, x);
}

Ext power_scaled_upper_gamma(int j, Ext x) {
    if (std::isinf(x)) return 1.0L;
    if (j > kMaxRecurrenceOrder) return power_scaled_by_quadrature(j, x);
    if (x > 1.0L) {
        return x * legendre_fraction(static_cast<Ext>(1 - j), x);
    }
    Ext h = x * e1_scaled_ext(x);
    for (int k = 1; k < j; ++k) {
        h = x * (1.0L - h) / k;
    }
    return h;
}

}  // namespace detail

double e1(double x) {
    require_positive_arg(x, "e1");
    if (x <= 1.0) {
        return static_cast<double>(e1_series(x));
    }
    return static_cast<double>(detail::e1_scaled_ext(x) * std::exp(-static_cast<Ext>(x)));
}

double e1_scaled(double x) {
    require_positive_arg(x, "e1_scaled");
    return static_cast<double>(detail::e1_scaled_ext(x));
}

double upper_gamma_nonpos(int j, double x) {
    require_order(j, "upper_gamma_nonpos");
    require_positive_arg(x, "upper_gamma_nonpos");
    if (j == 1) return e1(x);
    const Ext xe = x;
    const Ext h = detail::power_scaled_upper_gamma(j, xe);
    return static_cast<double>(h * std::exp(-xe - j * std::log(xe)));
}

double upper_gamma_nonpos_scaled(int j, double x) {
    require_order(j, "upper_gamma_nonpos_scaled");
    require_positive_arg(x, "upper_gamma_nonpos_scaled");
    const Ext xe = x;
    const Ext h = detail::power_scaled_upper_gamma(j, xe);
    return static_cast<double>(h * std::exp(-j * std::log(xe)));
}

}  // namespace jamsurv
