#include "jamsurv/owngoal.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "jamsurv/errors.hpp"
#include "jamsurv/specfun.hpp"

namespace jamsurv {

namespace {

using Ext = long double;

constexpr double kTruncation = 40.0;
constexpr double kAbsTolerance = 1e-10;
// floor of double-precision Gauss-Kronrod; tighter requests bisect to max depth
constexpr double kRelTolerance = 1e-12;
constexpr double kSegmentAbsTarget = 1e-14;

void require_jammed_count(const ScenarioParams& p, int n) {
    if (n < 1 || n > p.n_channels - 1) {
        throw DomainError("jammed channel count must lie in [1, N-1], got " + std::to_string(n));
    }
}

Ext binomial(int n, int k) {
    Ext r = 1.0L;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

struct KahanSum {
    Ext sum = 0.0L;
    Ext carry = 0.0L;
    void add(Ext v) {
        const Ext y = v - carry;
        const Ext t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

std::vector<double> breakpoints(double c) {
    // the jammed-channel factor 1/(1+ct) varies on the scale 1/(1+c)
    std::vector<double> pts{0.0};
    for (double s = 1e-3 / (1.0 + c); s < kTruncation; s *= 4.0) {
        pts.push_back(s);
    }
    pts.push_back(kTruncation);
    return pts;
}

}  // namespace

OwnGoalValue rho_two_channel(const ScenarioParams& params, double q) {
    if (params.n_channels != 2) {
        throw DomainError("rho_two_channel requires N = 2, got N = " + std::to_string(params.n_channels));
    }
    if (!(q > 0.0)) {
        throw DomainError("rho_two_channel requires q > 0");
    }
    const double x = 2.0 * params.lambda_c * params.noise_sr / q;
    return {0.5 * x * e1_scaled(x), OwnGoalMethod::closed_form_two_channel, 0.0};
}

OwnGoalValue rho_multi_sum(const ScenarioParams& params, int n) {
    require_jammed_count(params, n);
    if (!(params.jam_budget > 0.0)) {
        throw DomainError("rho_multi_sum requires Q_max > 0");
    }
    const int N = params.n_channels;
    const Ext a = static_cast<Ext>(params.lambda_a) * params.noise_sr / params.tx_power;
    const Ext b = static_cast<Ext>(params.lambda_a) * params.jam_budget /
                  (static_cast<Ext>(n) * params.lambda_c * params.tx_power);

    // b^-j (k a)^{j-1} e^x Gamma(1-j, x) with x = k a / b regroups exactly as
    // [x^j e^x Gamma(1-j, x)] / (k a), which stays in (0, 1/(k a)).
    KahanSum acc;
    for (int i = 0; i <= N - n - 1; ++i) {
        for (int j = 1; j <= n; ++j) {
            const int k = 1 + i + j;
            const Ext x = k * a / b;
            const Ext magnitude = binomial(N - n - 1, i) * binomial(n, j) *
                                  detail::power_scaled_upper_gamma(j, x) / (k * a);
            acc.add(((i + j + 1) % 2 == 0) ? magnitude : -magnitude);
        }
    }
    const Ext rho = (N - n) * a * acc.sum;
    return {static_cast<double>(rho), OwnGoalMethod::closed_form_sum, 0.0};
}

OwnGoalValue rho_quadrature(const ScenarioParams& params, int n) {
    require_jammed_count(params, n);
    if (!(params.jam_budget >= 0.0)) {
        throw DomainError("rho_quadrature requires Q_max >= 0");
    }
    const int N = params.n_channels;
    const int unjammed_minus_one = N - n - 1;
    const double c = params.jam_budget / (n * params.lambda_c * params.noise_sr);

    auto integrand = [&](double t) {
        const double e = std::exp(-t);
        const double y = e / (1.0 + c * t);
        const double pick_jammed = -std::expm1(n * std::log1p(-y));
        const double rest = unjammed_minus_one == 0 ? 1.0 : std::pow(-std::expm1(-t), unjammed_minus_one);
        return pick_jammed * e * rest;
    };

    const std::vector<double> pts = breakpoints(c);
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
        // the rule's error floor is absolute, so small segments get a looser relative target
        const double rough = std::abs(Rule::integrate(integrand, pts[k], pts[k + 1], 0));
        const double tol = std::max(kRelTolerance, kSegmentAbsTarget / std::max(rough, 1e-300));
        double err = 0.0;
        total += Rule::integrate(integrand, pts[k], pts[k + 1], 15, tol, &err);
        total_err += err;
    }
    const double tail = static_cast<double>(n) * std::exp(-2.0 * kTruncation) / 2.0;
    const double abs_error = (N - n) * (total_err + tail);
    if (!(abs_error <= kAbsTolerance)) {
        throw NumericalError("rho_quadrature: error estimate " + std::to_string(abs_error) + " exceeds tolerance");
    }
    return {(N - n) * total, OwnGoalMethod::quadrature, abs_error};
}

}  // namespace jamsurv
