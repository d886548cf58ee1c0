#pragma once

#include "jamsurv/scenario.hpp"

namespace jamsurv {

enum class OwnGoalMethod { closed_form_two_channel, closed_form_sum, quadrature };

/// Probability that the transmitter picks one of the jammed channels.
struct OwnGoalValue {
    double rho = 0.0;
    OwnGoalMethod method = OwnGoalMethod::quadrature;
    double abs_error = 0.0;  ///< error estimate (quadrature only)
};

/// Two-channel closed form with one channel jammed at power q:
///   rho = (lambda_c sigma_a^2 / q) e^{x} E1(x),  x = 2 lambda_c sigma_a^2 / q.
/// Requires N = 2 and q > 0.
OwnGoalValue rho_two_channel(const ScenarioParams& params, double q);

/// Double binomial sum over upper incomplete gammas for n of N channels
/// jammed with Q_max/n each. Alternating, so it loses accuracy as N grows;
/// kept as a cross-check (long double, compensated summation).
/// Requires 1 <= n <= N-1 and Q_max > 0.
OwnGoalValue rho_multi_sum(const ScenarioParams& params, int n);

/// Integral form
///   rho(n) = (N-n) int_0^inf [1 - (1 - e^-t/(1+ct))^n] e^-t (1-e^-t)^{N-n-1} dt
/// with t = lambda_a sigma_a^2 x / P and c = Q_max / (n lambda_c sigma_a^2),
/// by adaptive Gauss-Kronrod on [0, 40] (absolute error <= 1e-10; the
/// truncated tail is below (N-n) n e^-80). Q_max = 0 gives n/N.
/// This is the production path.
OwnGoalValue rho_quadrature(const ScenarioParams& params, int n);

}  // namespace jamsurv
