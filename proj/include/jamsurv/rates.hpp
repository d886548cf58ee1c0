#pragma once

#include "jamsurv/scenario.hpp"

namespace jamsurv {

/// Root of the outage equation, in bits/s/Hz.
struct RateSolution {
    double rate = 0.0;
    double residual = 0.0;  ///< outage(rate) - delta at the returned root
    int iterations = 0;
};

/// Rate that holds outage exactly at delta when the receiver picks the best of
/// `effective_n` i.i.d. unjammed channels:
///   log2(1 + P/(lambda_a sigma_a^2) ln(1/(1 - delta^{1/effective_n}))).
double passive_rate(const ScenarioParams& params, int effective_n);

/// Outage probability P(log2(1 + gamma_best) < R) seen by the receiver under
/// `strategy`, written in u = 2^R - 1. Strictly increasing in u.
double outage_probability(const ScenarioParams& params, const JammingStrategy& strategy, double u);

/// Solves outage_probability(u) = delta for a jamming strategy with
/// 1 <= n <= N-1 jammed channels. The root is bracketed by the passive rates
/// for N-n channels (infinite jamming) and N channels (no jamming).
RateSolution jammed_rate(const ScenarioParams& params, const JammingStrategy& strategy);

/// jammed_rate with Q_max split equally over n channels.
RateSolution jammed_rate_equal(const ScenarioParams& params, int n);

}  // namespace jamsurv
