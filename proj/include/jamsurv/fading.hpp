#pragma once

#include "jamsurv/scenario.hpp"

namespace jamsurv {

// Distribution layer for the suspicious link. gamma is an SNR/SINR threshold
// at the receiver; every function throws DomainError for gamma < 0.

/// P(g_a P / sigma_a^2 <= gamma) for one unjammed channel.
double cdf_snr(const ScenarioParams& params, double gamma);

/// P(g_a P / (g_c q + sigma_a^2) <= gamma) for one channel jammed with power q.
double cdf_sinr_jammed(const ScenarioParams& params, double q, double gamma);

/// CDF of the best of `channels` unjammed channels; channels = -1 means N.
double cdf_best_unjammed(const ScenarioParams& params, double gamma, int channels = -1);

/// CDF of the best channel when the first strategy.jammed_count() channels
/// carry the strategy's powers and the remaining N-n are unjammed. A passive
/// strategy gives cdf_best_unjammed. Evaluated in log space for N > 16.
double cdf_best_overall(const ScenarioParams& params, const JammingStrategy& strategy, double gamma);

}  // namespace jamsurv
