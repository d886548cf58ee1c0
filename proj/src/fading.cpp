#include "jamsurv/fading.hpp"

#include <cmath>
#include <string>

#include "jamsurv/errors.hpp"

namespace jamsurv {

namespace {

constexpr int kLogSpaceChannels = 16;

void require_threshold(double gamma) {
    if (!(gamma >= 0.0)) {
        throw DomainError("SINR threshold must be >= 0, got " + std::to_string(gamma));
    }
}

// P(jammed SINR > gamma)
double jammed_tail(const ScenarioParams& p, double q, double gamma) {
    const double e = std::exp(-p.lambda_a * p.noise_sr * gamma / p.tx_power);
    const double lp = p.lambda_c * p.tx_power;
    return lp * e / (lp + p.lambda_a * q * gamma);
}

double unjammed_log_cdf(const ScenarioParams& p, double gamma) {
    return std::log(-std::expm1(-p.lambda_a * p.noise_sr * gamma / p.tx_power));
}

}  // namespace

double cdf_snr(const ScenarioParams& params, double gamma) {
    require_threshold(gamma);
    return -std::expm1(-params.lambda_a * params.noise_sr * gamma / params.tx_power);
}

double cdf_sinr_jammed(const ScenarioParams& params, double q, double gamma) {
    require_threshold(gamma);
    if (!(q >= 0.0)) {
        throw DomainError("jamming power must be >= 0, got " + std::to_string(q));
    }
    return 1.0 - jammed_tail(params, q, gamma);
}

double cdf_best_unjammed(const ScenarioParams& params, double gamma, int channels) {
    require_threshold(gamma);
    const int m = channels < 0 ? params.n_channels : channels;
    if (m == 0) return 1.0;
    if (gamma == 0.0) return 0.0;
    return std::exp(m * unjammed_log_cdf(params, gamma));
}

double cdf_best_overall(const ScenarioParams& params, const JammingStrategy& strategy, double gamma) {
    require_threshold(gamma);
    const int n = strategy.jammed_count();
    if (n > params.n_channels) {
        throw DomainError("strategy jams more channels than exist");
    }
    if (gamma == 0.0) return 0.0;
    if (params.n_channels > kLogSpaceChannels) {
        double log_cdf = (params.n_channels - n) * unjammed_log_cdf(params, gamma);
        for (double q : strategy.powers()) {
            log_cdf += std::log1p(-jammed_tail(params, q, gamma));
        }
        return std::exp(log_cdf);
    }
    double cdf = std::pow(cdf_snr(params, gamma), params.n_channels - n);
    for (double q : strategy.powers()) {
        cdf *= 1.0 - jammed_tail(params, q, gamma);
    }
    return cdf;
}

}  // namespace jamsurv
