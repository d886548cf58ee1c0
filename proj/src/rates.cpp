#include "jamsurv/rates.hpp"

#include <cmath>
#include <string>

#include "jamsurv/errors.hpp"
#include "jamsurv/fading.hpp"
#include "jamsurv/roots.hpp"

namespace jamsurv {

namespace {

constexpr double kBracketInflation = 1e-9;

// u at which the best of m unjammed channels is in outage with probability delta
double passive_threshold(const ScenarioParams& p, int m) {
    const double tail = -std::log1p(-std::pow(p.outage_target, 1.0 / m));
    return p.tx_power / (p.lambda_a * p.noise_sr) * tail;
}

}  // namespace

double passive_rate(const ScenarioParams& params, int effective_n) {
    if (!(params.outage_target > 0.0 && params.outage_target < 1.0)) {
        throw DomainError("outage_target must lie in (0,1)");
    }
    if (effective_n < 1) {
        throw DomainError("passive_rate needs effective_n >= 1, got " + std::to_string(effective_n));
    }
    return std::log2(1.0 + passive_threshold(params, effective_n));
}

double outage_probability(const ScenarioParams& params, const JammingStrategy& strategy, double u) {
    return cdf_best_overall(params, strategy, u);
}

RateSolution jammed_rate(const ScenarioParams& params, const JammingStrategy& strategy) {
    params.validate();
    strategy.validate_for(params);
    const int n = strategy.jammed_count();
    const double delta = params.outage_target;

    const double u_lo = passive_threshold(params, params.n_channels - n) * (1.0 - kBracketInflation);
    const double u_hi = passive_threshold(params, params.n_channels) * (1.0 + kBracketInflation);

    auto residual = [&](double u) { return outage_probability(params, strategy, u) - delta; };
    RootResult root;
    try {
        root = bracketed_root(residual, u_lo, u_hi, {.f_tol = 1e-13, .x_rel_tol = 1e-12, .max_iterations = 200});
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("jammed_rate: ") + e.what());
    }
    return {std::log2(1.0 + root.x), root.fx, root.iterations};
}

RateSolution jammed_rate_equal(const ScenarioParams& params, int n) {
    return jammed_rate(params, JammingStrategy::equal_split(n, params.jam_budget));
}

}  // namespace jamsurv
