#include "jamsurv/scenario.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "jamsurv/errors.hpp"

namespace jamsurv {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
    }
}

}  // namespace

void ScenarioParams::validate() const {
    if (n_channels < 2) {
        throw DomainError("n_channels must be >= 2, got " + std::to_string(n_channels));
    }
    require_positive(lambda_a, "lambda_a");
    require_positive(lambda_b, "lambda_b");
    require_positive(lambda_c, "lambda_c");
    require_positive(tx_power, "tx_power");
    require_positive(noise_sr, "noise_sr");
    require_positive(noise_monitor, "noise_monitor");
    require_positive(noise_st, "noise_st");
    if (!(jam_budget >= 0.0) || std::isnan(jam_budget)) {
        throw DomainError("jam_budget must be >= 0, got " + std::to_string(jam_budget));
    }
    if (!(outage_target > 0.0 && outage_target < 1.0)) {
        throw DomainError("outage_target must lie in (0,1), got " + std::to_string(outage_target));
    }
}

ScenarioParams ScenarioParams::with_budget(double q_max) const {
    ScenarioParams p = *this;
    p.jam_budget = q_max;
    return p;
}

JammingStrategy::JammingStrategy(std::vector<double> powers) : powers_(std::move(powers)) {
    if (powers_.empty()) {
        throw DomainError("a jamming strategy needs at least one jammed channel");
    }
    for (double q : powers_) {
        if (!(q >= 0.0)) {
            throw DomainError("jamming powers must be nonnegative");
        }
    }
}

JammingStrategy JammingStrategy::equal_split(int n, double q_max) {
    if (n < 1) {
        throw DomainError("equal_split needs n >= 1, got " + std::to_string(n));
    }
    if (!(q_max >= 0.0)) {
        throw DomainError("jamming budget must be nonnegative");
    }
    return JammingStrategy(std::vector<double>(static_cast<std::size_t>(n), q_max / n));
}

double JammingStrategy::total_power() const {
    return std::accumulate(powers_.begin(), powers_.end(), 0.0);
}

void JammingStrategy::validate_for(const ScenarioParams& params) const {
    const int n = jammed_count();
    if (n < 1 || n > params.n_channels - 1) {
        throw DomainError("jammed channel count must lie in [1, N-1], got " + std::to_string(n));
    }
    // equal splits may overshoot the budget by rounding
    if (total_power() > params.jam_budget * (1.0 + 1e-12) + 1e-12) {
        throw DomainError("jamming powers exceed the budget");
    }
}

void Placement::validate() const {
    if (squared_distance(st, sr) <= 0.0 || squared_distance(st, monitor) <= 0.0 ||
        squared_distance(monitor, sr) <= 0.0) {
        throw DomainError("placement has coincident points");
    }
}

double from_db(double value_db) { return std::pow(10.0, value_db / 10.0); }

double to_db(double linear) { return 10.0 * std::log10(linear); }

double squared_distance(Point p, Point q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

LinkRates lambdas_from_placement(const Placement& placement) {
    placement.validate();
    return {squared_distance(placement.st, placement.sr),
            squared_distance(placement.st, placement.monitor),
            squared_distance(placement.monitor, placement.sr)};
}

ScenarioParams apply_placement(const ScenarioParams& base, const Placement& placement) {
    const LinkRates r = lambdas_from_placement(placement);
    ScenarioParams p = base;
    p.lambda_a = r.lambda_a;
    p.lambda_b = r.lambda_b;
    p.lambda_c = r.lambda_c;
    return p;
}

ScenarioParams swap_direction(const ScenarioParams& params) {
    ScenarioParams p = params;
    std::swap(p.lambda_b, p.lambda_c);
    return p;
}

}  // namespace jamsurv
