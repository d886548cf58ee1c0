#pragma once

#include <optional>
#include <vector>

#include "jamsurv/scenario.hpp"

namespace jamsurv {

/// One scheme evaluated on one link direction.
struct LinkEvaluation {
    double rho = 0.0;                 ///< own-goal probability (0 when passive)
    double rate = 0.0;                ///< suspicious-link rate R, bits/s/Hz
    double non_outage_monitor = 0.0;  ///< P(monitor can decode at rate R)
    double phi = 0.0;                 ///< eavesdropping success probability
};

enum class Scheme { passive, jamming };

struct ProfileEntry {
    int n = 0;
    LinkEvaluation eval;
};

struct OptimizationOutcome {
    Scheme chosen_scheme = Scheme::passive;
    std::optional<int> n_star;  ///< absent when passive
    double phi_star = 0.0;
    LinkEvaluation passive;
    std::vector<ProfileEntry> profile;  ///< n = 1..N-1

    /// Best jamming count regardless of whether jamming beats passive.
    [[nodiscard]] int best_jamming_n() const;
};

enum class Regime { low_budget, interior, high_budget };

struct RegimeThresholds {
    double q_lower = 0.0;  ///< below: one jammed channel is optimal in both directions
    double q_upper = 0.0;  ///< above: N-1 jammed channels are optimal in both directions
    double q_lower_ab = 0.0;
    double q_lower_ba = 0.0;
    double q_upper_ab = 0.0;
    double q_upper_ba = 0.0;
};

struct TwoWayOutcome {
    Scheme chosen_scheme = Scheme::passive;
    std::optional<int> n_star;
    double phi_minmax = 0.0;  ///< unweighted min over directions at the decision
    double phi_passive_min = 0.0;
    std::vector<ProfileEntry> profile_ab;
    std::vector<ProfileEntry> profile_ba;
    LinkEvaluation passive_ab;
    LinkEvaluation passive_ba;
    OptimizationOutcome one_way_ab;  ///< benchmark: optimize A->B alone
    OptimizationOutcome one_way_ba;  ///< benchmark: optimize B->A alone
    std::optional<Regime> regime;
    std::optional<RegimeThresholds> thresholds;
};

/// Monitor non-outage probability exp(-lambda_b sigma_b^2 (2^R - 1) / P).
double monitor_non_outage(const ScenarioParams& params, double rate);

/// Passive eavesdropping over all N channels.
LinkEvaluation phi_passive(const ScenarioParams& params);

/// Jamming n channels with Q_max/n each (1 <= n <= N-1).
LinkEvaluation phi_jamming(const ScenarioParams& params, int n);

/// Budget at which two-channel jamming ties passive eavesdropping. Jamming
/// wins iff Q_max > q_threshold. Requires N = 2. Throws NumericalError
/// naming the dominant scheme when no crossing exists in
/// [1e-9, 1e12] * tx_power.
double q_threshold(const ScenarioParams& params);

/// Exhaustive search over n = 1..N-1 against passive. Ties go to smaller n,
/// and passive wins an exact tie with jamming.
OptimizationOutcome optimize_one_way(const ScenarioParams& params);

/// Max-min over both directions with one shared jamming decision. Weights
/// scale each direction's phi inside the comparison only.
TwoWayOutcome optimize_two_way(const ScenarioParams& params, double weight_ab = 1.0, double weight_ba = 1.0,
                               bool compute_regime = false);

/// Budgets where phi(1) = phi(2) and phi(N-2) = phi(N-1), per direction;
/// q_lower is the smaller of the first pair, q_upper the larger of the
/// second. Requires N >= 3.
RegimeThresholds regime_thresholds(const ScenarioParams& params);

Regime classify_regime(double q_max, const RegimeThresholds& thresholds);

const char* to_string(Scheme s);
const char* to_string(Regime r);

}  // namespace jamsurv
