#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jamsurv {

/// Physical constants of one surveillance setup. All powers and noise levels
/// are linear. Gains are exponential with the given rates, so the mean gain of
/// each link is 1/lambda.
struct ScenarioParams {
    int n_channels = 8;
    double lambda_a = 1.0;  ///< suspicious link ST -> SR
    double lambda_b = 1.0;  ///< eavesdropping link ST -> monitor
    double lambda_c = 3.0;  ///< jamming link monitor -> SR
    double tx_power = 10.0;
    double jam_budget = 100.0;
    double noise_sr = 1.0;
    double noise_monitor = 1.0;
    double noise_st = 1.0;  ///< stored, never enters a formula
    double outage_target = 0.05;

    /// Throws DomainError naming the first violated constraint.
    void validate() const;

    /// Copy with a different jamming budget.
    [[nodiscard]] ScenarioParams with_budget(double q_max) const;

    bool operator==(const ScenarioParams&) const = default;
};

/// Number of jammed channels and the power on each. The first `jammed_count`
/// channels are the jammed ones.
class JammingStrategy {
public:
    JammingStrategy() = default;  // passive: nothing jammed

    /// Throws DomainError when a power is negative or the list is empty.
    explicit JammingStrategy(std::vector<double> powers);

    static JammingStrategy equal_split(int n, double q_max);
    static JammingStrategy passive() { return {}; }

    [[nodiscard]] int jammed_count() const { return static_cast<int>(powers_.size()); }
    [[nodiscard]] std::span<const double> powers() const { return powers_; }
    [[nodiscard]] double total_power() const;
    [[nodiscard]] bool is_passive() const { return powers_.empty(); }

    /// Checks 1 <= n <= N-1 and sum(powers) <= Q_max + 1e-12.
    void validate_for(const ScenarioParams& params) const;

private:
    std::vector<double> powers_;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

/// Positions of the suspicious transmitter, receiver and the monitor.
struct Placement {
    Point st;
    Point sr;
    Point monitor;

    void validate() const;
};

struct LinkRates {
    double lambda_a;
    double lambda_b;
    double lambda_c;
};

/// dB to linear power ratio.
double from_db(double value_db);
double to_db(double linear);

double squared_distance(Point p, Point q);

/// Inverse-square path loss: the mean gain between two points is 1/d^2, so
/// lambda = d^2. lambda_a from ST-SR, lambda_b from ST-monitor, lambda_c from
/// monitor-SR. Coincident points are rejected.
LinkRates lambdas_from_placement(const Placement& placement);

/// Applies lambdas_from_placement to a copy of `base`.
ScenarioParams apply_placement(const ScenarioParams& base, const Placement& placement);

/// Reverse link direction: eavesdropping and jamming links trade places,
/// the suspicious link is reciprocal.
ScenarioParams swap_direction(const ScenarioParams& params);

}  // namespace jamsurv
