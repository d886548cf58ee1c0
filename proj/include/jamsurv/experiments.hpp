#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jamsurv/montecarlo.hpp"
#include "jamsurv/scenario.hpp"
#include "jamsurv/table.hpp"

namespace jamsurv {

enum class SweepKind { phi_vs_q, profile_vs_n, twoway_profile, phi_vs_gain, placement_grid, twoway_path };

std::optional<SweepKind> parse_sweep_kind(const std::string& name);
const char* to_string(SweepKind kind);

/// Evenly spaced grid; log_scale spaces the logarithms evenly.
struct Axis {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;  ///< 0 means "not given"
    bool log_scale = false;

    [[nodiscard]] bool given() const { return count != 0; }
    [[nodiscard]] std::vector<double> values() const;
    void validate(const char* name) const;
};

/// One parameterized sweep. `axis` is interpreted per kind:
///   phi_vs_q        jamming budget in dB
///   phi_vs_gain     mean gain 1/lambda_b = 1/lambda_c of the monitor links (linear)
///   placement_grid  monitor x (axis_y: monitor y)
///   twoway_path     fraction along path_from -> path_to
/// profile_vs_n and twoway_profile iterate n = 0..N-1 (n = 0 is passive).
struct SweepSpec {
    SweepKind kind = SweepKind::profile_vs_n;
    ScenarioParams base;
    Axis axis;
    Axis axis_y;
    std::vector<double> q_db_list;  ///< profile_vs_n: one profile per budget (empty: base budget)
    std::vector<int> channel_counts;  ///< phi_vs_gain: one curve per N
    Point st{3.0, 4.5};
    Point sr{7.0, 4.5};
    Point user_a{1.0, 1.0};
    Point user_b{3.0, 1.0};
    Point path_from{0.0, 0.0};
    Point path_to{4.0, 0.0};
    bool validation = false;  ///< add Monte Carlo columns
    SimulationConfig monte_carlo;
    bool strict = false;  ///< rethrow the first failing grid point instead of marking the row
    Execution execution = Execution::parallel;

    void validate() const;
};

/// Setup of the corresponding numerical study; phi_vs_gain leaves its axis
/// unset because its endpoints must be chosen explicitly.
SweepSpec default_sweep(SweepKind kind);

/// One row per grid point in grid order. Every table ends with `status`
/// ("ok" / "failed") and `error` columns. Grid points run in parallel; the
/// output does not depend on the schedule.
Table run_sweep(const SweepSpec& spec);

/// Line plot (heatmap of n* for placement_grid) of a table produced by run_sweep.
void write_sweep_svg(std::ostream& out, SweepKind kind, const Table& table);

}  // namespace jamsurv
