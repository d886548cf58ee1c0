#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jamsurv/rng.hpp"
#include "jamsurv/scenario.hpp"

namespace jamsurv {

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    /// |value - reference| in standard errors (inf when std_error is 0 and they differ).
    [[nodiscard]] double z_score(double reference) const;
};

/// One fading block as the transmitter sees it.
struct BlockDraw {
    int chosen = 0;             ///< channel the transmitter hops to
    double sinr = 0.0;          ///< SINR (or SNR) of that channel at the receiver
    double monitor_rate = 0.0;  ///< log2(1 + g_b P / sigma_b^2) on that channel
    bool jammed = false;        ///< own goal: the chosen channel is jammed
};

enum class Execution { serial, parallel };

struct SimulationConfig {
    std::uint64_t seed = 1;
    std::uint64_t samples = 1'000'000;
    Execution execution = Execution::parallel;
};

/// Blocks per RNG substream. Substream k covers blocks [k*kChunkBlocks, (k+1)*kChunkBlocks).
inline constexpr std::uint64_t kChunkBlocks = 1ULL << 16;

/// Draws g_a for all N channels, g_c for the jammed ones, and g_b for the
/// chosen channel (always N + n + 1 exponentials, in that order).
BlockDraw simulate_block(const ScenarioParams& params, const JammingStrategy& strategy, StreamRng& rng);

/// Raw counts over `samples` blocks.
struct BlockTally {
    std::uint64_t blocks = 0;
    std::uint64_t own_goals = 0;
    std::uint64_t successes = 0;     ///< not own goal and monitor SNR >= 2^R - 1
    std::vector<double> best_sinr;   ///< per block, in block order (when requested)

    bool operator==(const BlockTally&) const = default;
};

/// Simulation kernel. `rate` is the suspicious rate used to score monitor
/// success. The serial and parallel paths give bit-identical tallies.
BlockTally simulate_blocks(const ScenarioParams& params, const JammingStrategy& strategy, double rate,
                           const SimulationConfig& config, bool keep_sinr);

namespace reference {
/// Plain serial loop over blocks; the reproducibility anchor for the parallel kernel.
BlockTally simulate_blocks(const ScenarioParams& params, const JammingStrategy& strategy, double rate,
                           std::uint64_t seed, std::uint64_t samples, bool keep_sinr);
}  // namespace reference

/// Fraction of blocks where a jammed channel is chosen (binomial standard error).
MonteCarloEstimate estimate_own_goal(const ScenarioParams& params, const JammingStrategy& strategy,
                                     const SimulationConfig& config);

/// Empirical delta-quantile of log2(1 + gamma_best), order statistic
/// ceil(delta M). The standard error is half the distance between the order
/// statistics one binomial standard deviation either side. samples >= 1e4.
MonteCarloEstimate estimate_rate(const ScenarioParams& params, const JammingStrategy& strategy,
                                 const SimulationConfig& config);

enum class RateSource { analytic, empirical };

/// Fraction of blocks the monitor decodes: not an own goal and
/// log2(1 + g_b P / sigma_b^2) >= R. R comes from the analytic solver (or the
/// empirical quantile). samples >= 1e4.
MonteCarloEstimate estimate_phi(const ScenarioParams& params, const JammingStrategy& strategy,
                                const SimulationConfig& config, RateSource source = RateSource::analytic);

/// All three estimates from one pass; phi is scored at `rate` (analytic when absent).
struct LinkSimulation {
    MonteCarloEstimate own_goal;
    MonteCarloEstimate rate;
    MonteCarloEstimate phi;
};
LinkSimulation simulate_link(const ScenarioParams& params, const JammingStrategy& strategy,
                             const SimulationConfig& config, std::optional<double> rate = std::nullopt);

/// Analytic rate of a strategy: passive_rate(N) when passive, else jammed_rate.
double analytic_rate(const ScenarioParams& params, const JammingStrategy& strategy);

}  // namespace jamsurv
