#include "jamsurv/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "jamsurv/errors.hpp"
#include "jamsurv/rates.hpp"

namespace jamsurv {

namespace {

constexpr std::uint64_t kMinEstimatorSamples = 10'000;
constexpr int kMaxSimulatedChannels = 256;

void require_samples(std::uint64_t samples) {
    if (samples < kMinEstimatorSamples) {
        throw DomainError("Monte Carlo estimators need at least 1e4 samples, got " + std::to_string(samples));
    }
}

struct ChunkCounts {
    std::uint64_t own_goals = 0;
    std::uint64_t successes = 0;
};

// Blocks [first, first + count) of substream `chunk`. Same draws and the same
// floating-point expressions as simulate_block, without the per-block vector.
ChunkCounts run_chunk(const ScenarioParams& p, const JammingStrategy& strategy, double rate, std::uint64_t seed,
                      std::uint64_t chunk, std::uint64_t count, double* sinr_out) {
    StreamRng rng(seed, chunk);
    const int N = p.n_channels;
    const auto powers = strategy.powers();
    const int n = static_cast<int>(powers.size());
    std::array<double, kMaxSimulatedChannels> ga{};

    ChunkCounts counts;
    for (std::uint64_t b = 0; b < count; ++b) {
        for (int i = 0; i < N; ++i) ga[i] = rng.exponential(p.lambda_a);
        double best = -1.0;
        bool jammed = false;
        for (int i = 0; i < N; ++i) {
            double sinr = ga[i] * p.tx_power / p.noise_sr;
            if (i < n) {
                const double gc = rng.exponential(p.lambda_c);
                sinr = ga[i] * p.tx_power / (gc * powers[i] + p.noise_sr);
            }
            if (sinr > best) {
                best = sinr;
                jammed = i < n;
            }
        }
        const double gb = rng.exponential(p.lambda_b);
        if (jammed) {
            ++counts.own_goals;
        } else if (std::log2(1.0 + gb * p.tx_power / p.noise_monitor) >= rate) {
            ++counts.successes;
        }
        if (sinr_out != nullptr) sinr_out[b] = best;
    }
    return counts;
}

void check_strategy(const ScenarioParams& params, const JammingStrategy& strategy) {
    params.validate();
    if (strategy.jammed_count() > params.n_channels) {
        throw DomainError("strategy jams more channels than exist");
    }
    if (params.n_channels > kMaxSimulatedChannels) {
        throw DomainError("the Monte Carlo kernel supports at most " + std::to_string(kMaxSimulatedChannels) +
                          " channels");
    }
}

MonteCarloEstimate proportion(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed) {
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, seed};
}

MonteCarloEstimate quantile_estimate(std::vector<double>& sinr, double delta, std::uint64_t seed) {
    const std::uint64_t m = sinr.size();
    auto order_stat = [&](std::uint64_t k) {  // 1-based
        k = std::clamp<std::uint64_t>(k, 1, m);
        auto it = sinr.begin() + static_cast<std::ptrdiff_t>(k - 1);
        std::nth_element(sinr.begin(), it, sinr.end());
        return std::log2(1.0 + *it);
    };
    const auto k = static_cast<std::uint64_t>(std::ceil(delta * static_cast<double>(m)));
    const double spread = std::sqrt(static_cast<double>(m) * delta * (1.0 - delta));
    const auto offset = static_cast<std::uint64_t>(std::ceil(spread));
    const double value = order_stat(k);
    const double upper = order_stat(k + offset);
    const double lower = order_stat(k > offset ? k - offset : 1);
    return {value, 0.5 * (upper - lower), m, seed};
}

}  // namespace

double MonteCarloEstimate::z_score(double reference) const {
    const double diff = std::fabs(value - reference);
    if (std_error > 0.0) return diff / std_error;
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

BlockDraw simulate_block(const ScenarioParams& params, const JammingStrategy& strategy, StreamRng& rng) {
    const int N = params.n_channels;
    const auto powers = strategy.powers();
    const int n = static_cast<int>(powers.size());
    std::vector<double> ga(static_cast<std::size_t>(N));
    for (auto& g : ga) g = rng.exponential(params.lambda_a);
    BlockDraw draw;
    draw.sinr = -1.0;
    for (int i = 0; i < N; ++i) {
        double sinr = ga[static_cast<std::size_t>(i)] * params.tx_power / params.noise_sr;
        if (i < n) {
            const double gc = rng.exponential(params.lambda_c);
            sinr = ga[static_cast<std::size_t>(i)] * params.tx_power / (gc * powers[static_cast<std::size_t>(i)] + params.noise_sr);
        }
        if (sinr > draw.sinr) {
            draw.sinr = sinr;
            draw.chosen = i;
        }
    }
    draw.jammed = draw.chosen < n;
    const double gb = rng.exponential(params.lambda_b);
    draw.monitor_rate = std::log2(1.0 + gb * params.tx_power / params.noise_monitor);
    return draw;
}

namespace reference {

BlockTally simulate_blocks(const ScenarioParams& params, const JammingStrategy& strategy, double rate,
                           std::uint64_t seed, std::uint64_t samples, bool keep_sinr) {
    check_strategy(params, strategy);
    BlockTally tally;
    tally.blocks = samples;
    if (keep_sinr) tally.best_sinr.resize(samples);
    std::uint64_t chunk = 0;
    std::optional<StreamRng> rng;
    for (std::uint64_t b = 0; b < samples; ++b) {
        if (b % kChunkBlocks == 0) rng.emplace(seed, chunk++);
        const BlockDraw d = simulate_block(params, strategy, *rng);
        if (d.jammed) {
            ++tally.own_goals;
        } else if (d.monitor_rate >= rate) {
            ++tally.successes;
        }
        if (keep_sinr) tally.best_sinr[b] = d.sinr;
    }
    return tally;
}

}  // namespace reference

BlockTally simulate_blocks(const ScenarioParams& params, const JammingStrategy& strategy, double rate,
                           const SimulationConfig& config, bool keep_sinr) {
    if (config.execution == Execution::serial) {
        return reference::simulate_blocks(params, strategy, rate, config.seed, config.samples, keep_sinr);
    }
    check_strategy(params, strategy);
    BlockTally tally;
    tally.blocks = config.samples;
    if (keep_sinr) tally.best_sinr.resize(config.samples);
    const auto chunks = static_cast<std::int64_t>((config.samples + kChunkBlocks - 1) / kChunkBlocks);
    std::uint64_t own_goals = 0;
    std::uint64_t successes = 0;
    double* sinr = keep_sinr ? tally.best_sinr.data() : nullptr;

#pragma omp parallel for schedule(dynamic) reduction(+ : own_goals, successes)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const auto first = static_cast<std::uint64_t>(c) * kChunkBlocks;
        const std::uint64_t count = std::min(kChunkBlocks, config.samples - first);
        const ChunkCounts cc = run_chunk(params, strategy, rate, config.seed,
                                         static_cast<std::uint64_t>(c), count,
                                         sinr != nullptr ? sinr + first : nullptr);
        own_goals += cc.own_goals;
        successes += cc.successes;
    }
    tally.own_goals = own_goals;
    tally.successes = successes;
    return tally;
}

double analytic_rate(const ScenarioParams& params, const JammingStrategy& strategy) {
    if (strategy.is_passive()) return passive_rate(params, params.n_channels);
    return jammed_rate(params, strategy).rate;
}

MonteCarloEstimate estimate_own_goal(const ScenarioParams& params, const JammingStrategy& strategy,
                                     const SimulationConfig& config) {
    require_samples(config.samples);
    const BlockTally t = simulate_blocks(params, strategy, 0.0, config, false);
    return proportion(t.own_goals, t.blocks, config.seed);
}

MonteCarloEstimate estimate_rate(const ScenarioParams& params, const JammingStrategy& strategy,
                                 const SimulationConfig& config) {
    require_samples(config.samples);
    BlockTally t = simulate_blocks(params, strategy, 0.0, config, true);
    return quantile_estimate(t.best_sinr, params.outage_target, config.seed);
}

MonteCarloEstimate estimate_phi(const ScenarioParams& params, const JammingStrategy& strategy,
                                const SimulationConfig& config, RateSource source) {
    require_samples(config.samples);
    if (source == RateSource::empirical) {
        const double r = estimate_rate(params, strategy, config).value;
        return simulate_link(params, strategy, config, r).phi;
    }
    const BlockTally t = simulate_blocks(params, strategy, analytic_rate(params, strategy), config, false);
    return proportion(t.successes, t.blocks, config.seed);
}

LinkSimulation simulate_link(const ScenarioParams& params, const JammingStrategy& strategy,
                             const SimulationConfig& config, std::optional<double> rate) {
    require_samples(config.samples);
    const double r = rate ? *rate : analytic_rate(params, strategy);
    BlockTally t = simulate_blocks(params, strategy, r, config, true);
    LinkSimulation out;
    out.own_goal = proportion(t.own_goals, t.blocks, config.seed);
    out.phi = proportion(t.successes, t.blocks, config.seed);
    out.rate = quantile_estimate(t.best_sinr, params.outage_target, config.seed);
    return out;
}

}  // namespace jamsurv
