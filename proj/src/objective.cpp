#include "jamsurv/objective.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "jamsurv/errors.hpp"
#include "jamsurv/owngoal.hpp"
#include "jamsurv/rates.hpp"
#include "jamsurv/roots.hpp"

namespace jamsurv {

namespace {

constexpr double kBudgetSearchLow = 1e-9;
constexpr double kBudgetSearchHigh = 1e12;

std::vector<ProfileEntry> jamming_profile(const ScenarioParams& params) {
    std::vector<ProfileEntry> profile(static_cast<std::size_t>(params.n_channels - 1));
    for (int n = 1; n <= params.n_channels - 1; ++n) {
        profile[static_cast<std::size_t>(n - 1)] = {n, phi_jamming(params, n)};
    }
    return profile;
}

// First maximizer of score over the profile (strict improvement only).
template <class Score>
std::size_t argmax_first(const std::vector<ProfileEntry>& profile, Score score) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < profile.size(); ++i) {
        if (score(i) > score(best)) best = i;
    }
    return best;
}

// Root in log(Q) of f over [lo, hi] * reference, scanning decades for a sign change.
double solve_on_log_budget(const std::function<double(double)>& f, double reference, const std::string& what,
                           double f_tol) {
    const double log_lo = std::log(kBudgetSearchLow * reference);
    const double log_hi = std::log(kBudgetSearchHigh * reference);
    constexpr int kScan = 84;  // four points per decade
    double prev_x = log_lo;
    double prev_f = f(std::exp(prev_x));
    for (int i = 1; i <= kScan; ++i) {
        const double x = log_lo + (log_hi - log_lo) * i / kScan;
        const double fx = f(std::exp(x));
        if (prev_f == 0.0) return std::exp(prev_x);
        if ((fx > 0.0) != (prev_f > 0.0) || fx == 0.0) {
            const RootResult r = bracketed_root([&](double lq) { return f(std::exp(lq)); }, prev_x, x,
                                                {.f_tol = f_tol, .x_rel_tol = 1e-13, .max_iterations = 200});
            return std::exp(r.x);
        }
        prev_x = x;
        prev_f = fx;
    }
    throw NumericalError(what + ": no crossing in the budget range [" + std::to_string(kBudgetSearchLow * reference) +
                         ", " + std::to_string(kBudgetSearchHigh * reference) + "]; " +
                         (prev_f > 0.0 ? "first side dominates throughout" : "second side dominates throughout"));
}

}  // namespace

int OptimizationOutcome::best_jamming_n() const {
    return profile[argmax_first(profile, [&](std::size_t i) { return profile[i].eval.phi; })].n;
}

double monitor_non_outage(const ScenarioParams& params, double rate) {
    return std::exp(-params.lambda_b * params.noise_monitor * std::expm1(rate * std::log(2.0)) / params.tx_power);
}

LinkEvaluation phi_passive(const ScenarioParams& params) {
    const double rate = passive_rate(params, params.n_channels);
    const double non_outage = monitor_non_outage(params, rate);
    return {0.0, rate, non_outage, non_outage};
}

LinkEvaluation phi_jamming(const ScenarioParams& params, int n) {
    const double rho = rho_quadrature(params, n).rho;
    const double rate = jammed_rate_equal(params, n).rate;
    const double non_outage = monitor_non_outage(params, rate);
    return {rho, rate, non_outage, (1.0 - rho) * non_outage};
}

double q_threshold(const ScenarioParams& params) {
    if (params.n_channels != 2) {
        throw DomainError("q_threshold requires N = 2, got N = " + std::to_string(params.n_channels));
    }
    const double phi_i = phi_passive(params).phi;
    auto gap = [&](double q) { return phi_jamming(params.with_budget(q), 1).phi - phi_i; };
    return solve_on_log_budget(gap, params.tx_power, "q_threshold (jamming minus passive)", 1e-12);
}

OptimizationOutcome optimize_one_way(const ScenarioParams& params) {
    params.validate();
    OptimizationOutcome out;
    out.passive = phi_passive(params);
    out.profile = jamming_profile(params);
    const int best = out.best_jamming_n();
    const double best_phi = out.profile[static_cast<std::size_t>(best - 1)].eval.phi;
    if (best_phi > out.passive.phi) {
        out.chosen_scheme = Scheme::jamming;
        out.n_star = best;
        out.phi_star = best_phi;
    } else {
        out.chosen_scheme = Scheme::passive;
        out.phi_star = out.passive.phi;
    }
    return out;
}

TwoWayOutcome optimize_two_way(const ScenarioParams& params, double weight_ab, double weight_ba,
                               bool compute_regime) {
    if (!(weight_ab > 0.0) || !(weight_ba > 0.0)) {
        throw DomainError("two-way weights must be positive");
    }
    params.validate();
    TwoWayOutcome out;
    out.one_way_ab = optimize_one_way(params);
    out.one_way_ba = optimize_one_way(swap_direction(params));
    out.profile_ab = out.one_way_ab.profile;
    out.profile_ba = out.one_way_ba.profile;
    out.passive_ab = out.one_way_ab.passive;
    out.passive_ba = out.one_way_ba.passive;

    auto weighted_min = [&](std::size_t i) {
        return std::min(weight_ab * out.profile_ab[i].eval.phi, weight_ba * out.profile_ba[i].eval.phi);
    };
    const std::size_t best = argmax_first(out.profile_ab, weighted_min);
    const double passive_score = std::min(weight_ab * out.passive_ab.phi, weight_ba * out.passive_ba.phi);
    out.phi_passive_min = std::min(out.passive_ab.phi, out.passive_ba.phi);
    if (weighted_min(best) > passive_score) {
        out.chosen_scheme = Scheme::jamming;
        out.n_star = out.profile_ab[best].n;
        out.phi_minmax = std::min(out.profile_ab[best].eval.phi, out.profile_ba[best].eval.phi);
    } else {
        out.chosen_scheme = Scheme::passive;
        out.phi_minmax = out.phi_passive_min;
    }
    if (compute_regime && params.n_channels >= 3) {
        out.thresholds = regime_thresholds(params);
        out.regime = classify_regime(params.jam_budget, *out.thresholds);
    }
    return out;
}

RegimeThresholds regime_thresholds(const ScenarioParams& params) {
    params.validate();
    const int N = params.n_channels;
    if (N < 3) {
        throw DomainError("regime_thresholds requires N >= 3, got N = " + std::to_string(N));
    }
    auto crossing = [&](const ScenarioParams& dir, int lower_n, const std::string& label) {
        auto gap = [&](double q) {
            const ScenarioParams p = dir.with_budget(q);
            return phi_jamming(p, lower_n).phi - phi_jamming(p, lower_n + 1).phi;
        };
        return solve_on_log_budget(gap, dir.tx_power, label, 1e-12);
    };
    const ScenarioParams ab = params;
    const ScenarioParams ba = swap_direction(params);
    RegimeThresholds t;
    t.q_lower_ab = crossing(ab, 1, "regime threshold A->B, phi(1) vs phi(2)");
    t.q_lower_ba = crossing(ba, 1, "regime threshold B->A, phi(1) vs phi(2)");
    t.q_upper_ab = crossing(ab, N - 2, "regime threshold A->B, phi(N-2) vs phi(N-1)");
    t.q_upper_ba = crossing(ba, N - 2, "regime threshold B->A, phi(N-2) vs phi(N-1)");
    t.q_lower = std::min(t.q_lower_ab, t.q_lower_ba);
    t.q_upper = std::max(t.q_upper_ab, t.q_upper_ba);
    return t;
}

Regime classify_regime(double q_max, const RegimeThresholds& thresholds) {
    if (q_max < thresholds.q_lower) return Regime::low_budget;
    if (q_max > thresholds.q_upper) return Regime::high_budget;
    return Regime::interior;
}

const char* to_string(Scheme s) { return s == Scheme::passive ? "passive" : "jamming"; }

const char* to_string(Regime r) {
    switch (r) {
        case Regime::low_budget: return "low_budget";
        case Regime::interior: return "interior";
        case Regime::high_budget: return "high_budget";
    }
    return "unknown";
}

}  // namespace jamsurv
