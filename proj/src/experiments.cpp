#include "jamsurv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <string>

#include "jamsurv/errors.hpp"
#include "jamsurv/objective.hpp"
#include "jamsurv/rng.hpp"
#include "jamsurv/svg.hpp"

namespace jamsurv {

namespace {

using Row = std::vector<Cell>;

constexpr std::pair<SweepKind, const char*> kKindNames[] = {
    {SweepKind::phi_vs_q, "phi_vs_q"},           {SweepKind::profile_vs_n, "profile_vs_n"},
    {SweepKind::twoway_profile, "twoway_profile"}, {SweepKind::phi_vs_gain, "phi_vs_gain"},
    {SweepKind::placement_grid, "placement_grid"}, {SweepKind::twoway_path, "twoway_path"},
};

Cell num(double v) { return v; }
Cell count(int v) { return static_cast<std::int64_t>(v); }
Cell text(const char* s) { return std::string(s); }
Cell optional_n(const std::optional<int>& n) { return static_cast<std::int64_t>(n.value_or(0)); }

struct Grid {
    std::vector<std::string> columns;
    std::size_t size = 0;
    std::function<Row(std::size_t)> row;
    std::function<std::string(std::size_t)> describe;
};

SimulationConfig row_config(const SweepSpec& spec, std::size_t index) {
    SimulationConfig cfg = spec.monte_carlo;
    cfg.seed = mix64(spec.monte_carlo.seed ^ mix64(0x5eed0000ULL + index));
    // rows already run in parallel
    cfg.execution = Execution::serial;
    return cfg;
}

// Monte Carlo phi for n jammed channels (n = 0 passive) with equal split.
MonteCarloEstimate mc_phi(const ScenarioParams& p, int n, const SimulationConfig& cfg) {
    const JammingStrategy s = n == 0 ? JammingStrategy::passive() : JammingStrategy::equal_split(n, p.jam_budget);
    return estimate_phi(p, s, cfg);
}

LinkEvaluation eval_at(const ScenarioParams& p, int n) { return n == 0 ? phi_passive(p) : phi_jamming(p, n); }

const std::vector<ProfileEntry>::value_type& entry(const std::vector<ProfileEntry>& profile, int n) {
    return profile.at(static_cast<std::size_t>(n - 1));
}

int decision_n(const OptimizationOutcome& o) { return o.n_star.value_or(0); }

double phi_of(const LinkEvaluation& passive, const std::vector<ProfileEntry>& profile, int n) {
    return n == 0 ? passive.phi : entry(profile, n).eval.phi;
}

Grid phi_vs_q_grid(const SweepSpec& spec) {
    Grid g;
    g.columns = {"q_db", "q_max", "best_n", "rho", "rate", "non_outage", "phi_jam", "rate_passive", "phi_passive",
                 "scheme", "n_star", "phi_star"};
    if (spec.validation) g.columns.insert(g.columns.end(), {"mc_phi_star", "mc_phi_star_se"});
    const std::vector<double> qs = spec.axis.values();
    g.size = qs.size();
    g.describe = [qs](std::size_t i) { return "q_db=" + format_number(qs[i]); };
    g.row = [&spec, qs](std::size_t i) {
        const ScenarioParams p = spec.base.with_budget(from_db(qs[i]));
        const OptimizationOutcome o = optimize_one_way(p);
        const int best = o.best_jamming_n();
        const LinkEvaluation& e = entry(o.profile, best).eval;
        Row r{num(qs[i]), num(p.jam_budget), count(best), num(e.rho), num(e.rate), num(e.non_outage_monitor),
              num(e.phi), num(o.passive.rate), num(o.passive.phi), text(to_string(o.chosen_scheme)),
              optional_n(o.n_star), num(o.phi_star)};
        if (spec.validation) {
            const MonteCarloEstimate m = mc_phi(p, decision_n(o), row_config(spec, i));
            r.insert(r.end(), {num(m.value), num(m.std_error)});
        }
        return r;
    };
    return g;
}

Grid profile_grid(const SweepSpec& spec) {
    Grid g;
    g.columns = {"q_db", "n", "rho", "rate", "non_outage", "phi", "optimal", "scheme"};
    if (spec.validation) {
        g.columns.insert(g.columns.end(),
                         {"mc_rho", "mc_rho_se", "mc_rate", "mc_rate_se", "mc_phi", "mc_phi_se"});
    }
    std::vector<double> budgets = spec.q_db_list;
    if (budgets.empty()) budgets.push_back(to_db(spec.base.jam_budget));
    const auto per = static_cast<std::size_t>(spec.base.n_channels);
    g.size = budgets.size() * per;
    g.describe = [budgets, per](std::size_t i) {
        return "q_db=" + format_number(budgets[i / per]) + " n=" + std::to_string(i % per);
    };
    g.row = [&spec, budgets, per](std::size_t i) {
        const ScenarioParams p = spec.base.with_budget(from_db(budgets[i / per]));
        const int n = static_cast<int>(i % per);
        const LinkEvaluation e = eval_at(p, n);
        // the decision for this budget; each row recomputes the profile so rows stay independent
        const OptimizationOutcome o = optimize_one_way(p);
        Row r{num(budgets[i / per]), count(n), num(e.rho), num(e.rate), num(e.non_outage_monitor), num(e.phi),
              count(decision_n(o) == n ? 1 : 0), text(to_string(o.chosen_scheme))};
        if (spec.validation) {
            const JammingStrategy s = n == 0 ? JammingStrategy::passive() : JammingStrategy::equal_split(n, p.jam_budget);
            const LinkSimulation m = simulate_link(p, s, row_config(spec, i), e.rate);
            r.insert(r.end(), {num(m.own_goal.value), num(m.own_goal.std_error), num(m.rate.value),
                               num(m.rate.std_error), num(m.phi.value), num(m.phi.std_error)});
        }
        return r;
    };
    return g;
}

Grid twoway_profile_grid(const SweepSpec& spec) {
    Grid g;
    g.columns = {"n", "phi_ab", "phi_ba", "phi_min", "rho_ab", "rho_ba", "rate_ab", "rate_ba",
                 "optimal_ab", "optimal_ba", "optimal", "scheme"};
    if (spec.validation) g.columns.insert(g.columns.end(), {"mc_phi_ab", "mc_phi_ab_se", "mc_phi_ba", "mc_phi_ba_se"});
    g.size = static_cast<std::size_t>(spec.base.n_channels);
    g.describe = [](std::size_t i) { return "n=" + std::to_string(i); };
    g.row = [&spec](std::size_t i) {
        const int n = static_cast<int>(i);
        const ScenarioParams ab = spec.base;
        const ScenarioParams ba = swap_direction(spec.base);
        const LinkEvaluation eab = eval_at(ab, n);
        const LinkEvaluation eba = eval_at(ba, n);
        const TwoWayOutcome o = optimize_two_way(spec.base);
        Row r{count(n), num(eab.phi), num(eba.phi), num(std::min(eab.phi, eba.phi)), num(eab.rho), num(eba.rho),
              num(eab.rate), num(eba.rate), count(decision_n(o.one_way_ab) == n ? 1 : 0),
              count(decision_n(o.one_way_ba) == n ? 1 : 0), count(o.n_star.value_or(0) == n ? 1 : 0),
              text(to_string(o.chosen_scheme))};
        if (spec.validation) {
            const MonteCarloEstimate mab = mc_phi(ab, n, row_config(spec, 2 * i));
            const MonteCarloEstimate mba = mc_phi(ba, n, row_config(spec, 2 * i + 1));
            r.insert(r.end(), {num(mab.value), num(mab.std_error), num(mba.value), num(mba.std_error)});
        }
        return r;
    };
    return g;
}

Grid phi_vs_gain_grid(const SweepSpec& spec) {
    Grid g;
    g.columns = {"n_channels", "mean_gain", "phi_passive", "phi_jam_best", "best_n", "scheme", "n_star", "phi_star"};
    if (spec.validation) g.columns.insert(g.columns.end(), {"mc_phi_star", "mc_phi_star_se"});
    const std::vector<double> gains = spec.axis.values();
    std::vector<int> ns = spec.channel_counts;
    if (ns.empty()) ns.push_back(spec.base.n_channels);
    g.size = ns.size() * gains.size();
    g.describe = [ns, gains](std::size_t i) {
        return "N=" + std::to_string(ns[i / gains.size()]) + " mean_gain=" + format_number(gains[i % gains.size()]);
    };
    g.row = [&spec, ns, gains](std::size_t i) {
        ScenarioParams p = spec.base;
        p.n_channels = ns[i / gains.size()];
        const double gain = gains[i % gains.size()];
        p.lambda_b = 1.0 / gain;
        p.lambda_c = 1.0 / gain;
        const OptimizationOutcome o = optimize_one_way(p);
        const int best = o.best_jamming_n();
        Row r{count(p.n_channels), num(gain), num(o.passive.phi), num(entry(o.profile, best).eval.phi), count(best),
              text(to_string(o.chosen_scheme)), optional_n(o.n_star), num(o.phi_star)};
        if (spec.validation) {
            const MonteCarloEstimate m = mc_phi(p, decision_n(o), row_config(spec, i));
            r.insert(r.end(), {num(m.value), num(m.std_error)});
        }
        return r;
    };
    return g;
}

Grid placement_grid(const SweepSpec& spec) {
    Grid g;
    g.columns = {"x", "y", "lambda_b", "lambda_c", "n_star", "scheme", "phi_star", "phi_passive", "phi_jam_best"};
    if (spec.validation) g.columns.insert(g.columns.end(), {"mc_phi_star", "mc_phi_star_se"});
    const std::vector<double> xs = spec.axis.values();
    const std::vector<double> ys = spec.axis_y.values();
    g.size = xs.size() * ys.size();
    // row-major in y, then x
    g.describe = [xs, ys](std::size_t i) {
        return "monitor=(" + format_number(xs[i % xs.size()]) + "," + format_number(ys[i / xs.size()]) + ")";
    };
    g.row = [&spec, xs, ys](std::size_t i) {
        const Point m{xs[i % xs.size()], ys[i / xs.size()]};
        const ScenarioParams p = apply_placement(spec.base, {spec.st, spec.sr, m});
        const OptimizationOutcome o = optimize_one_way(p);
        Row r{num(m.x), num(m.y), num(p.lambda_b), num(p.lambda_c), optional_n(o.n_star),
              text(to_string(o.chosen_scheme)), num(o.phi_star), num(o.passive.phi),
              num(entry(o.profile, o.best_jamming_n()).eval.phi)};
        if (spec.validation) {
            const MonteCarloEstimate mc = mc_phi(p, decision_n(o), row_config(spec, i));
            r.insert(r.end(), {num(mc.value), num(mc.std_error)});
        }
        return r;
    };
    return g;
}

Grid twoway_path_grid(const SweepSpec& spec) {
    Grid g;
    g.columns = {"x", "y", "n_star_ab", "n_star_ba", "n_star", "scheme", "phi_minmax", "phi_min_bench_ab",
                 "phi_min_bench_ba", "phi_min_passive"};
    if (spec.validation) g.columns.insert(g.columns.end(), {"mc_phi_ab", "mc_phi_ab_se", "mc_phi_ba", "mc_phi_ba_se"});
    const std::vector<double> ts = spec.axis.values();
    g.size = ts.size();
    auto point_at = [&spec](double t) {
        return Point{spec.path_from.x + t * (spec.path_to.x - spec.path_from.x),
                     spec.path_from.y + t * (spec.path_to.y - spec.path_from.y)};
    };
    g.describe = [ts, point_at](std::size_t i) {
        const Point m = point_at(ts[i]);
        return "monitor=(" + format_number(m.x) + "," + format_number(m.y) + ")";
    };
    g.row = [&spec, ts, point_at](std::size_t i) {
        const Point m = point_at(ts[i]);
        // A -> B: A transmits, B receives
        const ScenarioParams p = apply_placement(spec.base, {spec.user_a, spec.user_b, m});
        const TwoWayOutcome o = optimize_two_way(p);
        const int nab = decision_n(o.one_way_ab);
        const int nba = decision_n(o.one_way_ba);
        auto min_at = [&](int n) {
            return std::min(phi_of(o.passive_ab, o.profile_ab, n), phi_of(o.passive_ba, o.profile_ba, n));
        };
        Row r{num(m.x), num(m.y), count(nab), count(nba), optional_n(o.n_star), text(to_string(o.chosen_scheme)),
              num(o.phi_minmax), num(min_at(nab)), num(min_at(nba)), num(o.phi_passive_min)};
        if (spec.validation) {
            const int n = o.n_star.value_or(0);
            const MonteCarloEstimate mab = mc_phi(p, n, row_config(spec, 2 * i));
            const MonteCarloEstimate mba = mc_phi(swap_direction(p), n, row_config(spec, 2 * i + 1));
            r.insert(r.end(), {num(mab.value), num(mab.std_error), num(mba.value), num(mba.std_error)});
        }
        return r;
    };
    return g;
}

Grid make_grid(const SweepSpec& spec) {
    switch (spec.kind) {
        case SweepKind::phi_vs_q: return phi_vs_q_grid(spec);
        case SweepKind::profile_vs_n: return profile_grid(spec);
        case SweepKind::twoway_profile: return twoway_profile_grid(spec);
        case SweepKind::phi_vs_gain: return phi_vs_gain_grid(spec);
        case SweepKind::placement_grid: return placement_grid(spec);
        case SweepKind::twoway_path: return twoway_path_grid(spec);
    }
    throw DomainError("unknown sweep kind");
}

}  // namespace

std::optional<SweepKind> parse_sweep_kind(const std::string& name) {
    for (const auto& [kind, label] : kKindNames) {
        if (name == label) return kind;
    }
    return std::nullopt;
}

const char* to_string(SweepKind kind) {
    for (const auto& [k, label] : kKindNames) {
        if (k == kind) return label;
    }
    return "unknown";
}

std::vector<double> Axis::values() const {
    std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        v[static_cast<std::size_t>(i)] = log_scale ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                                                   : start + t * (stop - start);
    }
    return v;
}

void Axis::validate(const char* name) const {
    if (count < 2) {
        throw DomainError(std::string(name) + " axis needs at least 2 points");
    }
    if (!std::isfinite(start) || !std::isfinite(stop)) {
        throw DomainError(std::string(name) + " axis endpoints must be finite");
    }
    if (log_scale && !(start > 0.0 && stop > 0.0)) {
        throw DomainError(std::string(name) + " log axis needs positive endpoints");
    }
}

void SweepSpec::validate() const {
    base.validate();
    switch (kind) {
        case SweepKind::phi_vs_q: axis.validate("jamming budget (dB)"); break;
        case SweepKind::phi_vs_gain:
            if (!axis.given()) {
                throw DomainError("phi_vs_gain needs explicit mean-gain endpoints");
            }
            axis.validate("mean gain");
            if (!(axis.start > 0.0 && axis.stop > 0.0)) throw DomainError("mean gains must be positive");
            for (int n : channel_counts) {
                if (n < 2) throw DomainError("channel counts must be >= 2");
            }
            break;
        case SweepKind::placement_grid:
            axis.validate("monitor x");
            axis_y.validate("monitor y");
            break;
        case SweepKind::twoway_path: axis.validate("path position"); break;
        case SweepKind::profile_vs_n:
        case SweepKind::twoway_profile: break;
    }
}

SweepSpec default_sweep(SweepKind kind) {
    SweepSpec spec;
    spec.kind = kind;
    ScenarioParams& p = spec.base;  // N = 8, lambda = (1, 1, 3), P = 10 dB, Q = 20 dB, delta = 0.05
    switch (kind) {
        case SweepKind::phi_vs_q:
            p.n_channels = 2;
            p.lambda_b = 3.0;
            spec.axis = {-10.0, 40.0, 51, false};
            break;
        case SweepKind::profile_vs_n: break;
        case SweepKind::twoway_profile:
            p.lambda_a = 5.0;
            p.lambda_b = 1.0;
            p.lambda_c = 4.0;
            break;
        case SweepKind::phi_vs_gain:
            p.jam_budget = from_db(30.0);
            spec.channel_counts = {2, 4, 8};
            break;
        case SweepKind::placement_grid:
            p.jam_budget = from_db(30.0);
            spec.axis = {0.0, 10.0, 41, false};
            spec.axis_y = {0.0, 9.0, 41, false};
            break;
        case SweepKind::twoway_path:
            p.jam_budget = from_db(30.0);
            spec.axis = {0.0, 1.0, 81, false};
            break;
    }
    return spec;
}

Table run_sweep(const SweepSpec& spec) {
    spec.validate();
    const Grid grid = make_grid(spec);
    Table table;
    table.columns = grid.columns;
    table.columns.insert(table.columns.end(), {"status", "error"});

    const std::size_t width = grid.columns.size();
    std::vector<Row> rows(grid.size);
    std::vector<std::string> errors(grid.size);
    auto evaluate = [&](std::size_t i) {
        try {
            rows[i] = grid.row(i);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    const auto n = static_cast<std::int64_t>(grid.size);
    if (spec.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i) evaluate(static_cast<std::size_t>(i));
    } else {
        for (std::int64_t i = 0; i < n; ++i) evaluate(static_cast<std::size_t>(i));
    }

    for (std::size_t i = 0; i < grid.size; ++i) {
        if (errors[i].empty()) {
            rows[i].push_back(text("ok"));
            rows[i].push_back(std::monostate{});
        } else {
            if (spec.strict) {
                throw NumericalError(grid.describe(i) + ": " + errors[i]);
            }
            rows[i].assign(width, std::monostate{});
            rows[i].push_back(text("failed"));
            rows[i].push_back(grid.describe(i) + ": " + errors[i]);
        }
        table.add_row(std::move(rows[i]));
    }
    return table;
}

void write_sweep_svg(std::ostream& out, SweepKind kind, const Table& table) {
    switch (kind) {
        case SweepKind::phi_vs_q:
            write_line_svg(out, table, {"phi vs jamming budget (dB)", "q_db", {"phi_jam", "phi_passive", "phi_star"}, ""});
            return;
        case SweepKind::profile_vs_n:
            write_line_svg(out, table, {"phi vs jammed channels", "n", {"phi"}, "q_db"});
            return;
        case SweepKind::twoway_profile:
            write_line_svg(out, table, {"two-way phi vs jammed channels", "n", {"phi_ab", "phi_ba", "phi_min"}, ""});
            return;
        case SweepKind::phi_vs_gain:
            write_line_svg(out, table, {"phi vs mean monitor gain", "mean_gain", {"phi_star"}, "n_channels"});
            return;
        case SweepKind::placement_grid:
            write_heatmap_svg(out, table, {"optimal jammed channels by monitor position", "x", "y", "n_star"});
            return;
        case SweepKind::twoway_path:
            write_line_svg(out, table,
                           {"two-way min phi along the monitor path", "x",
                            {"phi_minmax", "phi_min_bench_ab", "phi_min_bench_ba", "phi_min_passive"}, ""});
            return;
    }
}

}  // namespace jamsurv
