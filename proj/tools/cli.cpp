#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "jamsurv/errors.hpp"
#include "jamsurv/experiments.hpp"
#include "jamsurv/montecarlo.hpp"
#include "jamsurv/objective.hpp"
#include "jamsurv/rng.hpp"
#include "jamsurv/scenario_io.hpp"
#include "jamsurv/table.hpp"

namespace jamsurv::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

enum class Format { text, csv, json };

struct Overrides {
    std::optional<int> n_channels;
    std::optional<double> lambda_a, lambda_b, lambda_c;
    std::optional<double> tx_power_db, qmax_db;
    std::optional<double> noise_sr, noise_monitor, noise_st;
    std::optional<double> outage;
};

struct Common {
    std::string scenario_path;
    Overrides overrides;
    Format format = Format::text;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    bool strict = false;
};

struct Report {
    std::vector<std::pair<std::string, Cell>> summary;
    std::optional<Table> table;
    int exit_code = kExitOk;
    std::optional<ScenarioParams> base_used;  ///< when the command ran on another base than the merged scenario
};

// The scenario after file values and command-line overrides are merged.
struct Effective {
    ScenarioParams params;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1'000'000;
};

Effective merge(const Common& c) {
    ScenarioFile file;
    if (!c.scenario_path.empty()) file = load_scenario(c.scenario_path);
    ScenarioParams& p = file.params;
    const Overrides& o = c.overrides;
    if (o.n_channels) p.n_channels = *o.n_channels;
    if (o.lambda_a) p.lambda_a = *o.lambda_a;
    if (o.lambda_b) p.lambda_b = *o.lambda_b;
    if (o.lambda_c) p.lambda_c = *o.lambda_c;
    if (o.tx_power_db) p.tx_power = from_db(*o.tx_power_db);
    if (o.qmax_db) p.jam_budget = from_db(*o.qmax_db);
    if (o.noise_sr) p.noise_sr = *o.noise_sr;
    if (o.noise_monitor) p.noise_monitor = *o.noise_monitor;
    if (o.noise_st) p.noise_st = *o.noise_st;
    if (o.outage) p.outage_target = *o.outage;
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
    Effective eff{p, file.seed.value_or(1), file.samples.value_or(1'000'000)};
    if (c.seed) eff.seed = *c.seed;
    if (c.samples) eff.samples = *c.samples;
    return eff;
}

std::string scenario_echo(const Effective& eff) {
    ScenarioFile echo;
    echo.params = eff.params;
    echo.seed = eff.seed;
    echo.samples = eff.samples;
    return scenario_to_json(echo).dump();
}

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return "";
}

ordered_json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? ordered_json(*d) : ordered_json(nullptr);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return nullptr;
}

void write_text_table(std::ostream& out, const Table& t) {
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t j = 0; j < t.columns.size(); ++j) width[j] = t.columns[j].size();
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], cell_text(row[j]).size());
    }
    auto line = [&](auto&& text_of) {
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
            out << (j ? "  " : "") << std::left << std::setw(static_cast<int>(width[j])) << text_of(j);
        }
        out << '\n';
    };
    line([&](std::size_t j) { return t.columns[j]; });
    for (const auto& row : t.rows) line([&](std::size_t j) { return cell_text(row[j]); });
}

void emit(std::ostream& out, Format format, const std::string& command, const std::string& scenario,
          const Report& r) {
    switch (format) {
        case Format::text:
            out << "# " << command << '\n' << "# scenario: " << scenario << '\n';
            for (const auto& [k, v] : r.summary) out << k << ": " << cell_text(v) << '\n';
            if (r.table) {
                out << '\n';
                write_text_table(out, *r.table);
            }
            return;
        case Format::csv: {
            std::vector<std::string> comments{command, "scenario: " + scenario};
            if (r.table) {
                for (const auto& [k, v] : r.summary) comments.push_back(k + ": " + cell_text(v));
                write_csv(out, *r.table, comments);
            } else {
                Table kv;
                kv.columns = {"key", "value"};
                for (const auto& [k, v] : r.summary) kv.add_row({k, v});
                write_csv(out, kv, comments);
            }
            return;
        }
        case Format::json: {
            ordered_json doc;
            doc["command"] = command;
            doc["scenario"] = ordered_json::parse(scenario);
            for (const auto& [k, v] : r.summary) doc[k] = cell_json(v);
            if (r.table) {
                ordered_json rows = ordered_json::array();
                for (const auto& row : r.table->rows) {
                    ordered_json obj;
                    for (std::size_t j = 0; j < row.size(); ++j) obj[r.table->columns[j]] = cell_json(row[j]);
                    rows.push_back(std::move(obj));
                }
                doc["rows"] = std::move(rows);
            }
            out << doc.dump(2) << '\n';
            return;
        }
    }
}

Cell n_cell(const std::optional<int>& n) { return static_cast<std::int64_t>(n.value_or(0)); }
Cell int_cell(int n) { return static_cast<std::int64_t>(n); }

void add_eval_row(Table& t, int n, const LinkEvaluation& e) {
    t.add_row({int_cell(n), n == 0 ? std::string("passive") : std::string("jamming"), e.rho, e.rate,
               e.non_outage_monitor, e.phi});
}

Table eval_table() {
    Table t;
    t.columns = {"n", "scheme", "rho", "rate", "non_outage", "phi"};
    return t;
}

Report cmd_eval(const Effective& eff, int n) {
    const ScenarioParams& p = eff.params;
    if (n < 0 || n > p.n_channels - 1) {
        throw DomainError("--n must lie in [0, N-1] = [0, " + std::to_string(p.n_channels - 1) + "]");
    }
    Report r;
    Table t = eval_table();
    const LinkEvaluation passive = phi_passive(p);
    add_eval_row(t, 0, passive);
    r.summary.emplace_back("phi_passive", passive.phi);
    if (n > 0) {
        const LinkEvaluation e = phi_jamming(p, n);
        add_eval_row(t, n, e);
        r.summary.emplace_back("n", int_cell(n));
        r.summary.emplace_back("phi_jamming", e.phi);
    }
    r.table = std::move(t);
    return r;
}

Table profile_table(const OptimizationOutcome& o) {
    Table t = eval_table();
    add_eval_row(t, 0, o.passive);
    for (const ProfileEntry& e : o.profile) add_eval_row(t, e.n, e.eval);
    return t;
}

Report cmd_optimize(const Effective& eff) {
    const OptimizationOutcome o = optimize_one_way(eff.params);
    Report r;
    r.summary = {{"scheme", to_string(o.chosen_scheme)},
                 {"n_star", n_cell(o.n_star)},
                 {"phi_star", o.phi_star},
                 {"phi_passive", o.passive.phi}};
    r.table = profile_table(o);
    return r;
}

void add_thresholds(Report& r, const RegimeThresholds& t) {
    r.summary.emplace_back("q_lower", t.q_lower);
    r.summary.emplace_back("q_lower_db", to_db(t.q_lower));
    r.summary.emplace_back("q_upper", t.q_upper);
    r.summary.emplace_back("q_upper_db", to_db(t.q_upper));
    r.summary.emplace_back("q_lower_ab", t.q_lower_ab);
    r.summary.emplace_back("q_lower_ba", t.q_lower_ba);
    r.summary.emplace_back("q_upper_ab", t.q_upper_ab);
    r.summary.emplace_back("q_upper_ba", t.q_upper_ba);
}

Report cmd_twoway(const Effective& eff, double w_ab, double w_ba, bool regimes) {
    const TwoWayOutcome o = optimize_two_way(eff.params, w_ab, w_ba, regimes);
    Report r;
    r.summary = {{"scheme", to_string(o.chosen_scheme)},
                 {"n_star", n_cell(o.n_star)},
                 {"n_star_ab", n_cell(o.one_way_ab.n_star)},
                 {"n_star_ba", n_cell(o.one_way_ba.n_star)},
                 {"phi_minmax", o.phi_minmax},
                 {"phi_passive_min", o.phi_passive_min}};
    if (o.regime) r.summary.emplace_back("regime", to_string(*o.regime));
    if (o.thresholds) add_thresholds(r, *o.thresholds);
    Table t;
    t.columns = {"n", "phi_ab", "phi_ba", "phi_min"};
    t.add_row({int_cell(0), o.passive_ab.phi, o.passive_ba.phi, std::min(o.passive_ab.phi, o.passive_ba.phi)});
    for (std::size_t i = 0; i < o.profile_ab.size(); ++i) {
        const double ab = o.profile_ab[i].eval.phi;
        const double ba = o.profile_ba[i].eval.phi;
        t.add_row({int_cell(o.profile_ab[i].n), ab, ba, std::min(ab, ba)});
    }
    r.table = std::move(t);
    return r;
}

Report cmd_threshold(const Effective& eff) {
    if (eff.params.n_channels != 2) {
        throw ConfigError("threshold requires N = 2 (got N = " + std::to_string(eff.params.n_channels) + ")");
    }
    const double q = q_threshold(eff.params);
    Report r;
    r.summary = {{"q_threshold", q},
                 {"q_threshold_db", to_db(q)},
                 {"scheme_at_qmax", eff.params.jam_budget > q ? "jamming" : "passive"}};
    return r;
}

Report cmd_regimes(const Effective& eff) {
    const RegimeThresholds t = regime_thresholds(eff.params);
    Report r;
    add_thresholds(r, t);
    r.summary.emplace_back("regime", to_string(classify_regime(eff.params.jam_budget, t)));
    return r;
}

struct SweepOptions {
    std::string kind;
    std::optional<double> start, stop, y_start, y_stop;
    std::optional<int> count, y_count;
    bool log_axis = false;
    std::vector<double> q_db_list;
    std::vector<int> channel_counts;
    std::vector<double> st, sr, user_a, user_b, path_from, path_to;
    bool monte_carlo = false;
    bool serial = false;
    std::string svg_path;
};

Point to_point(const std::vector<double>& v) { return {v.at(0), v.at(1)}; }

Report cmd_sweep(const Effective& eff, const SweepOptions& o, bool base_overridden, bool strict) {
    const auto kind = parse_sweep_kind(o.kind);
    if (!kind) throw ConfigError("unknown sweep kind '" + o.kind + "'");
    SweepSpec spec = default_sweep(*kind);
    // the study's own setup applies unless a scenario or override was given
    if (base_overridden) spec.base = eff.params;
    if (o.start) spec.axis.start = *o.start;
    if (o.stop) spec.axis.stop = *o.stop;
    if (o.count) spec.axis.count = *o.count;
    if (o.log_axis) spec.axis.log_scale = true;
    if (*kind == SweepKind::phi_vs_gain && (o.start || o.stop) && !o.count && !spec.axis.given()) {
        spec.axis.count = 21;
    }
    if (o.y_start) spec.axis_y.start = *o.y_start;
    if (o.y_stop) spec.axis_y.stop = *o.y_stop;
    if (o.y_count) spec.axis_y.count = *o.y_count;
    if (!o.q_db_list.empty()) spec.q_db_list = o.q_db_list;
    if (!o.channel_counts.empty()) spec.channel_counts = o.channel_counts;
    if (!o.st.empty()) spec.st = to_point(o.st);
    if (!o.sr.empty()) spec.sr = to_point(o.sr);
    if (!o.user_a.empty()) spec.user_a = to_point(o.user_a);
    if (!o.user_b.empty()) spec.user_b = to_point(o.user_b);
    if (!o.path_from.empty()) spec.path_from = to_point(o.path_from);
    if (!o.path_to.empty()) spec.path_to = to_point(o.path_to);
    spec.validation = o.monte_carlo;
    spec.monte_carlo.seed = eff.seed;
    spec.monte_carlo.samples = eff.samples;
    spec.strict = strict;
    spec.execution = o.serial ? Execution::serial : Execution::parallel;

    Report r;
    r.table = run_sweep(spec);
    r.base_used = spec.base;
    std::int64_t failed = 0;
    const std::size_t status = r.table->column_index("status");
    for (const auto& row : r.table->rows) failed += std::get<std::string>(row[status]) != "ok";
    r.summary = {{"kind", to_string(*kind)},
                 {"rows", static_cast<std::int64_t>(r.table->rows.size())},
                 {"failed_rows", failed}};
    if (!o.svg_path.empty()) {
        std::ofstream svg(o.svg_path);
        if (!svg) throw ConfigError("cannot write " + o.svg_path);
        write_sweep_svg(svg, *kind, *r.table);
    }
    return r;
}

Report cmd_validate(const Effective& eff, double z_limit) {
    const ScenarioParams& p = eff.params;
    Table t;
    t.columns = {"n", "quantity", "analytic", "monte_carlo", "std_error", "z"};
    double max_z = 0.0;
    auto check = [&](int n, const char* what, double analytic, const MonteCarloEstimate& m) {
        const double z = m.z_score(analytic);
        max_z = std::max(max_z, z);
        t.add_row({int_cell(n), std::string(what), analytic, m.value, m.std_error, z});
    };
    for (int n = 0; n < p.n_channels; ++n) {
        const JammingStrategy s = n == 0 ? JammingStrategy::passive() : JammingStrategy::equal_split(n, p.jam_budget);
        const LinkEvaluation e = n == 0 ? phi_passive(p) : phi_jamming(p, n);
        const SimulationConfig cfg{mix64(eff.seed ^ mix64(static_cast<std::uint64_t>(n))), eff.samples,
                                   Execution::parallel};
        const LinkSimulation sim = simulate_link(p, s, cfg, e.rate);
        if (n > 0) check(n, "rho", e.rho, sim.own_goal);
        check(n, "rate", e.rate, sim.rate);
        check(n, "phi", e.phi, sim.phi);
    }
    Report r;
    const bool pass = max_z <= z_limit;
    r.summary = {{"samples", static_cast<std::int64_t>(eff.samples)},
                 {"seed", std::to_string(eff.seed)},
                 {"max_deviation_se", max_z},
                 {"z_limit", z_limit},
                 {"result", pass ? "pass" : "fail"}};
    r.table = std::move(t);
    r.exit_code = pass ? kExitOk : kExitNumerical;
    return r;
}

template <class T>
void override_opt(CLI::App& app, const std::string& name, std::optional<T>& target, const std::string& help) {
    app.add_option(name, target, help);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Jamming-assisted eavesdropping over parallel fading channels", "jamsurv"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Common c;
    Overrides& o = c.overrides;
    app.add_option("--scenario", c.scenario_path, "Scenario JSON file")->check(CLI::ExistingFile);
    override_opt(app, "--n-channels", o.n_channels, "Number of channels N");
    override_opt(app, "--lambda-a", o.lambda_a, "Rate of the ST->SR gain");
    override_opt(app, "--lambda-b", o.lambda_b, "Rate of the ST->monitor gain");
    override_opt(app, "--lambda-c", o.lambda_c, "Rate of the monitor->SR gain");
    override_opt(app, "--tx-power-db", o.tx_power_db, "ST transmit power (dB)");
    override_opt(app, "--qmax-db", o.qmax_db, "Jamming budget Q_max (dB)");
    override_opt(app, "--noise-sr", o.noise_sr, "Noise power at the SR");
    override_opt(app, "--noise-monitor", o.noise_monitor, "Noise power at the monitor");
    override_opt(app, "--noise-st", o.noise_st, "Noise power at the ST");
    override_opt(app, "--outage", o.outage, "Outage target delta");
    const std::map<std::string, Format> formats{{"text", Format::text}, {"csv", Format::csv}, {"json", Format::json}};
    app.add_option("--format", c.format, "Output format")->transform(CLI::CheckedTransformer(formats));
    app.add_option("--out", c.out_path, "Output file (default stdout)");
    app.add_option("--seed", c.seed, "Monte Carlo seed");
    app.add_option("--samples", c.samples, "Monte Carlo blocks")->check(CLI::PositiveNumber);
    app.add_flag("--strict", c.strict, "Fail on the first bad sweep point");

    int eval_n = 0;
    auto* eval = app.add_subcommand("eval", "Evaluate passive and n-channel jamming");
    eval->add_option("--n", eval_n, "Jammed channels (0: passive only)")->required();

    auto* optimize = app.add_subcommand("optimize", "One-way optimal number of jammed channels");

    double w_ab = 1.0, w_ba = 1.0;
    bool with_regimes = false;
    auto* twoway = app.add_subcommand("twoway", "Two-way max-min optimal number of jammed channels");
    twoway->add_option("--weight-ab", w_ab, "Weight of the A->B direction");
    twoway->add_option("--weight-ba", w_ba, "Weight of the B->A direction");
    twoway->add_flag("--regimes", with_regimes, "Also classify the budget regime");

    auto* threshold = app.add_subcommand("threshold", "Two-channel budget where jamming starts to pay (N=2)");
    auto* regimes = app.add_subcommand("regimes", "Two-way budget thresholds");

    SweepOptions so;
    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    std::vector<std::string> kind_names;
    for (auto k : {SweepKind::phi_vs_q, SweepKind::profile_vs_n, SweepKind::twoway_profile, SweepKind::phi_vs_gain,
                   SweepKind::placement_grid, SweepKind::twoway_path}) {
        kind_names.emplace_back(to_string(k));
    }
    sweep->add_option("--kind", so.kind, "Sweep kind")->required()->check(CLI::IsMember(kind_names));
    sweep->add_option("--start", so.start, "Axis start");
    sweep->add_option("--stop", so.stop, "Axis stop");
    sweep->add_option("--count", so.count, "Axis points");
    sweep->add_flag("--log-axis", so.log_axis, "Logarithmic axis spacing");
    sweep->add_option("--y-start", so.y_start, "Second axis start (placement_grid)");
    sweep->add_option("--y-stop", so.y_stop, "Second axis stop (placement_grid)");
    sweep->add_option("--y-count", so.y_count, "Second axis points (placement_grid)");
    sweep->add_option("--q-db-list", so.q_db_list, "Budgets for profile_vs_n (dB)");
    sweep->add_option("--channel-counts", so.channel_counts, "Channel counts for phi_vs_gain");
    sweep->add_option("--st", so.st, "ST position x y")->expected(2);
    sweep->add_option("--sr", so.sr, "SR position x y")->expected(2);
    sweep->add_option("--user-a", so.user_a, "User A position x y")->expected(2);
    sweep->add_option("--user-b", so.user_b, "User B position x y")->expected(2);
    sweep->add_option("--path-from", so.path_from, "Monitor path start x y")->expected(2);
    sweep->add_option("--path-to", so.path_to, "Monitor path end x y")->expected(2);
    sweep->add_flag("--mc", so.monte_carlo, "Add Monte Carlo columns");
    sweep->add_flag("--serial", so.serial, "Evaluate grid points serially");
    sweep->add_option("--svg", so.svg_path, "Also write an SVG plot");

    double z_limit = 3.0;
    auto* validate = app.add_subcommand("validate", "Analytic vs Monte Carlo comparison");
    validate->add_option("--z-limit", z_limit, "Largest accepted deviation in standard errors");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const Effective eff = merge(c);
        const bool base_overridden =
            !c.scenario_path.empty() || o.n_channels || o.lambda_a || o.lambda_b || o.lambda_c || o.tx_power_db ||
            o.qmax_db || o.noise_sr || o.noise_monitor || o.noise_st || o.outage;
        Report report;
        std::string command;
        if (eval->parsed()) {
            command = "eval";
            report = cmd_eval(eff, eval_n);
        } else if (optimize->parsed()) {
            command = "optimize";
            report = cmd_optimize(eff);
        } else if (twoway->parsed()) {
            command = "twoway";
            report = cmd_twoway(eff, w_ab, w_ba, with_regimes);
        } else if (threshold->parsed()) {
            command = "threshold";
            report = cmd_threshold(eff);
        } else if (regimes->parsed()) {
            command = "regimes";
            report = cmd_regimes(eff);
        } else if (sweep->parsed()) {
            command = "sweep";
            report = cmd_sweep(eff, so, base_overridden, c.strict);
        } else {
            command = "validate";
            report = cmd_validate(eff, z_limit);
        }

        std::ostringstream buffer;
        Effective echoed = eff;
        if (report.base_used) echoed.params = *report.base_used;
        emit(buffer, c.format, command, scenario_echo(echoed), report);
        if (c.out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(c.out_path);
            if (!file) throw ConfigError("cannot write " + c.out_path);
            file << buffer.str();
        }
        return report.exit_code;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace jamsurv::cli
