// Acceptance gate: one PASS/FAIL line per criterion; exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/expint.hpp>

#include "jamsurv/experiments.hpp"
#include "jamsurv/fading.hpp"
#include "jamsurv/montecarlo.hpp"
#include "jamsurv/objective.hpp"
#include "jamsurv/owngoal.hpp"
#include "jamsurv/rates.hpp"
#include "jamsurv/rng.hpp"
#include "jamsurv/specfun.hpp"
#include "test_util.hpp"

using namespace jamsurv;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

struct Criterion {
    int id;
    const char* title;
    double time_limit_s;
    std::function<void(Verdict&)> body;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void one_way_baseline(Verdict& v) {
    const OptimizationOutcome o = optimize_one_way(testutil::baseline());
    v.require(o.chosen_scheme == Scheme::jamming && o.n_star == 5,
              "n* = " + std::to_string(o.n_star.value_or(0)) + ", expected 5");
    const auto& prof = o.profile;
    int peaks = 0;
    for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
        const bool rising = prof[i + 1].eval.phi > prof[i].eval.phi;
        const bool next_rising = i + 2 < prof.size() && prof[i + 2].eval.phi > prof[i + 1].eval.phi;
        if (rising && !next_rising) ++peaks;
        if (!rising && next_rising) v.require(false, "profile has a valley at n = " + std::to_string(i + 2));
    }
    v.require(peaks == 1, "profile is not unimodal");
    v.detail << "n*=" << o.n_star.value_or(0) << " phi*=" << fmt(o.phi_star);
}

void two_way_asymmetric(Verdict& v) {
    const TwoWayOutcome t = optimize_two_way(testutil::asymmetric());
    const int ab = t.one_way_ab.n_star.value_or(0);
    const int ba = t.one_way_ba.n_star.value_or(0);
    const int n = t.n_star.value_or(0);
    v.require(ab == 2, "n*_AB = " + std::to_string(ab) + ", expected 2");
    v.require(ba == 6, "n*_BA = " + std::to_string(ba) + ", expected 6");
    v.require(n == 5, "n* = " + std::to_string(n) + ", expected 5");
    if (v.pass) v.detail << "n*_AB=2 n*_BA=6 n*=5";
}

void budget_endpoints(Verdict& v) {
    const ScenarioParams base = testutil::baseline();
    const OptimizationOutcome low = optimize_one_way(base.with_budget(from_db(4.0)));
    const OptimizationOutcome high = optimize_one_way(base.with_budget(from_db(40.0)));
    v.require(low.chosen_scheme == Scheme::passive,
              "4 dB: chose " + std::string(to_string(low.chosen_scheme)) + " n=" +
                  std::to_string(low.n_star.value_or(0)) + " (phi(1)=" + fmt(low.profile[0].eval.phi) +
                  " vs passive " + fmt(low.passive.phi) + ")");
    v.require(high.n_star == 7, "40 dB: n* = " + std::to_string(high.n_star.value_or(0)) + ", expected 7");
    if (v.pass) v.detail << "4 dB passive, 40 dB n*=7";
}

void monte_carlo_equivalence(Verdict& v) {
    const ScenarioParams p = testutil::baseline();
    double worst = 0.0;
    for (int n = 1; n <= 7; ++n) {
        const LinkEvaluation e = phi_jamming(p, n);
        const SimulationConfig cfg{1234u + static_cast<std::uint64_t>(n), 10'000'000,
                                   Execution::parallel};
        const LinkSimulation m = simulate_link(p, JammingStrategy::equal_split(n, p.jam_budget), cfg, e.rate);
        const double z_rho = m.own_goal.z_score(e.rho);
        const double z_rate = m.rate.z_score(e.rate);
        const double z_phi = m.phi.z_score(e.phi);
        const std::string at = "n=" + std::to_string(n) + " ";
        v.require(z_rho <= 3.0, at + "rho off by " + fmt(z_rho) + " SE");
        v.require(z_rate <= 3.0, at + "rate off by " + fmt(z_rate) + " SE");
        v.require(z_phi <= 3.0, at + "phi off by " + fmt(z_phi) + " SE");
        worst = std::max({worst, z_rho, z_rate, z_phi});
    }
    if (v.pass) v.detail << "max deviation " << fmt(worst) << " SE over 21 checks at 1e7 blocks";
}

void formula_cross_checks(Verdict& v) {
    double worst_sum = 0.0;
    for (int N = 2; N <= 12; ++N) {
        for (int n = 1; n < N; ++n) {
            for (double q : {0.01, 1.0, 100.0, 1e4}) {
                ScenarioParams p;
                p.n_channels = N;
                p.jam_budget = q;
                const double a = rho_multi_sum(p, n).rho;
                const double b = rho_quadrature(p, n).rho;
                worst_sum = std::max(worst_sum, std::fabs(a - b) / b);
            }
        }
    }
    v.require(worst_sum <= 1e-8, "sum vs quadrature relative gap " + fmt(worst_sum));

    double worst_two = 0.0;
    const ScenarioParams two = testutil::two_channel();
    for (double q = 1e-4; q <= 1e8; q *= 1.5) {
        const double a = rho_two_channel(two, q).rho;
        const double b = rho_quadrature(two.with_budget(q), 1).rho;
        worst_two = std::max(worst_two, std::fabs(a - b) / b);
    }
    v.require(worst_two <= 1e-9, "two-channel closed form vs quadrature relative gap " + fmt(worst_two));

    double worst_e1 = 0.0;
    for (double x = 1e-3; x <= 50.0; x *= 1.02) {
        const double ref = -boost::math::expint(-x);
        worst_e1 = std::max({worst_e1, std::fabs(upper_gamma_nonpos(1, x) - e1(x)) / e1(x),
                             std::fabs(upper_gamma_nonpos(1, x) - ref) / ref});
    }
    v.require(worst_e1 <= 1e-12, "Gamma(0,x) vs E1(x) relative gap " + fmt(worst_e1));
    if (v.pass) {
        v.detail << "sum " << fmt(worst_sum) << ", two-channel " << fmt(worst_two) << ", Gamma(0,x) "
                 << fmt(worst_e1);
    }
}

void budget_limits(Verdict& v) {
    const ScenarioParams p = testutil::baseline();
    const int N = p.n_channels;
    const double ratio = p.lambda_b * p.noise_monitor / (p.lambda_a * p.noise_sr);
    const ScenarioParams lo = p.with_budget(1e-9);
    const ScenarioParams hi = p.with_budget(1e12);
    double gap_rho_lo = 0.0, gap_phi_lo = 0.0, rho_hi = 0.0, gap_phi_hi = 0.0;
    for (int n = 1; n < N; ++n) {
        const LinkEvaluation a = phi_jamming(lo, n);
        const double limit_lo =
            (1.0 - static_cast<double>(n) / N) * std::exp(ratio * std::log1p(-std::pow(p.outage_target, 1.0 / N)));
        gap_rho_lo = std::max(gap_rho_lo, std::fabs(a.rho - static_cast<double>(n) / N));
        gap_phi_lo = std::max(gap_phi_lo, std::fabs(a.phi - limit_lo));

        const LinkEvaluation b = phi_jamming(hi, n);
        const double limit_hi = std::exp(ratio * std::log1p(-std::pow(p.outage_target, 1.0 / (N - n))));
        rho_hi = std::max(rho_hi, b.rho);
        gap_phi_hi = std::max(gap_phi_hi, std::fabs(b.phi - limit_hi));
    }
    v.require(gap_rho_lo <= 1e-6, "small budget: |rho - n/N| = " + fmt(gap_rho_lo));
    v.require(gap_phi_lo <= 1e-8, "small budget: phi off its limit by " + fmt(gap_phi_lo));
    v.require(rho_hi <= 1e-6, "large budget: rho = " + fmt(rho_hi));
    v.require(gap_phi_hi <= 1e-6, "large budget: phi off its limit by " + fmt(gap_phi_hi));

    const ScenarioParams two = testutil::two_channel();
    const double r0 = rho_two_channel(two, 1e-9).rho;
    const double rinf = rho_two_channel(two, 1e12).rho;
    v.require(std::fabs(r0 - 0.5) <= 1e-6, "two-channel rho at small budget = " + fmt(r0));
    v.require(rinf <= 1e-6, "two-channel rho at large budget = " + fmt(rinf));
    if (v.pass) {
        v.detail << "gaps: rho0 " << fmt(gap_rho_lo) << ", phi0 " << fmt(gap_phi_lo) << ", rhoInf " << fmt(rho_hi)
                 << ", phiInf " << fmt(gap_phi_hi);
    }
}

void monotonicity(Verdict& v) {
    const ScenarioParams two = testutil::two_channel();
    double prev_rho = INFINITY, prev_rate = INFINITY, prev_phi = -INFINITY;
    for (int i = 0; i < 30; ++i) {
        const double q = std::pow(10.0, -3.0 + 9.0 * i / 29.0);
        const LinkEvaluation e = phi_jamming(two.with_budget(q), 1);
        const std::string at = " at Q=" + fmt(q);
        v.require(e.rho < prev_rho, "two-channel rho not decreasing" + at);
        v.require(e.rate < prev_rate, "two-channel rate not decreasing" + at);
        v.require(e.phi > prev_phi, "two-channel phi not increasing" + at);
        prev_rho = e.rho;
        prev_rate = e.rate;
        prev_phi = e.phi;
    }
    for (double q : {0.01, 1.0, 100.0, 1e4, 1e6}) {
        const ScenarioParams p = testutil::baseline().with_budget(q);
        double last_rho = 0.0, last_rate = INFINITY;
        for (int n = 1; n < p.n_channels; ++n) {
            const LinkEvaluation e = phi_jamming(p, n);
            const std::string at = " at n=" + std::to_string(n) + ", Q=" + fmt(q);
            v.require(e.rho > last_rho, "rho not increasing in n" + at);
            v.require(e.rate < last_rate, "rate not decreasing in n" + at);
            last_rho = e.rho;
            last_rate = e.rate;
        }
    }
    if (v.pass) v.detail << "30-point budget grid and n = 1..7 at 5 budgets";
}

void equal_split_dominance(Verdict& v) {
    const ScenarioParams p = testutil::baseline();
    double worst = -INFINITY;
    for (int n : {2, 3, 5}) {
        const double equal = phi_jamming(p, n).phi;
        StreamRng alloc(0xd0713a7eULL, static_cast<std::uint64_t>(n));
        for (int k = 0; k < 20; ++k) {
            // uniform on the simplex, scaled to the budget
            std::vector<double> w(static_cast<std::size_t>(n));
            double sum = 0.0;
            for (double& x : w) sum += (x = alloc.exponential(1.0));
            for (double& x : w) x *= p.jam_budget / sum;
            const JammingStrategy s(w);
            const SimulationConfig cfg{mix64(alloc()), 1'000'000, Execution::parallel};
            const MonteCarloEstimate m = estimate_phi(p, s, cfg);
            const double margin = (m.value - equal) / m.std_error;
            worst = std::max(worst, margin);
            v.require(m.value <= equal + 3.0 * m.std_error,
                      "n=" + std::to_string(n) + " allocation " + std::to_string(k) + " beats equal split by " +
                          fmt(margin) + " SE");
        }
    }
    if (v.pass) v.detail << "60 allocations; closest at " << fmt(worst) << " SE above";
}

void two_way_path(Verdict& v) {
    const Table t = run_sweep(default_sweep(SweepKind::twoway_path));
    const std::size_t rows = t.rows.size();
    double asym = 0.0;
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        v.require(std::get<std::string>(t.at(i, "status")) == "ok", "row " + std::to_string(i) + " failed");
        asym = std::max(asym, std::fabs(t.number(i, "phi_minmax") - t.number(rows - 1 - i, "phi_minmax")));
        if (t.number(i, "phi_minmax") > t.number(argmax, "phi_minmax")) argmax = i;
    }
    v.require(asym <= 1e-6, "asymmetry about x=2 is " + fmt(asym));
    v.require(std::fabs(t.number(argmax, "x") - 2.0) < 1e-12, "maximum at x=" + fmt(t.number(argmax, "x")));
    for (std::size_t i = 0; i < rows && t.number(i, "x") <= 0.3 + 1e-12; ++i) {
        v.require(t.number(i, "n_star") == t.number(i, "n_star_ba"),
                  "x=" + fmt(t.number(i, "x")) + ": n*=" + fmt(t.number(i, "n_star")) +
                      " but n*_BA=" + fmt(t.number(i, "n_star_ba")));
    }
    if (v.pass) {
        v.detail << "asymmetry " << fmt(asym) << ", max " << fmt(t.number(argmax, "phi_minmax")) << " at x=2";
    }
}

void root_contract(Verdict& v) {
    StreamRng rng(0x5007ULL, 0);
    auto uniform = [&](double a, double b) { return a + (b - a) * rng.uniform_open0(); };
    auto log_uniform = [&](double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); };
    double worst_residual = 0.0;
    int unequal = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        ScenarioParams p;
        p.n_channels = 2 + static_cast<int>(rng() % 15);
        p.lambda_a = log_uniform(0.05, 20.0);
        p.lambda_b = log_uniform(0.05, 20.0);
        p.lambda_c = log_uniform(0.05, 20.0);
        p.tx_power = from_db(uniform(-5.0, 30.0));
        p.jam_budget = from_db(uniform(-20.0, 50.0));
        p.noise_sr = log_uniform(0.1, 10.0);
        p.noise_monitor = log_uniform(0.1, 10.0);
        p.outage_target = log_uniform(1e-4, 0.5);
        const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(p.n_channels - 1));
        std::vector<double> powers(static_cast<std::size_t>(n), p.jam_budget / n);
        if (trial % 2 == 1) {
            double sum = 0.0;
            for (double& x : powers) sum += (x = rng.exponential(1.0));
            for (double& x : powers) x *= p.jam_budget / sum;
            ++unequal;
        }
        const JammingStrategy s(powers);
        const RateSolution r = jammed_rate(p, s);
        const double lhs = outage_probability(p, s, std::expm1(r.rate * std::log(2.0)));
        const double residual = std::fabs(lhs - p.outage_target);
        worst_residual = std::max(worst_residual, residual);
        v.require(residual <= 1e-10, "trial " + std::to_string(trial) + ": residual " + fmt(residual));
        // the root may sit on either bracket end up to the solver's x tolerance
        const double lo = passive_rate(p, p.n_channels - n);
        const double hi = passive_rate(p, p.n_channels);
        const double slack = 1e-12 * hi;
        v.require(r.rate >= lo - slack && r.rate <= hi + slack,
                  "trial " + std::to_string(trial) + ": rate " + fmt(r.rate) + " outside [" + fmt(lo) + ", " +
                      fmt(hi) + "]");
    }
    if (v.pass) v.detail << "1000 scenarios (" << unequal << " unequal splits), max residual " << fmt(worst_residual);
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "one-way optimum on the baseline scenario", 1.0, one_way_baseline},
        {2, "two-way optimum on the asymmetric scenario", 2.0, two_way_asymmetric},
        {3, "budget endpoints of the one-way decision", 2.0, budget_endpoints},
        {4, "analytic vs Monte Carlo own goal, rate and success", 60.0, monte_carlo_equivalence},
        {5, "closed forms vs quadrature", 0.0, formula_cross_checks},
        {6, "small- and large-budget limits", 0.0, budget_limits},
        {7, "monotonicity in budget and jammed channels", 0.0, monotonicity},
        {8, "equal split dominates unequal allocations", 120.0, equal_split_dominance},
        {9, "two-way monitor path shape", 30.0, two_way_path},
        {10, "rate root-solver contract", 0.0, root_contract},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit_s > 0.0) {
            v.require(secs < c.time_limit_s, "took " + fmt(secs) + " s, limit " + fmt(c.time_limit_s) + " s");
        }
        failed += !v.pass;
        std::printf("%s [%d] %s (%.2f s): %s\n", v.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                    v.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
