#include <doctest.h>

#include <cmath>

#include "jamsurv/errors.hpp"
#include "jamsurv/montecarlo.hpp"
#include "jamsurv/owngoal.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace jamsurv;
using testutil::rel_close;

TEST_CASE("quadrature and closed-form sum against frozen values") {
    const ScenarioParams p = testutil::baseline();
    for (int n = 1; n <= 7; ++n) {
        const OwnGoalValue q = rho_quadrature(p, n);
        CHECK_MESSAGE(rel_close(q.rho, oracle::kRhoBaseline[n - 1], 1e-12), "n = " << n);
        CHECK(q.method == OwnGoalMethod::quadrature);
        CHECK(q.abs_error <= 1e-10);
        const OwnGoalValue s = rho_multi_sum(p, n);
        CHECK(rel_close(s.rho, oracle::kRhoBaseline[n - 1], 1e-12));
        CHECK(s.method == OwnGoalMethod::closed_form_sum);
    }
}

TEST_CASE("two-channel closed form") {
    const ScenarioParams p = testutil::two_channel();
    CHECK(rel_close(rho_two_channel(p, 100.0).rho, oracle::kRhoTwoChannelQ100, 1e-13));
    for (double q = 1e-3; q < 1e7; q *= 3.7) {
        const double closed = rho_two_channel(p, q).rho;
        CHECK(rel_close(closed, rho_quadrature(p.with_budget(q), 1).rho, 1e-9));
    }
    CHECK(rho_two_channel(p, 1e-9).rho == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(rho_two_channel(p, 1e12).rho < 1e-6);
    CHECK_THROWS_AS(rho_two_channel(p, 0.0), DomainError);
    CHECK_THROWS_AS(rho_two_channel(testutil::baseline(), 1.0), DomainError);
}

TEST_CASE("sum and quadrature agree on the cross-check lattice") {
    for (int N = 2; N <= 12; ++N) {
        for (int n = 1; n < N; ++n) {
            for (double q : {0.01, 1.0, 100.0, 1e4}) {
                ScenarioParams p;
                p.n_channels = N;
                p.jam_budget = q;
                CHECK_MESSAGE(rel_close(rho_multi_sum(p, n).rho, rho_quadrature(p, n).rho, 1e-8),
                              "N=" << N << " n=" << n << " Q=" << q);
            }
        }
    }
}

TEST_CASE("own-goal monotonicity and bounds") {
    for (double q : {0.1, 10.0, 100.0, 1e4}) {
        const ScenarioParams p = testutil::baseline().with_budget(q);
        double prev = 0.0;
        for (int n = 1; n <= 7; ++n) {
            const double rho = rho_quadrature(p, n).rho;
            CHECK(rho > prev);
            CHECK(rho > 0.0);
            CHECK(rho < n / 8.0);
            prev = rho;
        }
    }
    for (int n : {1, 4, 7}) {
        double prev = 1.0;
        for (int i = 0; i < 25; ++i) {
            const double rho = rho_quadrature(testutil::baseline().with_budget(std::pow(10.0, -3.0 + 0.3 * i)), n).rho;
            CHECK(rho < prev);
            prev = rho;
        }
    }
}

TEST_CASE("own-goal limits in the budget") {
    const ScenarioParams p = testutil::baseline();
    for (int n = 1; n <= 7; ++n) {
        CHECK(std::fabs(rho_quadrature(p.with_budget(1e-9), n).rho - n / 8.0) <= 1e-6);
        CHECK(rho_quadrature(p.with_budget(1e12), n).rho <= 1e-6);
        CHECK(rho_quadrature(p.with_budget(0.0), n).rho == doctest::Approx(n / 8.0).epsilon(1e-10));
    }
}

TEST_CASE("own-goal depends on the budget only through Q / (n lambda_c sigma^2)") {
    ScenarioParams a = testutil::baseline();
    ScenarioParams b = a;
    b.lambda_c = 6.0;
    b.jam_budget = 200.0;
    b.lambda_a = 3.0;  // irrelevant
    b.tx_power = 77.0;  // irrelevant
    for (int n = 1; n <= 7; ++n) CHECK(rel_close(rho_quadrature(a, n).rho, rho_quadrature(b, n).rho, 1e-12));
}

TEST_CASE("own-goal against Monte Carlo") {
    const ScenarioParams p = testutil::baseline();
    const SimulationConfig cfg{31, 1'000'000, Execution::parallel};
    const MonteCarloEstimate m3 = estimate_own_goal(p, JammingStrategy::equal_split(3, p.jam_budget), cfg);
    CHECK(m3.z_score(rho_quadrature(p, 3).rho) <= 3.0);

    const ScenarioParams two = testutil::two_channel();
    const MonteCarloEstimate m2 = estimate_own_goal(two, JammingStrategy::equal_split(1, 100.0),
                                                    {32, 10'000'000, Execution::parallel});
    CHECK(m2.z_score(rho_two_channel(two, 100.0).rho) <= 3.0);
}

TEST_CASE("own-goal argument checks") {
    const ScenarioParams p = testutil::baseline();
    CHECK_THROWS_AS(rho_quadrature(p, 0), DomainError);
    CHECK_THROWS_AS(rho_quadrature(p, 8), DomainError);
    CHECK_THROWS_AS(rho_multi_sum(p, 8), DomainError);
    CHECK_THROWS_AS(rho_multi_sum(p.with_budget(0.0), 2), DomainError);
    CHECK_THROWS_AS(rho_quadrature(p.with_budget(-1.0), 2), DomainError);
}
