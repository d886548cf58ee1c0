#include <doctest.h>

#include <cmath>

#include "jamsurv/errors.hpp"
#include "jamsurv/fading.hpp"
#include "jamsurv/montecarlo.hpp"
#include "jamsurv/rates.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace jamsurv;
using testutil::rel_close;

TEST_CASE("passive rate inverts the best-channel outage") {
    const ScenarioParams p = testutil::baseline();
    const double r = passive_rate(p, 8);
    CHECK(rel_close(r, oracle::kRatePassiveBaseline, 1e-14));
    const double outage = std::pow(1.0 - std::exp(-std::expm1(r * std::log(2.0)) / 10.0), 8);
    CHECK(std::fabs(outage - 0.05) <= 1e-12);
    CHECK(passive_rate(p, 1) < passive_rate(p, 4));
    CHECK_THROWS_AS(passive_rate(p, 0), DomainError);

    ScenarioParams tiny = p;
    tiny.outage_target = 1e-80;
    CHECK(passive_rate(tiny, 8) < 1e-8);
}

TEST_CASE("jammed rate against frozen root values") {
    const ScenarioParams p = testutil::baseline();
    for (int n = 1; n <= 7; ++n) {
        const RateSolution s = jammed_rate_equal(p, n);
        CHECK_MESSAGE(rel_close(s.rate, oracle::kRateBaseline[n - 1], 1e-11), "n = " << n);
        const double u = std::expm1(s.rate * std::log(2.0));
        const double lhs = outage_probability(p, JammingStrategy::equal_split(n, p.jam_budget), u);
        CHECK(std::fabs(lhs - 0.05) <= 1e-10);
        CHECK(std::fabs(s.residual) <= 1e-10);
    }
}

TEST_CASE("jammed rate lies in its bracket and decreases in n and Q") {
    const ScenarioParams p = testutil::baseline();
    double prev = INFINITY;
    for (int n = 1; n <= 7; ++n) {
        const double r = jammed_rate_equal(p, n).rate;
        CHECK(r >= passive_rate(p, 8 - n));
        CHECK(r <= passive_rate(p, 8));
        CHECK(r < prev);
        prev = r;
    }
    for (int n : {1, 4, 7}) {
        double last = INFINITY;
        for (int i = 0; i < 20; ++i) {
            const double q = std::pow(10.0, -2.0 + 0.35 * i);
            const double r = jammed_rate_equal(p.with_budget(q), n).rate;
            CHECK(r < last);
            last = r;
        }
    }
}

TEST_CASE("jammed rate limits in the budget") {
    const ScenarioParams p = testutil::baseline();
    for (int n : {1, 3, 7}) {
        CHECK(jammed_rate_equal(p.with_budget(1e-9), n).rate == doctest::Approx(passive_rate(p, 8)).epsilon(1e-8));
        CHECK(jammed_rate_equal(p.with_budget(1e12), n).rate ==
              doctest::Approx(passive_rate(p, 8 - n)).epsilon(1e-6));
    }
}

TEST_CASE("outage is increasing along the bracket") {
    const ScenarioParams p = testutil::baseline();
    const JammingStrategy s({10.0, 70.0, 20.0});
    const double lo = std::expm1(passive_rate(p, 5) * std::log(2.0));
    const double hi = std::expm1(passive_rate(p, 8) * std::log(2.0));
    double prev = outage_probability(p, s, lo);
    for (int i = 1; i <= 50; ++i) {
        const double v = outage_probability(p, s, lo + (hi - lo) * i / 50.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("unequal allocations and the empirical quantile") {
    const ScenarioParams p = testutil::baseline();
    const JammingStrategy s = JammingStrategy::equal_split(5, p.jam_budget);
    const RateSolution r = jammed_rate(p, s);
    const MonteCarloEstimate m = estimate_rate(p, s, {21, 1'000'000, Execution::parallel});
    CHECK(m.z_score(r.rate) <= 3.0);

    const RateSolution u = jammed_rate(p, JammingStrategy({5.0, 15.0, 80.0}));
    CHECK(std::fabs(u.residual) <= 1e-10);
    CHECK_THROWS_AS(jammed_rate(p, JammingStrategy({80.0, 80.0})), DomainError);
    CHECK_THROWS_AS(jammed_rate(p, JammingStrategy::passive()), DomainError);
}

TEST_CASE("rates reject invalid outage targets") {
    ScenarioParams p = testutil::baseline();
    p.outage_target = 1.0;
    CHECK_THROWS_AS(passive_rate(p, 8), DomainError);
    CHECK_THROWS_AS(jammed_rate_equal(p, 2), DomainError);
}
