#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>

#include "jamsurv/errors.hpp"
#include "jamsurv/specfun.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace jamsurv;
using testutil::rel_close;

TEST_CASE("e1 against frozen quadrature values") {
    CHECK(rel_close(e1(0.5), oracle::kE1Half, 1e-14));
    CHECK(rel_close(e1(1.0), oracle::kE1One, 1e-14));
    CHECK(rel_close(e1_scaled(1.0), oracle::kScaledE1One, 1e-14));
}

TEST_CASE("e1 agrees with Boost expint across both branches") {
    for (double x = 1e-6; x < 700.0; x *= 1.37) {
        const double ref = -boost::math::expint(-x);  // E1(x) = -Ei(-x)
        CHECK_MESSAGE(rel_close(e1(x), ref, 2e-14), "x = " << x);
    }
}

TEST_CASE("e1 bracket, monotonicity and asymptotics") {
    double prev = e1(1e-3);
    for (double x = 1.1e-3; x < 600.0; x *= 1.1) {
        const double v = e1(x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        CHECK(v < std::exp(-x) / x);
        CHECK(v > std::exp(-x) / (x + 1.0));
        prev = v;
    }
    CHECK(e1(1.0) > std::exp(-1.0) / 2.0);
    CHECK(e1(1.0) < std::exp(-1.0));
    CHECK(e1(500.0) * 500.0 * std::exp(500.0) == doctest::Approx(1.0).epsilon(3e-3));
    const double x = 1e6;
    CHECK(rel_close(e1_scaled(x), 1.0 / x - 1.0 / (x * x), 1e-9));
    CHECK(e1(800.0) == 0.0);
    CHECK(std::isfinite(e1_scaled(1e300)));
}

TEST_CASE("special functions reject nonpositive arguments") {
    CHECK_THROWS_AS(e1(0.0), DomainError);
    CHECK_THROWS_AS(e1(-1.0), DomainError);
    CHECK_THROWS_AS(e1_scaled(0.0), DomainError);
    CHECK_THROWS_AS(upper_gamma_nonpos(0, 1.0), DomainError);
    CHECK_THROWS_AS(upper_gamma_nonpos(2, 0.0), DomainError);
    CHECK_THROWS_AS(upper_gamma_nonpos_scaled(1, -2.0), DomainError);
}

TEST_CASE("incomplete gamma of nonpositive order against frozen quadrature") {
    for (int i = 0; i < 3; ++i) {
        for (int j = 1; j <= 12; ++j) {
            const double x = oracle::kGammaX[i];
            CHECK_MESSAGE(rel_close(upper_gamma_nonpos(j, x), oracle::kGamma[i][j - 1], 1e-13),
                          "j = " << j << ", x = " << x);
        }
    }
    CHECK(rel_close(upper_gamma_nonpos(4, 2.0), oracle::kGammaMinus3At2, 1e-13));
    CHECK(rel_close(upper_gamma_nonpos(2, 1.0), std::exp(-1.0) - e1(1.0), 1e-14));
    for (double x : {1e-3, 0.7, 3.0, 50.0}) {
        CHECK(upper_gamma_nonpos(1, x) == doctest::Approx(e1(x)).epsilon(1e-15));
    }
}

TEST_CASE("Gamma(0, x) equals E1(x) on [1e-3, 50]") {
    for (double x = 1e-3; x <= 50.0; x *= 1.05) {
        CHECK(std::fabs(upper_gamma_nonpos(1, x) - e1(x)) <= 1e-12 * e1(x));
    }
}

TEST_CASE("recurrence consistency against direct quadrature") {
    // Gamma(a+1, x) = a Gamma(a, x) + x^a e^-x, a = -j
    for (double x : {0.1, 1.0, 10.0}) {
        for (int j = 1; j <= 12; ++j) {
            const double lhs = upper_gamma_nonpos(j, x);  // Gamma(1-j)
            const double rhs = -j * upper_gamma_nonpos(j + 1, x) + std::pow(x, -j) * std::exp(-x);
            CHECK_MESSAGE(rel_close(lhs, rhs, 1e-10), "j = " << j << ", x = " << x);

            double err = 0.0;
            const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                [j](double t) { return std::pow(t, -j) * std::exp(-t); }, x, INFINITY, 15, 1e-13, &err);
            CHECK(rel_close(lhs, quad, 1e-10));
            CHECK(lhs > 0.0);
        }
    }
}

TEST_CASE("scaled form stays finite where the plain one underflows") {
    // e^x Gamma(1-j, x) ~ x^-j for large x
    for (int j : {1, 3, 8}) {
        const double x = 2000.0;
        CHECK(upper_gamma_nonpos(j, x) == 0.0);
        CHECK(rel_close(upper_gamma_nonpos_scaled(j, x) * std::pow(x, j), 1.0, 1e-2));
    }
}

TEST_CASE("power-scaled form lies in (0, 1) and switches branches seamlessly") {
    for (int j = 1; j <= 64; ++j) {
        for (double x : {1e-8, 0.01, 0.5, 1.0, 1.0000001, 2.0, 30.0, 1e4, 1e8}) {
            const long double h = detail::power_scaled_upper_gamma(j, x);
            CHECK(h > 0.0L);
            CHECK(h < 1.0L);
        }
        const long double below = detail::power_scaled_upper_gamma(j, 1.0L);
        const long double above = detail::power_scaled_upper_gamma(j, std::nextafter(1.0L, 2.0L));
        CHECK(std::fabs(static_cast<double>(below - above)) < 1e-14);
    }
}

TEST_CASE("orders past the recurrence cap use quadrature consistently") {
    const int j = detail::kMaxRecurrenceOrder;
    for (double x : {5.0, 40.0, 120.0}) {
        // one recurrence step across the cap
        const double lhs = upper_gamma_nonpos_scaled(j, x);
        const double rhs = -j * upper_gamma_nonpos_scaled(j + 1, x) + std::pow(x, -j);
        CHECK_MESSAGE(rel_close(lhs, rhs, 1e-8), "x = " << x);
    }
}
