#pragma once

namespace jamsurv {

/// Exponential integral E1(x) = int_x^inf e^-t / t dt = -Ei(-x), x > 0.
/// Relative accuracy ~1e-15. Underflows to 0 for x beyond ~745.
double e1(double x);

/// e^x E1(x), finite for all x > 0 (no overflow up to the double range).
double e1_scaled(double x);

/// Upper incomplete gamma Gamma(1-j, x) for integer j >= 1, x > 0.
/// j = 1 is E1(x).
double upper_gamma_nonpos(int j, double x);

/// e^x Gamma(1-j, x), the overflow-safe companion of upper_gamma_nonpos.
double upper_gamma_nonpos_scaled(int j, double x);

namespace detail {

/// x^j e^x Gamma(1-j, x), which lies in (0, 1) for every x > 0 and tends
/// to 1 as x -> inf. Evaluated in extended precision: upward recurrence
/// H_{k+1} = x (1 - H_k) / k from H_1 = x e^x E1(x) for x <= 1, where it
/// is stable, and the Legendre continued fraction for x > 1. Orders past
/// kMaxRecurrenceOrder go through direct quadrature.
long double power_scaled_upper_gamma(int j, long double x);

long double e1_scaled_ext(long double x);

inline constexpr int kMaxRecurrenceOrder = 64;

}  // namespace detail

}  // namespace jamsurv
