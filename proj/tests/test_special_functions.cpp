#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "raycap/errors.hpp"
#include "raycap/special_functions.hpp"

using raycap::exp_integral_ei;
using raycap::exp_scaled_e1;
using raycap::hermite_poly;
using raycap::ln_gamma_half_integer;
using raycap::MathConstants;

namespace {
// 25-digit reference values computed independently with mpmath at 40-digit
// working precision, frozen here.
constexpr double kEiM1 = -0.2193839343955202736771638;
constexpr double kEiM05 = -0.5597735947761608117467959;
constexpr double kEiM2 = -0.04890051070806111956723984;
constexpr double kEiM6 = -0.0003600824521626586592953941;
constexpr double kEiM65 = -0.0002034298668393981973738333;
constexpr double kEiM10 = -4.15696892968532427740286e-6;
constexpr double kEiM100 = -3.683597761682032180235193e-46;
constexpr double kEiM700 = -1.406518766234032922774411e-307;
constexpr double kEiM1em6 = -13.23829589306249124355699;
constexpr double kEiM1em8 = -17.84346508905083258653742;
}  // namespace

TEST_CASE("exponential integral matches frozen references") {
  // Contract: absolute error at most 1e-13 across |x| in [1e-8, 700].
  CHECK(std::fabs(exp_integral_ei(-1.0) - kEiM1) <= 1e-13);
  CHECK(std::fabs(exp_integral_ei(-0.5) - kEiM05) <= 1e-13);
  CHECK(std::fabs(exp_integral_ei(-2.0) - kEiM2) <= 1e-13);
  CHECK(std::fabs(exp_integral_ei(-6.0) - kEiM6) <= 1e-13);
  CHECK(std::fabs(exp_integral_ei(-6.5) - kEiM65) <= 1e-13);
  CHECK(std::fabs(exp_integral_ei(-10.0) - kEiM10) <= 1e-13);
  CHECK(std::fabs(exp_integral_ei(-1e-6) - kEiM1em6) <= 1e-13);
  CHECK(std::fabs(exp_integral_ei(-1e-8) - kEiM1em8) <= 1e-13);
  // Deep in the underflow-adjacent range only relative accuracy is
  // meaningful (the values are ~1e-46 and ~1e-307).
  CHECK(std::fabs(exp_integral_ei(-100.0) / kEiM100 - 1.0) <= 1e-12);
  CHECK(std::fabs(exp_integral_ei(-700.0) / kEiM700 - 1.0) <= 1e-12);
}

TEST_CASE("exponential integral underflows to signed zero") {
  for (double x : {-746.0, -800.0, -1e6}) {
    const double v = exp_integral_ei(x);
    CHECK(v == 0.0);
    CHECK(std::signbit(v));
  }
}

TEST_CASE("exponential integral rejects arguments outside its domain") {
  CHECK_THROWS_AS(exp_integral_ei(0.0), raycap::domain_error);
  CHECK_THROWS_AS(exp_integral_ei(1.0), raycap::domain_error);
  CHECK_THROWS_AS(exp_integral_ei(std::nan("")), raycap::domain_error);
  CHECK_THROWS_AS(exp_integral_ei(-INFINITY), raycap::domain_error);
}

TEST_CASE("scaled E1 agrees with the unscaled branch and stays bounded") {
  // e^w E1(w) = -e^w Ei(-w); cross-check against the frozen Ei values.
  CHECK(std::fabs(exp_scaled_e1(1.0) - (-std::exp(1.0) * kEiM1)) <= 1e-14);
  CHECK(std::fabs(exp_scaled_e1(0.5) - (-std::exp(0.5) * kEiM05)) <= 1e-14);
  CHECK(std::fabs(exp_scaled_e1(10.0) / (-std::exp(10.0) * kEiM10) - 1.0) <=
        1e-12);
  CHECK(std::fabs(exp_scaled_e1(100.0) / (-std::exp(100.0) * kEiM100) - 1.0) <=
        1e-12);
  // Asymptotically e^w E1(w) = (1/w)(1 - 1/w + O(1/w²)): no overflow at
  // arguments whose unscaled form would be far outside double range.
  CHECK(std::fabs(1e6 * exp_scaled_e1(1e6) - 1.0) <= 2e-6);
  CHECK(std::fabs(1e300 * exp_scaled_e1(1e300) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(exp_scaled_e1(0.0), raycap::domain_error);
  CHECK_THROWS_AS(exp_scaled_e1(-1.0), raycap::domain_error);
  CHECK_THROWS_AS(exp_scaled_e1(INFINITY), raycap::domain_error);
}

TEST_CASE("log-gamma at half-integers") {
  // Γ(1/2) = √π, Γ(1) = 1, Γ(3/2) = √π/2, Γ(5/2) = 3√π/4.
  CHECK(std::fabs(ln_gamma_half_integer(0) - 0.5723649429247000870717136) <=
        1e-15);
  CHECK(ln_gamma_half_integer(1) == 0.0);
  CHECK(std::fabs(ln_gamma_half_integer(2) - (-0.1207822376352452223455184)) <=
        1e-15);
  CHECK(ln_gamma_half_integer(3) == 0.0);
  CHECK(std::fabs(ln_gamma_half_integer(4) - 0.2846828704729191596324678) <=
        1e-15);
  for (int k = 0; k <= 40; ++k) {
    const double ref = std::lgamma((k + 1) / 2.0);
    CHECK(std::fabs(ln_gamma_half_integer(k) - ref) <=
          1e-13 * std::max(1.0, std::fabs(ref)));
  }
  CHECK_THROWS_AS(ln_gamma_half_integer(-1), std::invalid_argument);
}

TEST_CASE("Hermite polynomial recurrence") {
  CHECK(hermite_poly(0, 1.7) == 1.0);
  CHECK(hermite_poly(1, 1.7) == doctest::Approx(3.4).epsilon(1e-15));
  CHECK(hermite_poly(2, 1.3) == doctest::Approx(4.76).epsilon(1e-14));
  CHECK(hermite_poly(3, 0.7) == doctest::Approx(-5.656).epsilon(1e-14));
  // H_{2m}(0) = (-1)^m 2^m (2m-1)!!
  CHECK(hermite_poly(6, 0.0) == doctest::Approx(-120.0));
  CHECK(hermite_poly(10, 0.0) == doctest::Approx(-30240.0));
  CHECK_THROWS_AS(hermite_poly(-1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hermite_poly(65, 0.0), std::invalid_argument);
}

TEST_CASE("shared constants") {
  CHECK(std::fabs(MathConstants::euler_gamma - 0.5772156649015328606065121) <=
        1e-16);
  CHECK(std::fabs(MathConstants::log_two - std::log(2.0)) <= 1e-16);
  CHECK(std::fabs(MathConstants::log_pi_e -
                  (1.0 + std::log(3.14159265358979323846))) <= 1e-15);
  CHECK(std::fabs(MathConstants::sqrt_pi * MathConstants::sqrt_pi -
                  3.14159265358979323846) <= 1e-15);
  CHECK(std::fabs(MathConstants::log_sqrt_pi - 0.5 * std::log(3.14159265358979323846)) <= 1e-15);
}
