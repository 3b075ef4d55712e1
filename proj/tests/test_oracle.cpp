// Reference integrators and the Monte-Carlo estimator: these share no
// discretization with the rule-based formulas they validate.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "raycap/channel.hpp"
#include "raycap/errors.hpp"
#include "raycap/oracle.hpp"
#include "raycap/quadrature.hpp"

using namespace raycap;

namespace {

const QuadratureRule& q15() {
  static const QuadratureRule rule = half_range_hermite_rule(15);
  return rule;
}

constexpr double kNoiseEntropy = 0.5954606518908211208860239;

// Output entropy references from 30-digit nested quadrature (independent
// tooling), 12 significant digits.
constexpr double kHy1 = 0.974181338890;
constexpr double kHy100 = 2.994957154920;

}  // namespace

TEST_CASE("adaptive output entropy: zero power reduces to the noise entropy") {
  const IntegralEstimate est = numeric_h_y(0.0, 1e-10);
  CHECK(std::abs(est.value - kNoiseEntropy) < 1e-9);
  CHECK(std::abs(est.value - kNoiseEntropy) <= est.error_bound + 1e-12);
  CHECK(est.error_bound >= 0.0);
  CHECK(std::isfinite(est.error_bound));
}

TEST_CASE("adaptive output entropy: reference values and honest bounds") {
  const IntegralEstimate at_one = numeric_h_y(1.0, 1e-8);
  CHECK(std::abs(at_one.value - kHy1) < 1e-8);
  CHECK(std::abs(at_one.value - kHy1) <= at_one.error_bound + 1e-11);

  const IntegralEstimate at_hundred = numeric_h_y(100.0, 1e-8);
  CHECK(std::abs(at_hundred.value - kHy100) < 1e-8);
  CHECK(std::abs(at_hundred.value - kHy100) <= at_hundred.error_bound + 1e-11);

  // The rule-based formula and the adaptive route must agree at unit power.
  CHECK(std::abs(at_one.value - h_y(1.0, q15(), q15())) < 1e-5);
}

TEST_CASE("adaptive output entropy: insensitive to the truncation threshold") {
  const double tol = 1e-8;
  const IntegralEstimate base = numeric_h_y(1.0, tol, 1e-2);
  const IntegralEstimate tight = numeric_h_y(1.0, tol, 5e-3);
  CHECK(std::abs(base.value - tight.value) <= 2.0 * tol);

  const IntegralEstimate base_hp = numeric_h_y(100.0, tol, 1e-2);
  const IntegralEstimate tight_hp = numeric_h_y(100.0, tol, 5e-3);
  CHECK(std::abs(base_hp.value - tight_hp.value) <= 2.0 * tol);
}

TEST_CASE("adaptive conditional entropy validates the closed form") {
  for (double s : {0.1, 1.0, 10.0, 100.0}) {
    const IntegralEstimate est = numeric_h_y_given_x(s, 1e-10);
    const double closed = h_y_given_x(s);
    CHECK(std::abs(est.value - closed) < 1e-9);
    // Calibration: the reported bound dominates the observed deviation.
    CHECK(std::abs(est.value - closed) <= est.error_bound + 1e-13);
  }
}

TEST_CASE("bound calibration across a power grid") {
  // The closed conditional entropy is exact, so every deviation of the
  // adaptive estimate must sit inside its own reported bound.
  for (double s : {0.03, 0.3, 0.7, 2.0, 5.0, 20.0, 50.0, 300.0}) {
    const IntegralEstimate est = numeric_h_y_given_x(s, 1e-9);
    CHECK(std::abs(est.value - h_y_given_x(s)) <= est.error_bound + 1e-13);
  }
}

TEST_CASE("rule-based output density carries unit mass") {
  for (double s : {0.1, 1.0, 10.0}) {
    const IntegralEstimate mass = output_density_mass(s, q15(), 1e-10);
    CHECK(std::abs(mass.value - 1.0) < 1e-9);
  }
}

TEST_CASE("generator: determinism and unit-interval output") {
  Xoshiro256pp a(12345);
  Xoshiro256pp b(12345);
  for (int i = 0; i < 32; ++i) {
    CHECK(a.next() == b.next());
  }

  Xoshiro256pp c(12345);
  Xoshiro256pp d(54321);
  bool all_equal = true;
  for (int i = 0; i < 8; ++i) {
    if (c.next() != d.next()) all_equal = false;
  }
  CHECK_FALSE(all_equal);

  Xoshiro256pp u(7);
  double sum = 0.0;
  double min_seen = 2.0;
  for (int i = 0; i < 100000; ++i) {
    const double v = u.next_unit();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    sum += v;
    min_seen = std::min(min_seen, v);
  }
  CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
  CHECK(min_seen < 0.001);  // the low tail is actually reached
}

TEST_CASE("Monte Carlo: bit-reproducible for a fixed seed") {
  const McEstimate first = mc_mutual_info(1.0, 20000, 42);
  const McEstimate second = mc_mutual_info(1.0, 20000, 42);
  CHECK(first.mean == second.mean);          // bitwise
  CHECK(first.std_error == second.std_error);  // bitwise

  const McEstimate other_seed = mc_mutual_info(1.0, 20000, 43);
  CHECK(first.mean != other_seed.mean);
}

TEST_CASE("Monte Carlo: agrees with the rule-based mutual information") {
  const McEstimate est = mc_mutual_info(1.0, 200000, 42);
  const double mi = mutual_information(1.0, q15(), q15());
  CHECK(est.std_error > 0.0);
  CHECK(est.std_error < 2e-3);
  CHECK(std::abs(est.mean - mi) <= 3.0 * est.std_error);
}

TEST_CASE("Monte Carlo: vanishing power gives an estimate consistent with 0") {
  const McEstimate est = mc_mutual_info(1e-6, 100000, 42);
  CHECK(std::abs(est.mean) <= 3.0 * est.std_error);
}

TEST_CASE("Monte Carlo: argument validation") {
  CHECK_THROWS_AS(mc_mutual_info(0.0, 10000, 42), domain_error);
  CHECK_THROWS_AS(mc_mutual_info(1.0, 999, 42), std::invalid_argument);
}
