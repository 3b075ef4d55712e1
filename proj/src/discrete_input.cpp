#include "raycap/discrete_input.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "raycap/channel.hpp"
#include "raycap/errors.hpp"
#include "raycap/quadrature.hpp"
#include "raycap/special_functions.hpp"

namespace raycap {

namespace {

const double kNoiseOnlyEntropy =
    1.0 + 0.5 * MathConstants::euler_gamma - MathConstants::log_two;

void validate(const DiscreteInput& input) {
  if (input.points.empty()) {
    throw std::invalid_argument("discrete input: needs at least one point");
  }
  double total = 0.0;
  double prev_amplitude = -1.0;
  for (const MassPoint& point : input.points) {
    if (!(point.probability >= 0.0) || point.probability > 1.0) {
      throw std::invalid_argument(
          "discrete input: probabilities must lie in [0,1], got " +
          std::to_string(point.probability));
    }
    if (!(point.amplitude >= 0.0) || std::isinf(point.amplitude)) {
      throw std::invalid_argument(
          "discrete input: amplitudes must be finite and nonnegative, got " +
          std::to_string(point.amplitude));
    }
    if (point.amplitude <= prev_amplitude) {
      throw std::invalid_argument(
          "discrete input: amplitudes must be strictly increasing");
    }
    prev_amplitude = point.amplitude;
    total += point.probability;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "discrete input: probabilities sum to " + std::to_string(total) +
        ", not 1");
  }
}

}  // namespace

double DiscreteInput::mean_power() const {
  double power = 0.0;
  for (const MassPoint& point : points) {
    power += point.probability * point.amplitude * point.amplitude;
  }
  return power;
}

double discrete_mi(const DiscreteInput& input, double tol) {
  validate(input);
  if (!(tol >= 1e-12)) {
    throw std::invalid_argument("discrete_mi: tol must be >= 1e-12, got " +
                                std::to_string(tol));
  }

  double conditional_entropy = kNoiseOnlyEntropy;
  double largest_mean_square = 1.0;
  for (const MassPoint& point : input.points) {
    const double amp_sq = point.amplitude * point.amplitude;
    conditional_entropy += point.probability * 0.5 * std::log1p(amp_sq);
    largest_mean_square = std::max(largest_mean_square, 1.0 + amp_sq);
  }

  // Mixture density bound: p_Y(y) ≤ 2y·e^{-y²/A_max}, so the entropy
  // integrand obeys |-p log p| ≤ 2√p ≤ 3√(1+y)·e^{-y²/(2·A_max)}.
  IntegrationOptions options;
  options.tol = tol;
  options.envelope = [largest_mean_square](double y) {
    return 3.0 * std::sqrt(1.0 + y) *
           std::exp(-y * y / (2.0 * largest_mean_square));
  };
  options.envelope_scan_start = std::sqrt(2.0 * largest_mean_square) + 1.0;

  const IntegralEstimate output_entropy = adaptive_integrate(
      [&input](double y) {
        double p = 0.0;
        for (const MassPoint& point : input.points) {
          p += point.probability * conditional_pdf(y, point.amplitude);
        }
        return p > 0.0 ? -p * std::log(p) : 0.0;
      },
      0.0, INFINITY, options);

  double mi = output_entropy.value - conditional_entropy;
  if (mi < 0.0 && mi > -1e-9) {
    mi = 0.0;
  }
  return mi;
}

namespace {

DiscreteInput two_point(double x1, double p) {
  DiscreteInput input;
  input.points = {{0.0, 1.0 - p}, {x1, p}};
  return input;
}

constexpr double kInvGolden = 0.61803398874989484820;  // 1/φ

// Golden-section maximization of f on [lo, hi]; returns the best abscissa.
template <typename F>
double golden_max(F&& f, double lo, double hi, int iterations) {
  double a = lo;
  double b = hi;
  double x1 = b - kInvGolden * (b - a);
  double x2 = a + kInvGolden * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvGolden * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

}  // namespace

TwoPointResult two_point_capacity(double budget, double tol) {
  if (!(budget > 0.0) || std::isinf(budget)) {
    throw std::invalid_argument(
        "two_point_capacity: budget must be finite and > 0, got " +
        std::to_string(budget));
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("two_point_capacity: tol must be > 0");
  }

  // Objective evaluations run the integrator an order tighter than the
  // requested objective tolerance (floored well inside certifiable range).
  const double eval_tol = std::min(1e-7, std::max(tol / 10.0, 1e-11));
  auto objective = [eval_tol](double x1, double p) {
    return discrete_mi(two_point(x1, p), eval_tol);
  };
  // Probability of the nonzero point once the power constraint saturates.
  auto saturated_p = [budget](double x1) {
    return std::min(1.0, budget / (x1 * x1));
  };

  const double root_budget = std::sqrt(budget);
  constexpr int kColumns = 33;
  constexpr double kProbeFractions[] = {1.0, 0.6, 0.35, 0.2, 0.1, 0.04};

  double best_x = 0.0;
  double best_p = 0.0;
  double best_value = -1.0;
  int best_column = -1;

  auto scan_grid = [&](double lo_factor, double hi_factor) {
    for (int c = 0; c < kColumns; ++c) {
      const double x1 = root_budget * lo_factor *
                        std::pow(hi_factor / lo_factor,
                                 static_cast<double>(c) / (kColumns - 1));
      const double p_cap = saturated_p(x1);
      for (double fraction : kProbeFractions) {
        const double p = p_cap * fraction;
        const double value = objective(x1, p);
        if (value > best_value) {
          best_value = value;
          best_x = x1;
          best_p = p;
          best_column = c;
        }
      }
    }
  };

  scan_grid(1e-2, 1e2);
  if (best_column == 0 || best_column == kColumns - 1) {
    // Maximum sits on the grid edge; widen once before concluding the
    // bracket is unattainable.
    best_column = -1;
    scan_grid(1e-4, 1e4);
    if (best_column == 0 || best_column == kColumns - 1) {
      throw convergence_error(
          "two_point_capacity: could not bracket an interior maximum");
    }
  }

  // Alternating coordinate refinement.  The x1 passes walk the
  // power-saturated branch p = min(1, budget/x1²); the p passes explore
  // interior power at fixed x1.  The bracket spans the coarse grid's
  // neighboring columns (ratio 100^(2/(columns-1)) per side).
  const double column_ratio = std::pow(1e4, 1.0 / (kColumns - 1));
  for (int round = 0; round < 3; ++round) {
    const double x_lo = best_x / column_ratio;
    const double x_hi = best_x * column_ratio;
    best_x = std::exp(golden_max(
        [&](double log_x) { return objective(std::exp(log_x), saturated_p(std::exp(log_x))); },
        std::log(x_lo), std::log(x_hi), 40));
    best_p = saturated_p(best_x);

    const double p_hi = saturated_p(best_x);
    best_p = golden_max([&](double p) { return objective(best_x, p); }, 0.0,
                        p_hi, 40);
  }

  TwoPointResult result;
  result.input = two_point(best_x, best_p);
  result.capacity = discrete_mi(result.input, std::max(tol / 10.0, 1e-11));
  return result;
}

}  // namespace raycap
