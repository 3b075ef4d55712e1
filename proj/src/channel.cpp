#include "raycap/channel.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "raycap/errors.hpp"
#include "raycap/special_functions.hpp"

namespace raycap {

namespace {

// Noise-only output entropy: h of 2y·e^{-y²}, = 1 + γ/2 - log 2.
const double kNoiseOnlyEntropy =
    1.0 + 0.5 * MathConstants::euler_gamma - MathConstants::log_two;

void require_nonnegative_finite(double v, const char* what) {
  if (!(v >= 0.0) || std::isinf(v)) {
    throw domain_error(std::string(what) + ": requires a finite value >= 0, got " +
                       std::to_string(v));
  }
}

}  // namespace

double conditional_pdf(double y, double x) {
  require_nonnegative_finite(y, "conditional_pdf: y");
  require_nonnegative_finite(x, "conditional_pdf: x");
  const double mean_square = 1.0 + x * x;
  return (2.0 * y / mean_square) * std::exp(-y * y / mean_square);
}

double input_pdf(double x, double omega_sq) {
  if (!(omega_sq > 0.0) || std::isinf(omega_sq)) {
    throw domain_error(
        "input_pdf: requires finite mean power > 0 (zero power is a point "
        "mass), got " +
        std::to_string(omega_sq));
  }
  require_nonnegative_finite(x, "input_pdf: x");
  return (2.0 * x / omega_sq) * std::exp(-x * x / omega_sq);
}

double output_pdf(double y, double omega_sq, const QuadratureRule& rule) {
  require_nonnegative_finite(y, "output_pdf: y");
  require_nonnegative_finite(omega_sq, "output_pdf: omega_sq");
  if (omega_sq == 0.0) {
    return 2.0 * y * std::exp(-y * y);
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double t = rule.nodes[j];
    const double a = 1.0 + omega_sq * t * t;
    acc += rule.weights[j] * 2.0 * t * (2.0 * y / a) * std::exp(-y * y / a);
  }
  return acc;
}

double h_y(double omega_sq, const QuadratureRule& outer_rule,
           const QuadratureRule& inner_rule) {
  require_nonnegative_finite(omega_sq, "h_y: omega_sq");
  if (omega_sq == 0.0) {
    return kNoiseOnlyEntropy;
  }

  const std::size_t q = outer_rule.nodes.size();
  const std::size_t r = inner_rule.nodes.size();

  // Mixture data: A_l = 1 + Ω²t_l², coefficient 4·w_l·t_l.
  std::vector<double> mean_square(q);
  std::vector<double> coeff(q);
  for (std::size_t l = 0; l < q; ++l) {
    const double t = outer_rule.nodes[l];
    mean_square[l] = 1.0 + omega_sq * t * t;
    coeff[l] = 4.0 * outer_rule.weights[l] * t;
  }

  double entropy = 0.0;
  for (std::size_t l = 0; l < q; ++l) {
    const double sqrt_a = std::sqrt(mean_square[l]);
    // Inner integral of 2u·e^{-u²}·log z_l(u) by the inner rule; the log u
    // part of log p_Y(u√A_l) is already integrated exactly into the γ/2
    // term below.
    double inner = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      const double u = inner_rule.nodes[i];
      const double u_sq = u * u;
      double z = 0.0;
      for (std::size_t j = 0; j < q; ++j) {
        const double ratio = mean_square[l] / mean_square[j];
        z += coeff[j] * (sqrt_a / mean_square[j]) * std::exp(-u_sq * ratio);
      }
      inner += inner_rule.weights[i] * 2.0 * u * std::log(z);
    }
    entropy += 0.5 * coeff[l] *
               (0.5 * MathConstants::euler_gamma - inner);
  }
  return entropy;
}

double h_y_given_x(double omega_sq) {
  require_nonnegative_finite(omega_sq, "h_y_given_x: omega_sq");
  if (omega_sq == 0.0) {
    return kNoiseOnlyEntropy;
  }
  return 0.5 * c_rcsi(omega_sq) + kNoiseOnlyEntropy;
}

double c_rcsi(double omega_sq) {
  require_nonnegative_finite(omega_sq, "c_rcsi: omega_sq");
  if (omega_sq == 0.0) {
    return 0.0;
  }
  return exp_scaled_e1(1.0 / omega_sq);
}

double c_cnf(double omega_sq) {
  require_nonnegative_finite(omega_sq, "c_cnf: omega_sq");
  return std::log1p(omega_sq);
}

double lower_bound(double omega_sq) {
  return 0.5 * (c_cnf(omega_sq) - c_rcsi(omega_sq));
}

double mutual_information(double omega_sq, const QuadratureRule& outer_rule,
                          const QuadratureRule& inner_rule, bool* clamped) {
  double mi = h_y(omega_sq, outer_rule, inner_rule) - h_y_given_x(omega_sq);
  bool did_clamp = false;
  if (mi < 0.0 && mi > -1e-9) {
    mi = 0.0;
    did_clamp = true;
  }
  if (clamped != nullptr) {
    *clamped = did_clamp;
  }
  return mi;
}

double entropy_gap(double omega_sq, const QuadratureRule& outer_rule,
                   const QuadratureRule& inner_rule) {
  return h_y_nonfading(omega_sq) - h_y(omega_sq, outer_rule, inner_rule);
}

double h_y_nonfading(double omega_sq) {
  require_nonnegative_finite(omega_sq, "h_y_nonfading: omega_sq");
  return 0.5 * (MathConstants::log_pi_e + std::log1p(omega_sq));
}

double h_y_given_x_nonfading() { return 0.5 * MathConstants::log_pi_e; }

double asymptotic_L() {
  return 0.5 * (MathConstants::euler_gamma + MathConstants::log_pi_e);
}

InfoPoint compute_info_point(double omega_sq,
                             const QuadratureRule& outer_rule,
                             const QuadratureRule& inner_rule) {
  InfoPoint point;
  point.omega_sq = omega_sq;
  point.snr_db =
      omega_sq > 0.0 ? 10.0 * std::log10(omega_sq) : -INFINITY;
  point.h_y = h_y(omega_sq, outer_rule, inner_rule);
  point.h_y_given_x = h_y_given_x(omega_sq);
  point.mi_nats = mutual_information(omega_sq, outer_rule, inner_rule,
                                     &point.mi_clamped);
  point.mi_bits = point.mi_nats / MathConstants::log_two;
  point.lower_bound = raycap::lower_bound(omega_sq);
  point.c_rcsi = raycap::c_rcsi(omega_sq);
  point.c_cnf = raycap::c_cnf(omega_sq);
  point.entropy_gap = h_y_nonfading(omega_sq) - point.h_y;
  point.h_y_nonfading = raycap::h_y_nonfading(omega_sq);
  point.h_y_given_x_nonfading = raycap::h_y_given_x_nonfading();
  return point;
}

}  // namespace raycap
