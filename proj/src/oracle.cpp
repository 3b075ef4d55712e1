#include "raycap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "raycap/channel.hpp"
#include "raycap/errors.hpp"
#include "raycap/special_functions.hpp"

namespace raycap {

namespace {

void require_power(double omega_sq, const char* who) {
  if (!(omega_sq >= 0.0) || std::isinf(omega_sq)) {
    throw domain_error(std::string(who) +
                       ": requires finite mean power >= 0, got " +
                       std::to_string(omega_sq));
  }
}

// Output density at one point by adaptive integration over the input.
// The integrand p_X(x)·p(y|x) is bounded by p_X(x)·sup_x p(y|x), and the
// sup over mean-squares A ≥ 1 of (2y/A)e^{-y²/A} is 2/(e·y) for y ≥ 1 and
// at most 2y below; that gives a certified input-side truncation.
IntegralEstimate density_at(double y, double omega_sq, double tol,
                            double threshold_factor) {
  const double peak_cond =
      y >= 1.0 ? 2.0 / (std::exp(1.0) * y) : 2.0 * y;
  IntegrationOptions options;
  options.tol = tol;
  options.envelope_threshold_factor = threshold_factor;
  options.envelope = [peak_cond, omega_sq](double x) {
    return peak_cond * input_pdf(x, omega_sq);
  };
  // The input density peaks at Ω/√2; start the scan safely past it.
  options.envelope_scan_start = 2.0 * std::sqrt(omega_sq) + 1.0;
  return adaptive_integrate(
      [y, omega_sq](double x) {
        return input_pdf(x, omega_sq) * conditional_pdf(y, x);
      },
      0.0, INFINITY, options);
}

}  // namespace

IntegralEstimate numeric_h_y(double omega_sq, double tol) {
  return numeric_h_y(omega_sq, tol, 1e-2);
}

IntegralEstimate numeric_h_y(double omega_sq, double tol,
                             double envelope_threshold_factor) {
  require_power(omega_sq, "numeric_h_y");

  const double inner_tol = tol / 10.0;
  double widest_meaningful_y = 0.0;  // largest y with p_Y(y) above inner_tol

  auto integrand = [&](double y) {
    double p;
    if (omega_sq == 0.0) {
      p = 2.0 * y * std::exp(-y * y);
    } else {
      p = density_at(y, omega_sq, inner_tol, envelope_threshold_factor).value;
    }
    if (p <= 0.0) {
      return 0.0;  // -p·log p extends continuously by 0 at p = 0
    }
    if (p >= inner_tol) {
      widest_meaningful_y = std::max(widest_meaningful_y, y);
    }
    return -p * std::log(p);
  };

  // Envelope: p_Y(y) ≤ 3y·e^{-y/(1+Ω²)} for y ≥ 1 (split the input tail at
  // x₀ = Ω√y: the near part has mean-square ≤ 1+Ω²y, the far part has
  // probability e^{-y} and conditional density at most 2/(ey)), and
  // -p·log p ≤ 2√p for p < 1.  Hence, for y ≥ 1:
  //   |(-p_Y log p_Y)(y)| ≤ 4·√(1+y)·e^{-y/(2(1+Ω²))}.
  const double decay = 2.0 * (1.0 + omega_sq);
  IntegrationOptions outer;
  outer.tol = tol;
  outer.envelope_threshold_factor = envelope_threshold_factor;
  outer.envelope = [decay](double y) {
    return 4.0 * std::sqrt(1.0 + y) * std::exp(-y / decay);
  };
  outer.envelope_scan_start = decay + 1.0;

  IntegralEstimate estimate =
      adaptive_integrate(integrand, 0.0, INFINITY, outer);

  if (omega_sq > 0.0) {
    // Inner-stage tolerance propagated through p ↦ -p·log p over the
    // region where the density is above that tolerance; below it the
    // inner integrator's own bound is already far tighter than inner_tol.
    estimate.error_bound += inner_tol * (1.0 + std::fabs(std::log(inner_tol))) *
                            std::max(1.0, widest_meaningful_y);
  }
  return estimate;
}

IntegralEstimate numeric_h_y_given_x(double omega_sq, double tol) {
  require_power(omega_sq, "numeric_h_y_given_x");
  const double offset = 1.0 + 0.5 * MathConstants::euler_gamma -
                        MathConstants::log_two;
  if (omega_sq == 0.0) {
    return {offset, 0.0};
  }
  // h(Y|X) = offset + ∫ p_X(x)·½log(1+x²) dx; smooth integrand, handled by
  // the substitution route.
  IntegralEstimate estimate = adaptive_integrate(
      [omega_sq](double x) {
        return input_pdf(x, omega_sq) * 0.5 * std::log1p(x * x);
      },
      0.0, INFINITY, tol);
  estimate.value += offset;
  return estimate;
}

IntegralEstimate output_density_mass(double omega_sq,
                                     const QuadratureRule& rule, double tol) {
  require_power(omega_sq, "output_density_mass");
  double largest_mean_square = 1.0;
  for (double t : rule.nodes) {
    largest_mean_square =
        std::max(largest_mean_square, 1.0 + omega_sq * t * t);
  }
  // Every mixture component is bounded by 2y·e^{-y²/A_max}.
  IntegrationOptions options;
  options.tol = tol;
  options.envelope = [largest_mean_square](double y) {
    return 2.0 * y * std::exp(-y * y / largest_mean_square);
  };
  options.envelope_scan_start = std::sqrt(largest_mean_square) + 1.0;
  return adaptive_integrate(
      [omega_sq, &rule](double y) { return output_pdf(y, omega_sq, rule); },
      0.0, INFINITY, options);
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) {
  return (v << k) | (v >> (64 - k));
}

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : state_) {
    word = splitmix64(sm);
  }
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Xoshiro256pp::next_unit() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

McEstimate mc_mutual_info(double omega_sq, std::size_t n,
                          std::uint64_t seed) {
  if (!(omega_sq > 0.0) || std::isinf(omega_sq)) {
    throw domain_error(
        "mc_mutual_info: requires finite mean power > 0, got " +
        std::to_string(omega_sq));
  }
  if (n < 1000) {
    throw std::invalid_argument(
        "mc_mutual_info: needs at least 1000 samples, got " +
        std::to_string(n));
  }

  const QuadratureRule rule = half_range_hermite_rule(15);
  Xoshiro256pp rng(seed);
  const double omega = std::sqrt(omega_sq);

  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = omega * std::sqrt(-std::log(rng.next_unit()));
    const double y =
        std::sqrt((1.0 + x * x) * -std::log(rng.next_unit()));
    const double num = conditional_pdf(y, x);
    const double den = output_pdf(y, omega_sq, rule);
    double sample;
    if (num > 0.0 && den > 0.0) {
      sample = std::log(num) - std::log(den);
    } else {
      // y = 0 (probability 2^-53 per draw): the common 2y factor of both
      // densities cancels analytically; use the cancelled ratio.
      double mixture = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = rule.nodes[j];
        const double a = 1.0 + omega_sq * t * t;
        mixture += rule.weights[j] * 2.0 * t / a;
      }
      sample = -std::log1p(x * x) - std::log(mixture);
    }
    const double delta = sample - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (sample - mean);
  }

  McEstimate estimate;
  estimate.mean = mean;
  estimate.std_error = std::sqrt(
      m2 / (static_cast<double>(n - 1) * static_cast<double>(n)));
  return estimate;
}

}  // namespace raycap
