#pragma once

#include <cstddef>
#include <cstdint>

#include "raycap/quadrature.hpp"

namespace raycap {

// Reference computations that deliberately share no discretization with the
// Hermite-rule implementations they validate: everything here goes through
// the adaptive integrator or plain Monte Carlo.

// h(Y) by nested adaptive integration of -p_Y·log p_Y, with p_Y itself
// integrated adaptively at every outer point (tolerance tol/10).  The
// reported error_bound combines the outer integrator's bound, the certified
// truncation tails, and a term covering the inner stage's tolerance across
// the region where p_Y is above it.  Ω² = 0 skips the inner stage (the
// output density is the noise density itself).
IntegralEstimate numeric_h_y(double omega_sq, double tol);

// Same, with the envelope-truncation threshold factor exposed so tests can
// verify the result is insensitive to it.
IntegralEstimate numeric_h_y(double omega_sq, double tol,
                             double envelope_threshold_factor);

// h(Y|X) by adaptive integration of p_X(x)·½log(1+x²) plus the exact
// per-letter entropy offset 1 + γ/2 - log 2; validates the closed form.
IntegralEstimate numeric_h_y_given_x(double omega_sq, double tol);

// Total mass of the rule-based output density: adaptive integral of
// output_pdf over [0, ∞).  Equals 1 up to the rule's own discretization
// error; used as a cross-check of rule and density together.
IntegralEstimate output_density_mass(double omega_sq,
                                     const QuadratureRule& rule, double tol);

// xoshiro256++: 256-bit-state xorshift-rotate generator (output
// rotl(s0+s3, 23) + s0; state update via s2 ^= s0, s3 ^= s1, s1 ^= s2,
// s0 ^= s3, s2 ^= s1 << 17, s3 = rotl(s3, 45)), seeded by four successive
// splitmix64 outputs so any 64-bit seed gives a well-mixed state.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);
  std::uint64_t next();
  // Uniform on (0, 1]: ((next() >> 11) + 1)·2^-53.  Never returns 0, so
  // -log of it is always finite.
  double next_unit();

 private:
  std::uint64_t state_[4];
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte Carlo mutual information: n i.i.d. channel uses with
// x = Ω√(-log u₁), y = √((1+x²)·(-log u₂)) (inverse-CDF sampling, u₁ then
// u₂ per sample), averaging log p(y|x) - log p_Y(y) with p_Y from the
// 15-point half-range rule.  Single-threaded and bit-reproducible for a
// fixed seed.  Throws domain_error at Ω² = 0 and std::invalid_argument for
// n < 1000.
McEstimate mc_mutual_info(double omega_sq, std::size_t n, std::uint64_t seed);

}  // namespace raycap
