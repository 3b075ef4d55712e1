#pragma once

namespace raycap {

// Shared mathematical constants, stored as literals so every module agrees
// bit-for-bit on their values.
struct MathConstants {
  // Euler–Mascheroni constant γ.
  static constexpr double euler_gamma = 0.57721566490153286061;
  // log 2 (natural log).
  static constexpr double log_two = 0.69314718055994530942;
  // log(πe) = 1 + log π.
  static constexpr double log_pi_e = 2.1447298858494001741;
  // log √π = ½ log π.
  static constexpr double log_sqrt_pi = 0.57236494292470008707;
  // √π.
  static constexpr double sqrt_pi = 1.7724538509055160273;
};

// Exponential integral Ei(x) for finite x < 0, via the alternating series
// γ + log|x| + Σ_{k≥1} x^k/(k·k!) for |x| ≤ 6 and a modified-Lentz
// continued fraction for |x| > 6.  Underflows smoothly to -0.0 once
// e^{-|x|} leaves the double range (x < -745).  Throws domain_error for
// x ≥ 0, NaN, or -inf; convergence_error if an expansion stalls.
double exp_integral_ei(double x);

// e^w · E1(w) for finite w > 0, where E1(w) = -Ei(-w).  The scaled form
// stays bounded for every w, so callers can evaluate e^{1/s}·E1(1/s)
// without overflow at small s.  Throws domain_error for w ≤ 0 or
// non-finite w.
double exp_scaled_e1(double w);

// log Γ((k+1)/2) for integer k ≥ 0, by exact log-recurrence from
// Γ(1/2) = √π and Γ(1) = 1.  Throws std::invalid_argument for k < 0.
double ln_gamma_half_integer(int k);

// Physicists' Hermite polynomial H_q(x) by the three-term recurrence
// H_{q+1} = 2x·H_q - 2q·H_{q-1}.  Guarded to q ≤ 64, where intermediate
// values stay comfortably inside double range for the node magnitudes
// used here.  Throws std::invalid_argument for q < 0 or q > 64.
double hermite_poly(int q, double x);

}  // namespace raycap
