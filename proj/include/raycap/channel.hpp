#pragma once

#include "raycap/quadrature.hpp"

namespace raycap {

// Memoryless flat-fading channel on envelopes: the receiver sees the
// magnitude y of a·x + n, where the fading amplitude a is Rayleigh with
// E[a²] = 1, the complex noise n has unit variance, and neither endpoint
// knows the realization of a.  The input envelope x is Rayleigh with mean
// power Ω² (a circular Gaussian signal), so Ω² is also the SNR.  All
// entropies and rates are in nats unless a function says otherwise.

// p(y|x) = (2y/(1+x²))·e^{-y²/(1+x²)} for y ≥ 0: conditioned on the input
// envelope, the output envelope is Rayleigh with mean square 1 + x².
// Throws domain_error for negative or non-finite arguments.
double conditional_pdf(double y, double x);

// Input envelope density p(x) = (2x/Ω²)·e^{-x²/Ω²}.  Throws domain_error
// for Ω² ≤ 0 (at zero power the input is a point mass, not a density) and
// for negative or non-finite x.
double input_pdf(double x, double omega_sq);

// Output envelope density under the Rayleigh input.  The input average is
// reduced by the substitution x = Ω·t to the half-range Hermite form
//   p_Y(y) = Σ_j w_j·2t_j·(2y/A_j)·e^{-y²/A_j},  A_j = 1 + Ω²·t_j²,
// evaluated with the supplied rule.  At Ω² = 0 it degenerates to the
// noise-only density 2y·e^{-y²}.
double output_pdf(double y, double omega_sq, const QuadratureRule& rule);

// Differential entropy h(Y) of the output envelope.
//
// Writing p_Y as the outer_rule mixture above and pairing each mixture
// component with the substitution y = u·√A_l turns h(Y) into
//   Σ_l 2w_l·t_l · [ -∫ 2u·e^{-u²}·log p_Y(u√A_l) du ].
// Since p_Y(u√A_l) = u·z_l(u²) with z_l smooth and positive, the log u
// part integrates exactly (∫ 2u e^{-u²} log u du = -γ/2) and only
//   z_l(u) = Σ_j 4w_j·t_j·(√A_l/A_j)·e^{-u²·A_l/A_j}
// is left to the inner_rule.  Splitting the logarithm this way removes the
// integrable log-singularity that otherwise stalls the inner rule's
// convergence at a fixed offset, and is what lets the rule agree with the
// adaptive reference integrator to discretization accuracy.
// Ω² = 0 returns the noise-only entropy 1 + γ/2 - log 2 exactly.
double h_y(double omega_sq, const QuadratureRule& outer_rule,
           const QuadratureRule& inner_rule);

// Conditional entropy h(Y|X) in closed form:
//   ½·e^{1/Ω²}E1(1/Ω²) - log 2 + 1 + γ/2,
// continuous at Ω² = 0 where it equals 1 + γ/2 - log 2.  The scaled-E1
// form keeps it finite for every Ω² ≥ 0.
double h_y_given_x(double omega_sq);

// Capacity (nats) of the same fading channel when the receiver tracks the
// fading coefficient perfectly: E[log(1 + Ω²·a²)] = e^{1/Ω²}E1(1/Ω²).
// Zero at Ω² = 0.
double c_rcsi(double omega_sq);

// Capacity (nats) of the non-fading AWGN counterpart: log(1 + Ω²).
double c_cnf(double omega_sq);

// Analytical lower bound ½·(c_cnf - c_rcsi) on the mutual information of
// the non-coherent channel with the Gaussian input.  Nonnegative for all
// Ω² ≥ 0; tends to γ/2 as Ω² → ∞.
double lower_bound(double omega_sq);

// I(X;Y) = h(Y) - h(Y|X) with the supplied rules.  A tiny negative
// difference (within 1e-9 of zero, pure cancellation noise at small Ω²)
// is clamped to exactly 0; *clamped reports whether that happened.
double mutual_information(double omega_sq, const QuadratureRule& outer_rule,
                          const QuadratureRule& inner_rule,
                          bool* clamped = nullptr);

// Entropy gap G(Ω²) = ½log(πe(1+Ω²)) - h(Y): the distance of the output
// envelope's entropy from the maximum-entropy benchmark of the same second
// moment.  G(0) = ½log(πe) + log 2 - (1 + γ/2) ≈ 0.476904, its maximum.
double entropy_gap(double omega_sq, const QuadratureRule& outer_rule,
                   const QuadratureRule& inner_rule);

// Benchmarks with the fading frozen at its root-mean-square value (a ≡ 1):
// output entropy ½log(πe(1+Ω²)) and conditional entropy ½log(πe) of the
// AWGN counterpart with a complex Gaussian input.
double h_y_nonfading(double omega_sq);
double h_y_given_x_nonfading();

// High-SNR limit of ½[log(πe(1+Ω²)) - c_rcsi(Ω²)]: equals ½(γ + log πe).
double asymptotic_L();

// One fully evaluated operating point.
struct InfoPoint {
  double omega_sq = 0.0;
  double snr_db = 0.0;  // 10·log10(Ω²); -inf at zero power
  double h_y = 0.0;
  double h_y_given_x = 0.0;
  double mi_nats = 0.0;
  double mi_bits = 0.0;
  double lower_bound = 0.0;
  double c_rcsi = 0.0;
  double c_cnf = 0.0;
  double entropy_gap = 0.0;
  double h_y_nonfading = 0.0;
  double h_y_given_x_nonfading = 0.0;
  bool mi_clamped = false;
};

InfoPoint compute_info_point(double omega_sq, const QuadratureRule& outer_rule,
                             const QuadratureRule& inner_rule);

}  // namespace raycap
