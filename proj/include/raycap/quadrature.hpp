#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace raycap {

// Nodes and weights of a Gaussian quadrature rule; nodes[i] pairs with
// weights[i], nodes strictly increasing.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// q-point Gaussian rule for the weight e^{-t²} on [0, ∞).
//
// Construction: power moments mu_k = ½Γ((k+1)/2) for k = 0..2q-1 by exact
// recurrence; partial Cholesky factorization (rows 0..q-1, columns 0..q) of
// the (q+1)×(q+1) Hankel matrix M_ij = mu_{i+j}; three-term recurrence
// coefficients from quotients of adjacent Cholesky entries; nodes and
// weights from the symmetric tridiagonal eigenproblem (implicit-shift QL
// with the first eigenvector row carried along), weights = mu_0·z_i².
//
// The Hankel stage loses roughly ten digits at q = 15 in plain double, so
// moments, Cholesky, and coefficient quotients run in long double; the
// eigensolve and the returned rule are double.  q = 1 is direct:
// node mu_1/mu_0 = 1/√π, weight mu_0 = √π/2.
//
// Throws std::invalid_argument unless 1 ≤ q ≤ 15 (the factorization is not
// certifiably accurate beyond that in this precision).
QuadratureRule half_range_hermite_rule(int q);

// q-point Gauss–Hermite rule for e^{-t²} on (-∞, ∞), from the known
// recurrence (diagonal 0, off-diagonal √(k/2), total mass √π).
// Throws std::invalid_argument unless 1 ≤ q ≤ 30.
QuadratureRule full_range_hermite_rule(int q);

// Σ_i weights[i]·f(nodes[i]).  Throws evaluation_error if f returns a
// non-finite value at any node.
double apply_rule(const QuadratureRule& rule,
                  const std::function<double(double)>& f);

// Estimate of a definite integral together with a bound on its error.
struct IntegralEstimate {
  double value = 0.0;
  double error_bound = 0.0;
};

struct IntegrationOptions {
  // Requested absolute accuracy.  Values below 1e-14 are refused with
  // convergence_error: double precision cannot certify them.
  double tol = 1e-10;
  // Optional decreasing upper bound on |f| valid for large t.  When the
  // upper limit is infinite and an envelope is supplied, integration is
  // truncated at the first T where envelope(T)·max(1,T) — a bound on the
  // discarded tail mass — falls below tol·envelope_threshold_factor; that
  // bound is added to error_bound.  Without an envelope an infinite upper
  // limit is handled by the substitution s = 1/(1+t-a), whose image never
  // touches the endpoints.
  std::function<double(double)> envelope;
  double envelope_threshold_factor = 1e-2;
  // The truncation scan walks outward from max(a+1, envelope_scan_start);
  // set this past the envelope's peak when it is not monotone from the
  // start (e.g. bump-shaped densities).
  double envelope_scan_start = 1.0;
  // Integrand-evaluation budget; exceeding it raises convergence_error.
  std::size_t max_evaluations = 1000000;
};

// Globally adaptive Gauss–Kronrod (7,15) integration of f over [a, b],
// b finite or +inf.  Segments are bisected worst-error-first until the
// summed error bound meets tol.  Throws convergence_error when the budget
// or precision limit is hit, evaluation_error if f returns non-finite,
// std::invalid_argument for a malformed interval.
IntegralEstimate adaptive_integrate(const std::function<double(double)>& f,
                                    double a, double b,
                                    const IntegrationOptions& options);
IntegralEstimate adaptive_integrate(const std::function<double(double)>& f,
                                    double a, double b, double tol);

}  // namespace raycap
