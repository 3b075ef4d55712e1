#pragma once

#include <vector>

namespace raycap {

// Finite constellation on the nonnegative envelope axis.
struct MassPoint {
  double amplitude = 0.0;
  double probability = 0.0;
};

struct DiscreteInput {
  std::vector<MassPoint> points;
  // Σ p_k · x_k².
  double mean_power() const;
};

// I(X;Y) in nats for a discrete input:
//   h(Y|X) = ½·Σ p_k·log(1+x_k²) + 1 + γ/2 - log 2   (exact), and
//   h(Y) by adaptive integration of -p_Y·log p_Y with the finite mixture
//   p_Y(y) = Σ p_k·conditional_pdf(y, x_k) over [0, ∞).
// Cancellation noise within 1e-9 of zero is clamped to exactly 0.
// Validation: probabilities ≥ 0 summing to 1 within 1e-12; amplitudes
// nonnegative, finite, strictly increasing; tol ≥ 1e-12.  Violations throw
// std::invalid_argument; integrator failures propagate as
// convergence_error.
double discrete_mi(const DiscreteInput& input, double tol);

struct TwoPointResult {
  DiscreteInput input;     // {(0, 1-p), (x1, p)}
  double capacity = 0.0;   // nats
};

// Best two-point constellation with one mass at the origin under the mean
// power budget: maximizes discrete_mi over {(0, 1-p), (x1, p)} subject to
// p·x1² ≤ budget.  Search: coarse logarithmic grid over
// x1 ∈ [10⁻²√budget, 10²√budget], each column probing both the
// power-saturating probability min(1, budget/x1²) and interior values,
// then alternating golden-section refinement in x1 (along the saturated
// branch) and in p, to tolerance tol in the objective.  Whether the power
// constraint binds at the optimum is decided by the search, not assumed.
// Throws std::invalid_argument for budget ≤ 0; convergence_error if no
// interior maximum can be bracketed.
TwoPointResult two_point_capacity(double budget, double tol);

}  // namespace raycap
