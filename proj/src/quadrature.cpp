#include "raycap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "raycap/errors.hpp"
#include "raycap/special_functions.hpp"

namespace raycap {

namespace {

// ---------------------------------------------------------------------------
// Symmetric tridiagonal eigensolver (implicit-shift QL with a carried vector).
//
// d: diagonal (size n).  e: sub-diagonal in e[0..n-2].  z: a vector the
// accumulated rotations are applied to; seeding z = (1,0,...,0) makes z[i]
// the first component of the i-th orthonormal eigenvector, so Gaussian
// weights come out as mu_0·z[i]².  On return d is ascending and z is
// permuted consistently.
// ---------------------------------------------------------------------------
void tridiagonal_eigen(std::vector<double>& d, std::vector<double>& e,
                       std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  if (n <= 1) return;
  const double eps = std::numeric_limits<double>::epsilon();
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) {
          throw convergence_error(
              "tridiagonal_eigen: QL iteration failed to converge");
        }
        // Shift from the 2x2 block at l, chasing the bulge from m-1 down to l.
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            // Rotation annihilated early; deflate and restart this column.
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  // Ascending order, z carried along (n is small; insertion sort).
  for (int i = 1; i < n; ++i) {
    const double dv = d[i];
    const double zv = z[i];
    int j = i - 1;
    for (; j >= 0 && d[j] > dv; --j) {
      d[j + 1] = d[j];
      z[j + 1] = z[j];
    }
    d[j + 1] = dv;
    z[j + 1] = zv;
  }
}

// Rule from recurrence coefficients: diagonal alpha, off-diagonal beta,
// total mass mu0 (weights mu0·z_i²).
QuadratureRule rule_from_recurrence(std::vector<double> alpha,
                                    std::vector<double> beta, double mu0) {
  const int n = static_cast<int>(alpha.size());
  std::vector<double> e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = beta[i];
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;
  tridiagonal_eigen(alpha, e, z);
  QuadratureRule rule;
  rule.nodes = std::move(alpha);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) rule.weights[i] = mu0 * z[i] * z[i];
  return rule;
}

}  // namespace

QuadratureRule half_range_hermite_rule(int q) {
  if (q < 1 || q > 15) {
    throw std::invalid_argument(
        "half_range_hermite_rule: order must be in [1,15], got " +
        std::to_string(q));
  }

  // Moments mu_k = ½Γ((k+1)/2) by the recurrence mu_k = ((k-1)/2)·mu_{k-2}.
  constexpr long double kHalfSqrtPi =
      0.886226925452758013649083741670572591399L;  // √π/2
  const double mu0 = MathConstants::sqrt_pi / 2.0;

  if (q == 1) {
    // Single node at mu_1/mu_0 = 1/√π carrying the full mass mu_0.
    QuadratureRule rule;
    rule.nodes = {0.5 / mu0};
    rule.weights = {mu0};
    return rule;
  }

  std::vector<long double> mu(2 * q);
  mu[0] = kHalfSqrtPi;
  mu[1] = 0.5L;
  for (int k = 2; k < 2 * q; ++k) {
    mu[k] = mu[k - 2] * ((k - 1) / 2.0L);
  }

  // Partial Cholesky of the Hankel matrix M_ij = mu_{i+j}: rows 0..q-1,
  // columns 0..q, which needs exactly mu_0..mu_{2q-1}.  This stage is the
  // ill-conditioned one (≈ten digits lost at q = 15 in double), hence
  // long double throughout.
  std::vector<std::vector<long double>> r(
      q, std::vector<long double>(q + 1, 0.0L));
  for (int i = 0; i < q; ++i) {
    for (int j = i; j <= q; ++j) {
      long double sum = mu[i + j];
      for (int k = 0; k < i; ++k) sum -= r[k][i] * r[k][j];
      if (j == i) {
        if (sum <= 0.0L) {
          throw convergence_error(
              "half_range_hermite_rule: Hankel factorization lost positive "
              "definiteness at order " +
              std::to_string(q));
        }
        r[i][i] = sqrtl(sum);
      } else {
        r[i][j] = sum / r[i][i];
      }
    }
  }

  // Three-term recurrence coefficients from adjacent-column quotients:
  //   alpha_1 = r01/r00,
  //   alpha_j = r_{j-1,j}/r_{j-1,j-1} - r_{j-2,j-1}/r_{j-2,j-2}  (j = 2..q),
  //   beta_j  = r_{j,j}/r_{j-1,j-1}                              (j = 1..q-1).
  std::vector<double> alpha(q);
  std::vector<double> beta(q - 1);
  alpha[0] = static_cast<double>(r[0][1] / r[0][0]);
  for (int j = 2; j <= q; ++j) {
    alpha[j - 1] = static_cast<double>(r[j - 1][j] / r[j - 1][j - 1] -
                                       r[j - 2][j - 1] / r[j - 2][j - 2]);
  }
  for (int j = 1; j <= q - 1; ++j) {
    beta[j - 1] = static_cast<double>(r[j][j] / r[j - 1][j - 1]);
  }

  return rule_from_recurrence(std::move(alpha), std::move(beta), mu0);
}

QuadratureRule full_range_hermite_rule(int q) {
  if (q < 1 || q > 30) {
    throw std::invalid_argument(
        "full_range_hermite_rule: order must be in [1,30], got " +
        std::to_string(q));
  }
  std::vector<double> alpha(q, 0.0);
  std::vector<double> beta(q - 1 > 0 ? q - 1 : 0);
  for (int k = 1; k <= q - 1; ++k) beta[k - 1] = std::sqrt(k / 2.0);
  return rule_from_recurrence(std::move(alpha), std::move(beta),
                              MathConstants::sqrt_pi);
}

double apply_rule(const QuadratureRule& rule,
                  const std::function<double(double)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double fv = f(rule.nodes[i]);
    if (!std::isfinite(fv)) {
      throw evaluation_error("apply_rule: integrand returned " +
                             std::to_string(fv) + " at node " +
                             std::to_string(rule.nodes[i]));
    }
    acc += rule.weights[i] * fv;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Globally adaptive Gauss–Kronrod (7,15).
// ---------------------------------------------------------------------------

namespace {

// 15-point Kronrod abscissae on [-1,1] (negatives mirrored) and weights;
// wg are the embedded 7-point Gauss weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

bool worse(const Segment& lhs, const Segment& rhs) {
  return lhs.error < rhs.error;  // max-heap on error
}

// One Kronrod-15 evaluation over [a,b] with the Gauss-7 comparison error
// estimate (scaled by the integrand's deviation from its mean so that the
// estimate is meaningful for both smooth and spiky integrands).
Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  auto eval = [&f](double t) {
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw evaluation_error("adaptive_integrate: integrand returned " +
                             std::to_string(v) + " at t=" + std::to_string(t));
    }
    return v;
  };

  double fv1[7];
  double fv2[7];
  const double fc = eval(center);
  double result_gauss = kWg[3] * fc;
  double result_kronrod = kWgk[7] * fc;
  double result_abs = std::fabs(result_kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = eval(center - dx);
    fv2[j] = eval(center + dx);
    const double fsum = fv1[j] + fv2[j];
    if (j % 2 == 1) {
      result_gauss += kWg[j / 2] * fsum;
    }
    result_kronrod += kWgk[j] * fsum;
    result_abs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
  }
  const double mean = 0.5 * result_kronrod;
  double result_asc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    result_asc +=
        kWgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));
  }

  Segment seg;
  seg.a = a;
  seg.b = b;
  seg.value = result_kronrod * half;
  result_abs *= std::fabs(half);
  result_asc *= std::fabs(half);
  double err = std::fabs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc *
          std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  const double tiny = std::numeric_limits<double>::min();
  if (result_abs > tiny / (50.0 * eps)) {
    err = std::max(eps * 50.0 * result_abs, err);
  }
  seg.error = err;
  return seg;
}

// `breaks` must start at a and end at b; each consecutive pair seeds one
// initial segment.  A single pair is fine for well-scaled intervals; wide
// envelope-truncated domains pass a dyadic partition so no feature can sit
// entirely between the first rule evaluations.
IntegralEstimate integrate_finite(const std::function<double(double)>& f,
                                  const std::vector<double>& breaks,
                                  double target, std::size_t max_evals,
                                  std::size_t& evals_used) {
  std::vector<Segment> heap;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    heap.push_back(gk15(f, breaks[i], breaks[i + 1]));
    evals_used += 15;
    total_error += heap.back().error;
  }
  std::make_heap(heap.begin(), heap.end(), worse);

  const double eps = std::numeric_limits<double>::epsilon();
  while (total_error > target) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Segment seg = heap.back();
    heap.pop_back();

    const double width = seg.b - seg.a;
    const double scale = std::max({std::fabs(seg.a), std::fabs(seg.b), 1.0});
    if (width <= 100.0 * eps * scale) {
      throw convergence_error(
          "adaptive_integrate: interval refined to rounding width without "
          "reaching tolerance (requested accuracy likely beyond double "
          "precision for this integrand)");
    }
    if (evals_used + 30 > max_evals) {
      throw convergence_error(
          "adaptive_integrate: evaluation budget exhausted before reaching "
          "tolerance");
    }
    const double mid = 0.5 * (seg.a + seg.b);
    Segment left = gk15(f, seg.a, mid);
    Segment right = gk15(f, mid, seg.b);
    evals_used += 30;
    total_error += left.error + right.error - seg.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
  }

  // Re-sum from the final partition for an accumulation-error-free total.
  IntegralEstimate est;
  double value = 0.0;
  double error = 0.0;
  for (const Segment& seg : heap) {
    value += seg.value;
    error += seg.error;
  }
  est.value = value;
  est.error_bound = error;
  return est;
}

}  // namespace

IntegralEstimate adaptive_integrate(const std::function<double(double)>& f,
                                    double a, double b,
                                    const IntegrationOptions& options) {
  if (!std::isfinite(a) || std::isnan(b) || b < a) {
    throw std::invalid_argument(
        "adaptive_integrate: interval must satisfy finite a <= b");
  }
  if (options.tol < 1e-14) {
    char message[128];
    std::snprintf(message, sizeof(message),
                  "adaptive_integrate: tolerance %g is below what double "
                  "precision can certify (minimum 1e-14)",
                  options.tol);
    throw convergence_error(message);
  }
  if (a == b) return {0.0, 0.0};

  std::size_t evals = 0;

  if (std::isinf(b)) {
    if (options.envelope) {
      // Truncate where the envelope certifies the discarded tail mass —
      // bounded by envelope(T)·max(1,T) for the decay profiles used here —
      // is negligible against tol.
      const double threshold = options.tol * options.envelope_threshold_factor;
      double trunc = std::max({a + 1.0, 1.0, options.envelope_scan_start});
      double tail = options.envelope(trunc) * std::max(1.0, trunc);
      while (tail >= threshold) {
        trunc *= 1.5;
        if (trunc > 1e12) {
          throw convergence_error(
              "adaptive_integrate: envelope never certifies a negligible "
              "tail (no truncation point below 1e12)");
        }
        tail = options.envelope(trunc) * std::max(1.0, trunc);
      }
      std::vector<double> breaks{a};
      for (double step = 1.0; a + step < trunc; step *= 2.0) {
        breaks.push_back(a + step);
      }
      breaks.push_back(trunc);
      IntegralEstimate est =
          integrate_finite(f, breaks, options.tol - tail,
                           options.max_evaluations, evals);
      est.error_bound += tail;
      return est;
    }
    // Substitution s = 1/(1+t-a) maps [a,∞) onto (0,1]; the transformed
    // integrand is evaluated only at interior Kronrod abscissae.
    auto g = [&f, a](double s) {
      const double t = a + (1.0 - s) / s;
      return f(t) / (s * s);
    };
    return integrate_finite(g, {0.0, 1.0}, options.tol,
                            options.max_evaluations, evals);
  }

  return integrate_finite(f, {a, b}, options.tol, options.max_evaluations,
                          evals);
}

IntegralEstimate adaptive_integrate(const std::function<double(double)>& f,
                                    double a, double b, double tol) {
  IntegrationOptions options;
  options.tol = tol;
  return adaptive_integrate(f, a, b, options);
}

}  // namespace raycap
