#pragma once

#include <optional>

#include "levyfht/subordinators.hpp"
#include "levyfht/targets.hpp"

namespace levyfht {

enum class RateMethod { kClosedForm, kQuadrature, kApproximation };

// The short-time hitting rate rho: P(tau <= t) ~ rho * t as t -> 0+.
struct RateResult {
  double rho = 0.0;
  RateMethod method = RateMethod::kQuadrature;
  double abs_error_estimate = 0.0;  // quadrature only
};

// Raised when the adaptive quadrature cannot reach its target accuracy;
// carries the partial sums in the message.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// rho = int_0^inf F(s) nu(ds) by singular-aware quadrature (log substitution,
// split at s = 1, truncation controlled by the Levy tail mass). The drift
// term b F'(0) vanishes for every supported target because x0 is separated
// from U. Guarantees abs_error_estimate <= 1e-8 * rho.
// PoissonBalls targets are rejected (their mass is Monte Carlo; use
// rate_poisson_approx instead).
RateResult rate_quadrature(const SubordinatorSpec& spec, const TargetSpec& target);

// Exact formula when the (family, geometry) pair has one:
//   Stable x HalfLine, Stable x SphereExterior, Stable x Annulus,
//   Gamma x SphereExterior(d=3).
// Returns nullopt otherwise.
std::optional<RateResult> rate_closed_form(const SubordinatorSpec& spec,
                                           const TargetSpec& target);

// Step-function approximation of rho for sparse Poisson-distributed ball
// targets (stable and tempered stable families only).
double rate_poisson_approx(const SubordinatorSpec& spec, double lambda,
                           double l, int d);

// rho_tilde for the subordinate-stopped process on the half-line target,
// using F_tilde(s) = P(sigma <= s) = erfc(L / (2 sqrt(s))). Satisfies
// rho_tilde = 2 rho by the reflection principle.
RateResult rate_upper_bound_halfline(const SubordinatorSpec& spec, double L);

// Mean escape time of a Levy flight from the d-sphere of radius L:
// E[tau] = [rho Gamma(1 - alpha/2) Gamma(1 + alpha/2)]^{-1}.
double getoor_mean_fht(double alpha, double K, double L, int d);

}  // namespace levyfht
