#include "levyfht/rates.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <variant>

#include "levyfht/quadrature.hpp"
#include "levyfht/special.hpp"

namespace levyfht {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRelTol = 1e-12;       // per-block quadrature tolerance
constexpr double kBlockWidth = 4.0;     // width in log(s)
constexpr double kTargetRel = 1e-8;     // contract on abs_error_estimate

// Integrates int_0^inf F(s) nu'(s) ds with the substitution s = e^u.
//
// Lower piece (s <= 1): F vanishes faster than any power of s, which kills
// the nu singularity; blocks of width kBlockWidth are added going down until
// a geometric bound on the remainder is negligible.
// Upper piece (s >= 1): truncated once sup(F) * nu((T,inf)) is negligible.
//
// Only relative tolerances are used, so the refinement pattern (and hence
// the result, bit for bit) is invariant under scaling the integrand.
RateResult integrate_rate(const std::function<double(double)>& mass,
                          const SubordinatorSpec& spec) {
  const auto integrand = [&](double u) {
    const double s = std::exp(u);
    return mass(s) * levy_density(spec, s) * s;
  };

  double value = 0.0;
  double error = 0.0;

  // s in (0, 1]
  double prev_block = -1.0;
  double hi = 0.0;
  double lower_tail = 0.0;
  for (int i = 0;; ++i) {
    if (i >= 100) {
      throw QuadratureError("rate quadrature: lower piece did not terminate");
    }
    // anchoring the block tolerance to the running total keeps far-tail
    // blocks convergent even where cancellation in F leaves 1e-16 noise
    const QuadResult r = integrate_gk(integrand, hi - kBlockWidth, hi,
                                      1e-13 * std::abs(value), kRelTol, 400);
    if (!r.converged) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "rate quadrature: block [%g,%g] failed, partial sum %.17g",
                    hi - kBlockWidth, hi, value + r.value);
      throw QuadratureError(msg);
    }
    value += r.value;
    error += r.error;
    if (prev_block >= 0.0 && r.value < prev_block) {
      // geometric remainder bound from the measured decay ratio
      const double ratio = prev_block > 0.0 ? r.value / prev_block : 0.0;
      lower_tail = ratio < 1.0 ? r.value * ratio / (1.0 - ratio) : r.value;
      if (lower_tail <= 1e-12 * std::abs(value) || r.value == 0.0) break;
    } else if (r.value == 0.0 && prev_block == 0.0) {
      lower_tail = 0.0;
      break;
    }
    prev_block = r.value;
    hi -= kBlockWidth;
  }
  error += lower_tail;

  // s in [1, inf)
  double lo = 0.0;
  for (int i = 0;; ++i) {
    if (i >= 10000) {
      throw QuadratureError("rate quadrature: upper piece did not terminate");
    }
    const double tail = levy_tail_mass_bound(spec, std::exp(lo + kBlockWidth));
    const QuadResult r = integrate_gk(integrand, lo, lo + kBlockWidth,
                                      1e-13 * std::abs(value), kRelTol, 400);
    if (!r.converged) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "rate quadrature: block [%g,%g] failed, partial sum %.17g",
                    lo, lo + kBlockWidth, value + r.value);
      throw QuadratureError(msg);
    }
    value += r.value;
    error += r.error;
    lo += kBlockWidth;
    if (tail <= 1e-11 * std::abs(value)) {
      error += tail;  // sup F <= 1
      break;
    }
  }

  if (!(value > 0.0) || !std::isfinite(value)) {
    char msg[120];
    std::snprintf(msg, sizeof msg,
                  "rate quadrature: nonpositive or nonfinite result %.17g", value);
    throw QuadratureError(msg);
  }
  if (error > kTargetRel * value) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "rate quadrature: error estimate %.3g exceeds %.3g (rho approx %.17g)",
                  error, kTargetRel * value, value);
    throw QuadratureError(msg);
  }
  return {value, RateMethod::kQuadrature, error};
}

double stable_sphere_rate(double alpha, double K, double L, int d) {
  const double g = 0.5 * alpha;
  return std::pow(2.0, alpha) * sf::tgamma(0.5 * (d + alpha)) /
         (sf::tgamma(0.5 * d) * sf::tgamma(1.0 - g)) * K / std::pow(L, alpha);
}

}  // namespace

RateResult rate_quadrature(const SubordinatorSpec& spec, const TargetSpec& target) {
  if (std::holds_alternative<PoissonBalls>(target.geometry())) {
    throw std::invalid_argument(
        "rate_quadrature: Monte Carlo masses are too noisy to integrate; "
        "use rate_poisson_approx for PoissonBalls targets");
  }
  return integrate_rate([&](double s) { return gaussian_mass(target, s); }, spec);
}

std::optional<RateResult> rate_closed_form(const SubordinatorSpec& spec,
                                           const TargetSpec& target) {
  if (spec.family == SubordinatorFamily::kStable) {
    if (const auto* h = std::get_if<HalfLine>(&target.geometry())) {
      const double L_eff = h->L + target.start()[0];
      const double rho = sf::tgamma(spec.alpha) * std::sin(spec.alpha * kPi / 2.0) /
                         kPi * spec.K / std::pow(L_eff, spec.alpha);
      return RateResult{rho, RateMethod::kClosedForm, 0.0};
    }
    if (const auto* sp = std::get_if<SphereExterior>(&target.geometry())) {
      return RateResult{stable_sphere_rate(spec.alpha, spec.K, sp->L, sp->d),
                        RateMethod::kClosedForm, 0.0};
    }
    if (const auto* an = std::get_if<Annulus>(&target.geometry())) {
      // rho(L) decreases in L, so the annulus rate is rho(L-) - rho(L+).
      const double rho =
          stable_sphere_rate(spec.alpha, spec.K, an->L_minus, an->d) -
          stable_sphere_rate(spec.alpha, spec.K, an->L_plus, an->d);
      return RateResult{rho, RateMethod::kClosedForm, 0.0};
    }
  }
  if (spec.family == SubordinatorFamily::kGamma) {
    if (const auto* sp = std::get_if<SphereExterior>(&target.geometry());
        sp && sp->d == 3) {
      const double z = sp->L * std::sqrt(spec.mu);
      const double rho = 2.0 * spec.C * (std::exp(-z) + sf::expint_e1(z));
      return RateResult{rho, RateMethod::kClosedForm, 0.0};
    }
  }
  return std::nullopt;
}

double rate_poisson_approx(const SubordinatorSpec& spec, double lambda,
                           double l, int d) {
  if (spec.family == SubordinatorFamily::kGamma) {
    throw std::invalid_argument(
        "rate_poisson_approx: only stable and tempered stable families supported");
  }
  if (!(lambda >= 0.0) || !(l > 0.0) || d < 1) {
    throw std::invalid_argument("rate_poisson_approx: bad parameters");
  }
  if (lambda == 0.0) return 0.0;
  const double g = 0.5 * spec.alpha;
  const double Vd = std::pow(kPi, 0.5 * d) / sf::tgamma(1.0 + 0.5 * d);
  if (spec.family == SubordinatorFamily::kStable) {
    return std::pow(Vd, 1.0 + spec.alpha / d) / sf::tgamma(1.0 - g) * spec.K *
           std::pow(l, d) * std::pow(lambda, 1.0 + spec.alpha / d);
  }
  const double z = std::pow(Vd * lambda, -2.0 / d) * spec.mu;
  return spec.K * std::pow(l, d) * Vd * spec.alpha * lambda *
         std::pow(spec.mu, g) * sf::upper_gamma_neg(-g, z) /
         (2.0 * sf::tgamma(1.0 - g));
}

RateResult rate_upper_bound_halfline(const SubordinatorSpec& spec, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("rate_upper_bound_halfline: L must be > 0");
  const auto mass = [L](double s) { return sf::erfc(L / (2.0 * std::sqrt(s))); };
  return integrate_rate(mass, spec);
}

double getoor_mean_fht(double alpha, double K, double L, int d) {
  const double rho = stable_sphere_rate(alpha, K, L, d);
  const double g = 0.5 * alpha;
  return 1.0 / (rho * sf::tgamma(1.0 - g) * sf::tgamma(1.0 + g));
}

}  // namespace levyfht
