#include "levyfht/subordinators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "levyfht/quadrature.hpp"
#include "levyfht/special.hpp"

namespace levyfht {

namespace {

void check_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be > 0");
  }
}

// Construction-time sanity check that the Levy measure is supported on
// (0,inf) and integrates min{1,s}: int_0^1 s nu(ds) + nu((1,inf)) < inf.
void check_levy_measure(const SubordinatorSpec& spec) {
  const auto f = [&](double u) {
    const double s = std::exp(u);
    return s * levy_density(spec, s) * s;  // integrand in log coordinates
  };
  double small_piece = 0.0;
  double block = 0.0;
  double lo = 0.0;
  do {
    const QuadResult r = integrate_gk(f, lo - 4.0, lo, 0.0, 1e-10, 400);
    block = r.value;
    small_piece += block;
    lo -= 4.0;
  } while (block > 1e-12 * small_piece && lo > -120.0);
  const double total = small_piece + levy_tail_mass_bound(spec, 1.0);
  if (!std::isfinite(total)) {
    throw std::invalid_argument(
        "subordinator spec: Levy measure fails the min{1,s} integrability check");
  }
}

}  // namespace

SubordinatorSpec SubordinatorSpec::stable(double alpha, double K, double b) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("alpha must be in (0,2)");
  }
  check_positive(K, "K");
  if (b < 0.0) throw std::invalid_argument("b must be >= 0");
  SubordinatorSpec spec;
  spec.family = SubordinatorFamily::kStable;
  spec.alpha = alpha;
  spec.K = K;
  spec.b = b;
  check_levy_measure(spec);
  return spec;
}

SubordinatorSpec SubordinatorSpec::tempered_stable(double alpha, double K,
                                                   double mu, double b) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("alpha must be in (0,2)");
  }
  check_positive(K, "K");
  check_positive(mu, "mu");
  if (b < 0.0) throw std::invalid_argument("b must be >= 0");
  SubordinatorSpec spec;
  spec.family = SubordinatorFamily::kTemperedStable;
  spec.alpha = alpha;
  spec.K = K;
  spec.mu = mu;
  spec.b = b;
  check_levy_measure(spec);
  return spec;
}

SubordinatorSpec SubordinatorSpec::gamma(double C, double mu, double b) {
  check_positive(C, "C");
  check_positive(mu, "mu");
  if (b < 0.0) throw std::invalid_argument("b must be >= 0");
  SubordinatorSpec spec;
  spec.family = SubordinatorFamily::kGamma;
  spec.C = C;
  spec.mu = mu;
  spec.b = b;
  check_levy_measure(spec);
  return spec;
}

double laplace_exponent(const SubordinatorSpec& spec, double beta) {
  if (beta < 0.0) throw std::domain_error("laplace_exponent: beta must be >= 0");
  const double drift = spec.b * beta;
  switch (spec.family) {
    case SubordinatorFamily::kStable:
      return drift + spec.K * std::pow(beta, 0.5 * spec.alpha);
    case SubordinatorFamily::kTemperedStable: {
      const double g = 0.5 * spec.alpha;
      return drift +
             spec.K * (std::pow(beta + spec.mu, g) - std::pow(spec.mu, g));
    }
    case SubordinatorFamily::kGamma:
      return drift + spec.C * std::log1p(beta / spec.mu);
  }
  return drift;  // unreachable
}

double levy_density(const SubordinatorSpec& spec, double s) {
  if (!(s > 0.0)) throw std::domain_error("levy_density: s must be > 0");
  const double g = 0.5 * spec.alpha;
  switch (spec.family) {
    case SubordinatorFamily::kStable:
      return spec.K * g / sf::tgamma(1.0 - g) * std::pow(s, -1.0 - g);
    case SubordinatorFamily::kTemperedStable:
      return spec.K * g / sf::tgamma(1.0 - g) * std::exp(-spec.mu * s) *
             std::pow(s, -1.0 - g);
    case SubordinatorFamily::kGamma:
      return spec.C * std::exp(-spec.mu * s) / s;
  }
  return 0.0;  // unreachable
}

double levy_tail_mass_bound(const SubordinatorSpec& spec, double T) {
  if (!(T > 0.0)) throw std::domain_error("levy_tail_mass_bound: T must be > 0");
  const double g = 0.5 * spec.alpha;
  switch (spec.family) {
    case SubordinatorFamily::kStable:
      return spec.K / sf::tgamma(1.0 - g) * std::pow(T, -g);
    case SubordinatorFamily::kTemperedStable:
      return spec.K / sf::tgamma(1.0 - g) * std::exp(-spec.mu * T) *
             std::pow(T, -g);
    case SubordinatorFamily::kGamma:
      return spec.C * sf::expint_e1(spec.mu * T);
  }
  return 0.0;  // unreachable
}

}  // namespace levyfht
