#include "levyfht/quadrature.hpp"

#include <cmath>

#include "doctest.h"

using namespace levyfht;

TEST_CASE("polynomials are exact") {
  const auto r = integrate_gk([](double x) { return x * x * x; }, 0.0, 2.0,
                              1e-14, 0.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 4.0) < 1e-13);
}

TEST_CASE("smooth exponential") {
  const auto r = integrate_gk([](double x) { return std::exp(-x); }, 0.0, 30.0,
                              0.0, 1e-12);
  CHECK(r.converged);
  CHECK(std::abs(r.value - (1.0 - std::exp(-30.0))) < 1e-12);
  CHECK(r.error < 1e-10);
}

TEST_CASE("oscillatory integrand needs refinement but converges") {
  const auto r = integrate_gk([](double x) { return std::sin(51.0 * x); }, 0.0,
                              M_PI, 0.0, 1e-12);
  CHECK(r.converged);
  // int_0^pi sin(51x) dx = (1 - cos(51 pi)) / 51 = 2/51
  CHECK(std::abs(r.value - 2.0 / 51.0) < 1e-12);
  CHECK(r.intervals > 1);
}

TEST_CASE("interval budget failure is reported") {
  // steep spike that cannot be resolved with 2 intervals
  const auto r = integrate_gk(
      [](double x) { return 1.0 / (1e-12 + (x - 0.3137) * (x - 0.3137)); }, 0.0,
      1.0, 0.0, 1e-14, 2);
  CHECK_FALSE(r.converged);
}

TEST_CASE("error estimate bounds the true error on a hard integrand") {
  const auto r = integrate_gk([](double x) { return std::sqrt(x); }, 0.0, 1.0,
                              0.0, 1e-10);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0 / 3.0) <= std::max(r.error, 1e-12));
}
