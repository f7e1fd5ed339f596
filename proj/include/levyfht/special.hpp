#pragma once

// Special functions needed by the rate formulas, implemented in-repo with
// series / continued-fraction switching. Each is validated against
// high-precision reference values in the test suite.

namespace levyfht::sf {

inline constexpr double kEulerGamma = 0.57721566490153286061;

double lgamma(double x);  // log|Gamma(x)|, x > 0 or non-integer x < 0
double tgamma(double x);  // Gamma(x), x not a nonpositive integer

// Regularized incomplete gamma functions, a > 0, z >= 0.
// gamma_p is the lower tail P(a,z), gamma_q the upper tail Q(a,z) = 1 - P.
double gamma_p(double a, double z);
double gamma_q(double a, double z);

double erf(double x);
double erfc(double x);

// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
double expint_e1(double x);

// Unregularized upper incomplete gamma Gamma(a,z) for a in (-1,0), z > 0.
double upper_gamma_neg(double a, double z);

}  // namespace levyfht::sf
