#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace levyfht {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;     // estimated absolute error
  bool converged = false;
  int intervals = 0;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights (positive half), QUADPACK values.
inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                                  0.3818300505051189, 0.4179591836734694};

template <class F>
void gk15(F&& f, double a, double b, double* value, double* error) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[15];
  const double fc = f(mid);
  fv[14] = fc;
  double k15 = kWgk[7] * fc;
  double g7 = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double f1 = f(mid - dx);
    const double f2 = f(mid + dx);
    fv[2 * i] = f1;
    fv[2 * i + 1] = f2;
    k15 += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) g7 += kWg[i / 2] * (f1 + f2);
  }
  k15 *= half;
  g7 *= half;
  // QUADPACK-style error estimate scaled by the variation of f.
  const double mean = k15 / (b - a);
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int i = 0; i < 7; ++i) {
    resasc += kWgk[i] *
              (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));
  }
  resasc *= half;
  double err = std::abs(k15 - g7);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  *value = k15;
  *error = err;
}

}  // namespace detail

// Adaptive Gauss-Kronrod on [a,b]: repeatedly bisects the interval with the
// largest error estimate until sum(err) <= max(abs_tol, rel_tol*|sum(val)|).
template <class F>
QuadResult integrate_gk(F&& f, double a, double b, double abs_tol,
                        double rel_tol, int max_intervals = 2000) {
  struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
  };
  std::priority_queue<Interval> queue;
  double value, error;
  detail::gk15(f, a, b, &value, &error);
  queue.push({a, b, value, error});
  double total_value = value;
  double total_error = error;
  int n = 1;
  while (total_error > std::max(abs_tol, rel_tol * std::abs(total_value))) {
    if (n >= max_intervals) {
      return {total_value, total_error, false, n};
    }
    const Interval worst = queue.top();
    queue.pop();
    total_value -= worst.value;
    total_error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    double v1, e1, v2, e2;
    detail::gk15(f, worst.a, mid, &v1, &e1);
    detail::gk15(f, mid, worst.b, &v2, &e2);
    queue.push({worst.a, mid, v1, e1});
    queue.push({mid, worst.b, v2, e2});
    total_value += v1 + v2;
    total_error += e1 + e2;
    ++n;
  }
  return {total_value, total_error, true, n};
}

}  // namespace levyfht
