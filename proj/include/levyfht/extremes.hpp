#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace levyfht {

// Censored observations are represented as +inf throughout this module, so
// they order after every finite value.

// k-th smallest of values, 1 <= k <= size.
double kth_minimum(std::span<const double> values, int k);

// CDF of the Erlang distribution with shape k and rate lambda; k = 1 is the
// exponential case 1 - e^(-lambda t).
double erlang_cdf(int k, double lambda, double t);

// Approximate iid realizations of T_{k,N} from a pool of iid FHT samples:
// draws `resamples` groups of N distinct pool entries (with replacement
// across groups) and returns each group's k-th minimum. Group g consumes its
// own random stream derived from (seed, g), so results are independent of
// thread count and scheduling.
std::vector<double> sample_tkn(std::span<const double> pool, int N, int k,
                               int resamples, std::uint64_t seed,
                               int threads = 0);

// Single-threaded reference implementation with the identical contract.
std::vector<double> sample_tkn_serial(std::span<const double> pool, int N,
                                      int k, int resamples, std::uint64_t seed);

// sup_z | ECDF of (rho N) * samples  -  Erlang(1,k) CDF |, evaluated at both
// one-sided limits of every ECDF jump. Samples must be finite; report
// censored mass separately.
double ks_distance_rescaled(std::span<const double> samples, int k, double rho,
                            int N);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

// (|mean - k/(rho N)|, |std - sqrt(k)/(rho N)|): absolute errors of the
// sample mean and standard deviation against the Erlang(rho N, k) values.
std::pair<double, double> moment_errors(std::span<const double> samples, int k,
                                        double rho, int N);

// Everything the KS and moment figures need for one (N, k) point.
struct ExtremeReport {
  int N = 0;
  int k = 1;
  double rho = 0.0;
  std::vector<double> samples;  // sorted ascending, censored (+inf) last
  double ks_distance = 0.0;     // finite samples only
  double censored_mass = 0.0;   // fraction of censored T_{k,N} groups
  std::array<double, 2> empirical_moments{};  // E[T], E[T^2]
  std::array<double, 2> predicted_moments{};  // Gamma(k+m)/Gamma(k) (rho N)^-m
  double abs_err_mean = 0.0;
  double abs_err_std = 0.0;
};

ExtremeReport build_extreme_report(std::span<const double> pool, int N, int k,
                                   double rho, int resamples,
                                   std::uint64_t seed, int threads = 0);

// Probability density histogram of the finite rescaled values (rho N) * T
// over `bins` uniform bins spanning [0, z_max]; returns (bin center, density).
std::vector<std::pair<double, double>> rescaled_histogram(
    std::span<const double> samples, double rho, int N, int bins = 50,
    double z_max = 6.0);

// CSV emitters. comment, when nonempty, is written first as a "# ..." line.
void write_ks_csv(std::ostream& out, std::span<const ExtremeReport> reports,
                  const std::string& comment);
void write_moments_csv(std::ostream& out,
                       std::span<const ExtremeReport> reports,
                       const std::string& comment);
void write_histogram_csv(std::ostream& out, const ExtremeReport& report,
                         const std::string& comment, int bins = 50,
                         double z_max = 6.0);

}  // namespace levyfht
