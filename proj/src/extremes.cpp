#include "levyfht/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "levyfht/rng.hpp"
#include "levyfht/special.hpp"

namespace levyfht {

namespace {

// Tracks the k smallest values seen so far with a size-k max-heap.
class KthMinTracker {
 public:
  explicit KthMinTracker(int k) : k_(k) { heap_.reserve(k); }

  void push(double x) {
    if (static_cast<int>(heap_.size()) < k_) {
      heap_.push_back(x);
      std::push_heap(heap_.begin(), heap_.end());
    } else if (x < heap_.front()) {
      std::pop_heap(heap_.begin(), heap_.end());
      heap_.back() = x;
      std::push_heap(heap_.begin(), heap_.end());
    }
  }

  double kth() const { return heap_.front(); }

  void reset() { heap_.clear(); }

 private:
  int k_;
  std::vector<double> heap_;
};

// Lazily initialized permutation for partial Fisher-Yates draws: entry i
// reads as i until a group touches it, and the epoch stamp voids all writes
// between groups in O(1).
struct LazyPermutation {
  std::vector<std::uint32_t> value;
  std::vector<std::uint64_t> stamp;
  std::uint64_t epoch = 0;

  explicit LazyPermutation(std::size_t n) : value(n, 0), stamp(n, 0) {}

  std::uint32_t get(std::uint32_t i) const {
    return stamp[i] == epoch ? value[i] : i;
  }
  void set(std::uint32_t i, std::uint32_t v) {
    value[i] = v;
    stamp[i] = epoch;
  }
};

double group_kth_min(std::span<const double> pool, int N, int k,
                     std::uint64_t seed, std::uint64_t group,
                     LazyPermutation& perm, KthMinTracker& tracker) {
  Rng rng(seed, RngDomain::kGroups, group);
  ++perm.epoch;
  tracker.reset();
  const auto M = static_cast<std::uint32_t>(pool.size());
  for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(N); ++j) {
    const std::uint32_t r = j + rng.below(M - j);
    const std::uint32_t vj = perm.get(j);
    const std::uint32_t vr = perm.get(r);
    perm.set(j, vr);
    perm.set(r, vj);
    tracker.push(pool[vr]);
  }
  return tracker.kth();
}

void check_tkn_args(std::span<const double> pool, int N, int k, int resamples) {
  if (N < 1 || static_cast<std::size_t>(N) > pool.size()) {
    throw std::invalid_argument("sample_tkn: need 1 <= N <= pool size");
  }
  if (k < 1 || k > N) throw std::invalid_argument("sample_tkn: need 1 <= k <= N");
  if (resamples < 1) throw std::invalid_argument("sample_tkn: resamples must be >= 1");
}

}  // namespace

double kth_minimum(std::span<const double> values, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > values.size()) {
    throw std::invalid_argument("kth_minimum: k out of range");
  }
  KthMinTracker tracker(k);
  for (double v : values) tracker.push(v);
  return tracker.kth();
}

double erlang_cdf(int k, double lambda, double t) {
  if (k < 1) throw std::invalid_argument("erlang_cdf: k must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("erlang_cdf: lambda must be > 0");
  if (t <= 0.0) return 0.0;
  return sf::gamma_p(k, lambda * t);
}

std::vector<double> sample_tkn(std::span<const double> pool, int N, int k,
                               int resamples, std::uint64_t seed, int threads) {
  check_tkn_args(pool, N, k, resamples);
  std::vector<double> out(static_cast<std::size_t>(resamples));
#ifdef _OPENMP
  const int n_threads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(n_threads)
  {
    LazyPermutation perm(pool.size());
    KthMinTracker tracker(k);
#pragma omp for schedule(static)
    for (int g = 0; g < resamples; ++g) {
      out[static_cast<std::size_t>(g)] =
          group_kth_min(pool, N, k, seed, static_cast<std::uint64_t>(g), perm,
                        tracker);
    }
  }
#else
  (void)threads;
  out = sample_tkn_serial(pool, N, k, resamples, seed);
#endif
  return out;
}

std::vector<double> sample_tkn_serial(std::span<const double> pool, int N,
                                      int k, int resamples,
                                      std::uint64_t seed) {
  check_tkn_args(pool, N, k, resamples);
  std::vector<double> out(static_cast<std::size_t>(resamples));
  LazyPermutation perm(pool.size());
  KthMinTracker tracker(k);
  for (int g = 0; g < resamples; ++g) {
    out[static_cast<std::size_t>(g)] = group_kth_min(
        pool, N, k, seed, static_cast<std::uint64_t>(g), perm, tracker);
  }
  return out;
}

double ks_distance_rescaled(std::span<const double> samples, int k, double rho,
                            int N) {
  if (samples.empty()) throw std::invalid_argument("ks_distance_rescaled: empty sample list");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  if (!std::isfinite(sorted.back())) {
    throw std::invalid_argument("ks_distance_rescaled: samples must be finite");
  }
  const double n = static_cast<double>(sorted.size());
  const double scale = rho * N;
  double ks = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double F = erlang_cdf(k, 1.0, scale * sorted[i]);
    // ECDF is right-continuous: value i/n just below the jump, (i+1)/n at it.
    ks = std::max(ks, std::max(F - i / n, (i + 1) / n - F));
  }
  return ks;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::size_t i = 0, j = 0;
  double ks = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    ks = std::max(ks, std::abs(static_cast<double>(i) / sa.size() -
                               static_cast<double>(j) / sb.size()));
  }
  return ks;
}

std::pair<double, double> moment_errors(std::span<const double> samples, int k,
                                        double rho, int N) {
  if (samples.empty()) throw std::invalid_argument("moment_errors: empty sample list");
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= samples.size() > 1 ? static_cast<double>(samples.size() - 1) : 1.0;
  const double scale = 1.0 / (rho * N);
  return {std::abs(mean - k * scale),
          std::abs(std::sqrt(var) - std::sqrt(static_cast<double>(k)) * scale)};
}

ExtremeReport build_extreme_report(std::span<const double> pool, int N, int k,
                                   double rho, int resamples,
                                   std::uint64_t seed, int threads) {
  ExtremeReport report;
  report.N = N;
  report.k = k;
  report.rho = rho;
  report.samples = sample_tkn(pool, N, k, resamples, seed, threads);
  std::sort(report.samples.begin(), report.samples.end());

  std::vector<double> finite;
  finite.reserve(report.samples.size());
  for (double x : report.samples) {
    if (std::isfinite(x)) finite.push_back(x);
  }
  report.censored_mass =
      1.0 - static_cast<double>(finite.size()) /
                static_cast<double>(report.samples.size());
  if (finite.empty()) {
    report.ks_distance = 1.0;
    return report;
  }

  report.ks_distance = ks_distance_rescaled(finite, k, rho, N);
  double m1 = 0.0, m2 = 0.0;
  for (double x : finite) {
    m1 += x;
    m2 += x * x;
  }
  report.empirical_moments = {m1 / finite.size(), m2 / finite.size()};
  const double scale = 1.0 / (rho * N);
  report.predicted_moments = {k * scale, k * (k + 1.0) * scale * scale};
  const auto errors = moment_errors(finite, k, rho, N);
  report.abs_err_mean = errors.first;
  report.abs_err_std = errors.second;
  return report;
}

std::vector<std::pair<double, double>> rescaled_histogram(
    std::span<const double> samples, double rho, int N, int bins,
    double z_max) {
  if (bins < 1 || !(z_max > 0.0)) {
    throw std::invalid_argument("rescaled_histogram: bad bins/z_max");
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  const double width = z_max / bins;
  std::size_t finite = 0;
  for (double x : samples) {
    if (!std::isfinite(x)) continue;
    ++finite;
    const double z = rho * N * x;
    if (z >= z_max) continue;
    ++counts[static_cast<std::size_t>(z / width)];
  }
  std::vector<std::pair<double, double>> hist(static_cast<std::size_t>(bins));
  for (int i = 0; i < bins; ++i) {
    const double density =
        finite == 0 ? 0.0 : counts[i] / (static_cast<double>(finite) * width);
    hist[i] = {(i + 0.5) * width, density};
  }
  return hist;
}

namespace {

void write_value(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_ks_csv(std::ostream& out, std::span<const ExtremeReport> reports,
                  const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "N,k,rho,ks\n";
  for (const ExtremeReport& r : reports) {
    out << r.N << "," << r.k << ",";
    write_value(out, r.rho);
    out << ",";
    write_value(out, r.ks_distance);
    out << "\n";
  }
}

void write_moments_csv(std::ostream& out,
                       std::span<const ExtremeReport> reports,
                       const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "N,abs_err_mean,abs_err_std\n";
  for (const ExtremeReport& r : reports) {
    out << r.N << ",";
    write_value(out, r.abs_err_mean);
    out << ",";
    write_value(out, r.abs_err_std);
    out << "\n";
  }
}

void write_histogram_csv(std::ostream& out, const ExtremeReport& report,
                         const std::string& comment, int bins, double z_max) {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "z,density\n";
  for (const auto& [z, density] :
       rescaled_histogram(report.samples, report.rho, report.N, bins, z_max)) {
    write_value(out, z);
    out << ",";
    write_value(out, density);
    out << "\n";
  }
}

}  // namespace levyfht
