// Compares the serial reference implementations against the OpenMP kernels
// on a medium workload and verifies that the outputs match bit for bit.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "levyfht/extremes.hpp"
#include "levyfht/simulate.hpp"

using namespace levyfht;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

bool pools_equal(const std::vector<FhtSample>& a, const std::vector<FhtSample>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::memcmp(&a[i].value, &b[i].value, sizeof(double)) != 0 ||
        a[i].grid_steps != b[i].grid_steps || a[i].censored != b[i].censored) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t trials = 20000;
  if (argc > 1) trials = std::atoll(argv[1]);

  SimConfig config{1e-4, 25.0, trials, 12345,
                   SubordinatorSpec::stable(1.5, 1.0),
                   TargetSpec(SphereExterior{1.0, 3})};

  std::printf("pool: %lld trials of sphere escape (alpha=1.5, d=3, dt=1e-4)\n",
              static_cast<long long>(trials));

  auto t0 = std::chrono::steady_clock::now();
  const auto serial = run_pool_serial(config);
  const double serial_s = seconds_since(t0);
  std::printf("%8s  %9.3fs  %12.0f trials/s  (reference)\n", "serial", serial_s,
              trials / serial_s);

#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif
  for (int threads = 1; threads <= max_threads; threads *= 2) {
    t0 = std::chrono::steady_clock::now();
    const auto parallel = run_pool(config, threads);
    const double s = seconds_since(t0);
    std::printf("%5d thr  %9.3fs  %12.0f trials/s  speedup %.2fx  %s\n", threads,
                s, trials / s, serial_s / s,
                pools_equal(serial, parallel) ? "bitwise equal" : "MISMATCH");
  }

  const auto values = fht_values(serial);
  const int resamples = 200000;
  t0 = std::chrono::steady_clock::now();
  const auto tkn_serial = sample_tkn_serial(values, 100, 1, resamples, 7);
  const double tkn_serial_s = seconds_since(t0);
  std::printf("\nresampling: %d groups of N=100\n", resamples);
  std::printf("%8s  %9.3fs  (reference)\n", "serial", tkn_serial_s);
  for (int threads = 1; threads <= max_threads; threads *= 2) {
    t0 = std::chrono::steady_clock::now();
    const auto tkn = sample_tkn(values, 100, 1, resamples, 7, threads);
    const double s = seconds_since(t0);
    std::printf("%5d thr  %9.3fs  speedup %.2fx  %s\n", threads, s,
                tkn_serial_s / s,
                std::memcmp(tkn.data(), tkn_serial.data(),
                            tkn.size() * sizeof(double)) == 0
                    ? "bitwise equal"
                    : "MISMATCH");
  }
  return 0;
}
