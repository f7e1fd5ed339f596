#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "levyfht/subordinators.hpp"
#include "levyfht/targets.hpp"

namespace levyfht {

inline constexpr double kCensored = std::numeric_limits<double>::infinity();

struct SimConfig {
  double dt = 1e-5;
  double t_max = 1.0;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  SubordinatorSpec spec;
  TargetSpec target;

  void validate() const;  // dt > 0, dt <= t_max, trials >= 1
};

// One first-hitting-time observation on the dt grid.
struct FhtSample {
  double value = kCensored;       // grid_steps * dt when finite, +inf censored
  std::uint64_t grid_steps = 0;   // hitting step when finite, steps run when censored
  bool censored = true;
  bool left_box = false;          // PoissonBalls only: path left the generation box
};

// Simulates one trial: the subordinator grid S(t_k) advances by exact
// increments and the Brownian coordinate picks up variance 2*dS per step.
// Returns the first k*dt with X(t_k) in U, censored at t_max otherwise.
// Deterministic function of (config, trial_index) regardless of caller.
FhtSample simulate_fht(const SimConfig& config, std::int64_t trial_index);

// All trials; OpenMP-parallel over trials (threads = 0 picks the runtime
// default). Output is bitwise identical for any thread count because trial i
// owns stream i and slot i. Warns on stderr if more than half the pool is
// censored or if any PoissonBalls path left the generation box.
std::vector<FhtSample> run_pool(const SimConfig& config, int threads = 0);

// Single-threaded reference implementation with the identical contract;
// kept for the equivalence tests and the benchmark.
std::vector<FhtSample> run_pool_serial(const SimConfig& config);

double censored_fraction(std::span<const FhtSample> pool);

// FHT values with censored trials mapped to +inf (the order-statistics
// convention used by the extremes module).
std::vector<double> fht_values(std::span<const FhtSample> pool);

// Columns "trial,fht,censored"; the fht field is empty for censored trials.
// config_comment, when nonempty, is written first as a "# ..." line.
void write_pool_csv(std::ostream& out, std::span<const FhtSample> pool,
                    const std::string& config_comment);

}  // namespace levyfht
