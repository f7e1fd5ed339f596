#include "levyfht/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "levyfht/rates.hpp"
#include "levyfht/rng.hpp"

using namespace levyfht;

namespace {

// Reference path: replays the exact stream/consumption contract of
// simulate_fht step by step, exposing positions for the law checks below.
struct ReferencePath {
  Rng rng;
  IncrementSampler increment;
  std::vector<double> pos;

  ReferencePath(const SimConfig& config, std::int64_t trial)
      : rng(config.seed, RngDomain::kTrials, static_cast<std::uint64_t>(trial)),
        increment(config.spec, config.dt),
        pos(config.target.start()) {}

  void step() {
    const double ds = increment(rng);
    const double sd = std::sqrt(2.0 * ds);
    for (double& x : pos) x += sd * rng.normal();
  }
};

}  // namespace

TEST_CASE("simulate_fht agrees with the reference path bit for bit") {
  SimConfig config{1e-3, 2.0, 16, 77, SubordinatorSpec::stable(1.5, 1.0),
                   TargetSpec(SphereExterior{1.0, 3})};
  for (std::int64_t trial = 0; trial < config.trials; ++trial) {
    ReferencePath ref(config, trial);
    std::uint64_t hit_step = 0;
    const auto n_steps = static_cast<std::uint64_t>(config.t_max / config.dt + 0.5);
    for (std::uint64_t k = 1; k <= n_steps && hit_step == 0; ++k) {
      ref.step();
      if (contains(config.target, ref.pos)) hit_step = k;
    }
    const FhtSample sample = simulate_fht(config, trial);
    if (hit_step == 0) {
      CHECK(sample.censored);
    } else {
      REQUIRE_FALSE(sample.censored);
      CHECK(sample.grid_steps == hit_step);
      CHECK(sample.value == static_cast<double>(hit_step) * config.dt);
    }
  }
}

TEST_CASE("a huge first increment hits at exactly one step") {
  // K so large that the very first jump leaves the sphere almost surely
  SimConfig config{0.25, 10.0, 200, 5, SubordinatorSpec::stable(1.0, 1e9),
                   TargetSpec(SphereExterior{1.0, 2})};
  int first_step_hits = 0;
  for (std::int64_t trial = 0; trial < config.trials; ++trial) {
    const FhtSample s = simulate_fht(config, trial);
    REQUIRE_FALSE(s.censored);
    if (s.grid_steps == 1) {
      ++first_step_hits;
      CHECK(s.value == config.dt);
    }
  }
  CHECK(first_step_hits > 190);
}

TEST_CASE("pool determinism: serial, 1 thread and 2 threads agree bitwise") {
  SimConfig config{1e-3, 1.0, 500, 99, SubordinatorSpec::gamma(1.0, 1.0),
                   TargetSpec(SphereExterior{1.0, 3})};
  const auto serial = run_pool_serial(config);
  const auto one = run_pool(config, 1);
  const auto two = run_pool(config, 2);
  REQUIRE(serial.size() == one.size());
  REQUIRE(serial.size() == two.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(std::memcmp(&serial[i].value, &one[i].value, sizeof(double)) == 0);
    CHECK(std::memcmp(&serial[i].value, &two[i].value, sizeof(double)) == 0);
    CHECK(serial[i].grid_steps == one[i].grid_steps);
    CHECK(serial[i].grid_steps == two[i].grid_steps);
    CHECK(serial[i].censored == two[i].censored);
  }
}

TEST_CASE("run_pool with one trial equals simulate_fht") {
  SimConfig config{1e-3, 1.0, 1, 3, SubordinatorSpec::stable(1.0, 1.0),
                   TargetSpec(HalfLine{1.0})};
  const auto pool = run_pool(config);
  const FhtSample direct = simulate_fht(config, 0);
  REQUIRE(pool.size() == 1);
  CHECK(pool[0].censored == direct.censored);
  CHECK(pool[0].grid_steps == direct.grid_steps);
}

TEST_CASE("censoring is monotone in the horizon") {
  // same seed: paths at the longer horizon extend the shorter ones, so every
  // hit before t_max stays a hit
  SimConfig shorter{1e-3, 0.5, 2000, 123, SubordinatorSpec::stable(1.5, 1.0),
                    TargetSpec(HalfLine{1.0})};
  SimConfig longer = shorter;
  longer.t_max = 1.0;
  const auto pool_short = run_pool(shorter);
  const auto pool_long = run_pool(longer);
  for (std::size_t i = 0; i < pool_short.size(); ++i) {
    if (!pool_short[i].censored) {
      REQUIRE_FALSE(pool_long[i].censored);
      CHECK(pool_long[i].grid_steps == pool_short[i].grid_steps);
    }
  }
  CHECK(censored_fraction(pool_long) <= censored_fraction(pool_short));
}

TEST_CASE("path law: characteristic function at t=1 matches exp(-Phi(1))") {
  const int trials = 40000, steps = 100;
  const double dt = 0.01;
  struct Case {
    SubordinatorSpec spec;
    const char* name;
  };
  const Case cases[] = {{SubordinatorSpec::stable(1.0, 1.0), "stable"},
                        {SubordinatorSpec::gamma(1.0, 1.0), "gamma"}};
  for (const auto& c : cases) {
    SimConfig config{dt, 1.0, trials, 2024, c.spec, TargetSpec(HalfLine{100.0})};
    double sum = 0.0, sum2 = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
      ReferencePath ref(config, trial);
      for (int k = 0; k < steps; ++k) ref.step();
      const double v = std::cos(ref.pos[0]);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
    const double target = std::exp(-laplace_exponent(c.spec, 1.0));
    CAPTURE(c.name);
    CHECK(std::abs(mean - target) < 3.0 * se);
  }
}

TEST_CASE("mean-squared displacement matches 2 d E[S(t)] for the gamma family") {
  const int trials = 30000, steps = 50;
  const double dt = 0.02, t = steps * dt;
  const double C = 2.0, mu = 4.0;
  const int d = 3;
  SimConfig config{dt, 1.0, trials, 31, SubordinatorSpec::gamma(C, mu),
                   TargetSpec(SphereExterior{100.0, d})};
  double sum = 0.0, sum2 = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    ReferencePath ref(config, trial);
    for (int k = 0; k < steps; ++k) ref.step();
    double r2 = 0.0;
    for (double x : ref.pos) r2 += x * x;
    sum += r2;
    sum2 += r2 * r2;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
  CHECK(std::abs(mean - 2.0 * d * C * t / mu) < 3.0 * se);
}

TEST_CASE("refinement consistency: halving dt moves the FHT CDF within MC error") {
  SimConfig coarse{1e-3, 3.0, 100000, 8, SubordinatorSpec::stable(1.5, 1.0),
                   TargetSpec(HalfLine{1.0})};
  SimConfig fine = coarse;
  fine.dt = 5e-4;
  const auto pool_coarse = run_pool(coarse);
  const auto pool_fine = run_pool(fine);
  const auto cdf_at = [](const std::vector<FhtSample>& pool, double t) {
    std::size_t n = 0;
    for (const auto& s : pool) n += (!s.censored && s.value <= t);
    return static_cast<double>(n) / static_cast<double>(pool.size());
  };
  // quantile grid from the coarse pool
  for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    auto values = fht_values(pool_coarse);
    std::nth_element(values.begin(),
                     values.begin() + static_cast<std::size_t>(q * values.size()),
                     values.end());
    const double t = values[static_cast<std::size_t>(q * values.size())];
    if (!std::isfinite(t)) continue;
    const double c1 = cdf_at(pool_coarse, t);
    const double c2 = cdf_at(pool_fine, t);
    const double se = std::sqrt(2.0 * q * (1.0 - q) / pool_coarse.size());
    CAPTURE(q);
    CHECK(std::abs(c1 - c2) < 3.0 * se);
  }
}

TEST_CASE("short-time hitting probability approaches rho from above") {
  // P(tau <= t)/t decreases toward rho as t -> 0 (paths can enter and leave
  // the target, so the finite-t ratio sits between rho and 2 rho)
  const double rho = rate_closed_form(SubordinatorSpec::stable(1.5, 1.0),
                                      TargetSpec(HalfLine{1.0}))
                         ->rho;
  SimConfig config{1e-4, 0.01, 400000, 6, SubordinatorSpec::stable(1.5, 1.0),
                   TargetSpec(HalfLine{1.0})};
  const auto pool = run_pool(config);
  const auto ratio_at = [&](double t) {
    std::size_t hits = 0;
    for (const auto& s : pool) hits += (!s.censored && s.value <= t + 1e-12);
    return static_cast<double>(hits) / static_cast<double>(pool.size()) / t;
  };
  const double r1 = ratio_at(0.0025);
  const double r2 = ratio_at(0.005);
  const double r3 = ratio_at(0.01);
  // about 200 hits at the smallest t: allow 3 binomial SE of slack
  const double se1 = 3.0 * std::sqrt(rho * 0.0025 / pool.size()) / 0.0025;
  CHECK(r3 >= r2 * (1.0 - 0.05));
  CHECK(r2 >= r1 * (1.0 - 0.05));
  CHECK(r1 > rho - se1);
  CHECK(r1 < 2.0 * rho);
  CHECK(std::abs(r1 - rho) / rho < 0.3);
}

TEST_CASE("paths leaving the poisson field box are flagged") {
  const auto field = generate_poisson_field(0.05, 0.2, 1, 1.5, 17);
  SimConfig config{1e-3, 2.0, 50, 2, SubordinatorSpec::stable(1.0, 1.0), field};
  const auto pool = run_pool_serial(config);
  std::size_t flagged = 0;
  for (const auto& s : pool) flagged += s.left_box;
  CHECK(flagged > 0);  // the box is far too small for this horizon
}

TEST_CASE("config validation") {
  SimConfig config{1e-3, 1.0, 10, 0, SubordinatorSpec::stable(1.0, 1.0),
                   TargetSpec(HalfLine{1.0})};
  CHECK_THROWS_AS(simulate_fht(config, 10), std::out_of_range);
  CHECK_THROWS_AS(simulate_fht(config, -1), std::out_of_range);
  config.dt = 2.0;  // dt > t_max
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.dt = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.dt = 1e-3;
  config.trials = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("pool CSV format") {
  SimConfig config{0.05, 0.2, 4, 1, SubordinatorSpec::stable(0.8, 1.0),
                   TargetSpec(HalfLine{2.0})};
  const auto pool = run_pool(config);
  std::ostringstream out;
  write_pool_csv(out, pool, "test comment");
  const std::string text = out.str();
  CHECK(text.substr(0, 15) == "# test comment\n");
  CHECK(text.find("trial,fht,censored\n") != std::string::npos);
  // one row per trial plus comment and header
  std::size_t rows = 0;
  for (char ch : text) rows += (ch == '\n');
  CHECK(rows == pool.size() + 2);
}
