#include "levyfht/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <variant>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "levyfht/rng.hpp"

namespace levyfht {

namespace {

template <class Geom>
bool geom_contains(const Geom& geom, const TargetSpec& target,
                   std::span<const double> x) {
  if constexpr (std::is_same_v<Geom, HalfLine>) {
    return x[0] <= -geom.L;
  } else if constexpr (std::is_same_v<Geom, SphereExterior>) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return r2 >= geom.L * geom.L;
  } else if constexpr (std::is_same_v<Geom, Annulus>) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return r2 >= geom.L_minus * geom.L_minus && r2 <= geom.L_plus * geom.L_plus;
  } else {
    return contains(target, x);
  }
}

}  // namespace

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
  if (!(dt <= t_max)) throw std::invalid_argument("SimConfig: need dt <= t_max");
  if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
}

FhtSample simulate_fht(const SimConfig& config, std::int64_t trial_index) {
  config.validate();
  if (trial_index < 0 || trial_index >= config.trials) {
    throw std::out_of_range("simulate_fht: trial_index out of range");
  }
  Rng rng(config.seed, RngDomain::kTrials,
          static_cast<std::uint64_t>(trial_index));
  const IncrementSampler increment(config.spec, config.dt);
  const int d = config.target.dim();
  const auto n_steps =
      static_cast<std::uint64_t>(std::floor(config.t_max / config.dt + 1e-9));

  return std::visit(
      [&](const auto& geom) -> FhtSample {
        using G = std::decay_t<decltype(geom)>;
        double pos_buf[16];
        for (int j = 0; j < d; ++j) pos_buf[j] = config.target.start()[j];
        const std::span<const double> pos(pos_buf, static_cast<std::size_t>(d));
        bool left_box = false;
        for (std::uint64_t k = 1; k <= n_steps; ++k) {
          const double ds = increment(rng);
          const double sd = std::sqrt(2.0 * ds);
          for (int j = 0; j < d; ++j) pos_buf[j] += sd * rng.normal();
          if constexpr (std::is_same_v<G, PoissonBalls>) {
            for (int j = 0; j < d; ++j) {
              if (std::abs(pos_buf[j]) > geom.box_halfwidth) left_box = true;
            }
          }
          if (geom_contains(geom, config.target, pos)) {
            return {static_cast<double>(k) * config.dt, k, false, left_box};
          }
        }
        return {kCensored, n_steps, true, left_box};
      },
      config.target.geometry());
}

namespace {

void warn_about_pool(const SimConfig& config, std::span<const FhtSample> pool) {
  const double censored = censored_fraction(pool);
  if (censored > 0.5) {
    std::fprintf(stderr,
                 "warning: %.1f%% of trials censored at t_max=%g; "
                 "extreme statistics may be unreliable\n",
                 100.0 * censored, config.t_max);
  }
  std::size_t exits = 0;
  for (const FhtSample& s : pool) exits += s.left_box;
  if (exits > 0) {
    std::fprintf(stderr,
                 "warning: %zu trials left the Poisson field box; "
                 "increase box_halfwidth\n",
                 exits);
  }
}

}  // namespace

std::vector<FhtSample> run_pool(const SimConfig& config, int threads) {
  config.validate();
  std::vector<FhtSample> pool(static_cast<std::size_t>(config.trials));
#ifdef _OPENMP
  const int n = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(n)
  for (std::int64_t i = 0; i < config.trials; ++i) {
    pool[static_cast<std::size_t>(i)] = simulate_fht(config, i);
  }
#else
  (void)threads;
  for (std::int64_t i = 0; i < config.trials; ++i) {
    pool[static_cast<std::size_t>(i)] = simulate_fht(config, i);
  }
#endif
  warn_about_pool(config, pool);
  return pool;
}

std::vector<FhtSample> run_pool_serial(const SimConfig& config) {
  config.validate();
  std::vector<FhtSample> pool(static_cast<std::size_t>(config.trials));
  for (std::int64_t i = 0; i < config.trials; ++i) {
    pool[static_cast<std::size_t>(i)] = simulate_fht(config, i);
  }
  warn_about_pool(config, pool);
  return pool;
}

double censored_fraction(std::span<const FhtSample> pool) {
  if (pool.empty()) return 0.0;
  std::size_t censored = 0;
  for (const FhtSample& s : pool) censored += s.censored;
  return static_cast<double>(censored) / static_cast<double>(pool.size());
}

std::vector<double> fht_values(std::span<const FhtSample> pool) {
  std::vector<double> values(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    values[i] = pool[i].censored ? kCensored : pool[i].value;
  }
  return values;
}

void write_pool_csv(std::ostream& out, std::span<const FhtSample> pool,
                    const std::string& config_comment) {
  if (!config_comment.empty()) out << "# " << config_comment << "\n";
  out << "trial,fht,censored\n";
  char buf[32];
  for (std::size_t i = 0; i < pool.size(); ++i) {
    out << i << ",";
    if (!pool[i].censored) {
      std::snprintf(buf, sizeof buf, "%.17g", pool[i].value);
      out << buf;
    }
    out << "," << (pool[i].censored ? 1 : 0) << "\n";
  }
}

}  // namespace levyfht
