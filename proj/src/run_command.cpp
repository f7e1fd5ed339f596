#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include "levyfht/config.hpp"
#include "levyfht/extremes.hpp"
#include "levyfht/rates.hpp"
#include "levyfht/simulate.hpp"

namespace levyfht {

namespace {

struct OutputSink {
  std::ofstream file;
  std::ostream* stream = nullptr;

  explicit OutputSink(const std::string& path) {
    if (path.empty()) {
      stream = &std::cout;
      return;
    }
    file.open(path, std::ios::binary);  // binary: byte-identical reruns
    if (!file) throw ConfigError("cannot open output_path '" + path + "'");
    stream = &file;
  }
  std::ostream& out() { return *stream; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// rho for the configured experiment: closed form when the pair has one,
// quadrature otherwise, step approximation for Poisson ball fields.
RateResult resolve_rate(const ExperimentConfig& config,
                        const SubordinatorSpec& spec, const TargetSpec& target) {
  if (std::holds_alternative<PoissonBalls>(target.geometry())) {
    const auto& pb = std::get<PoissonBalls>(target.geometry());
    return {rate_poisson_approx(spec, pb.lambda, pb.l, pb.d),
            RateMethod::kApproximation, 0.0};
  }
  if (const auto closed = rate_closed_form(spec, target)) return *closed;
  (void)config;
  return rate_quadrature(spec, target);
}

double resolve_t_max(const ExperimentConfig& config, double rho) {
  if (config.t_max) return *config.t_max;
  // Default horizon: rho * t_max >= 1e3, so the mass lost to censoring is
  // negligible for the extreme statistics.
  return 1e3 / rho;
}

SimConfig make_sim_config(const ExperimentConfig& config,
                          const SubordinatorSpec& spec, const TargetSpec& target,
                          double rho) {
  SimConfig sim{config.dt, resolve_t_max(config, rho), config.trials,
                config.seed, spec, target};
  sim.validate();
  return sim;
}

int cmd_rate(const ExperimentConfig& config, OutputSink& sink) {
  const SubordinatorSpec spec = make_spec(config);
  const TargetSpec target = make_target(config);
  sink.out() << "# " << config_comment(config) << "\n";
  sink.out() << "method,rho,abs_error_estimate\n";
  if (std::holds_alternative<PoissonBalls>(target.geometry())) {
    const auto& pb = std::get<PoissonBalls>(target.geometry());
    const double rho = rate_poisson_approx(spec, pb.lambda, pb.l, pb.d);
    sink.out() << "approximation," << fmt(rho) << ",0\n";
    return 0;
  }
  const auto closed = rate_closed_form(spec, target);
  if (closed) {
    sink.out() << "closed_form," << fmt(closed->rho) << ",0\n";
  }
  const RateResult quad = rate_quadrature(spec, target);
  sink.out() << "quadrature," << fmt(quad.rho) << ","
             << fmt(quad.abs_error_estimate) << "\n";
  if (closed) {
    const double rel = std::abs(closed->rho - quad.rho) / closed->rho;
    if (rel > 1e-6) {
      std::fprintf(stderr,
                   "warning: closed form and quadrature disagree by %.3g relative\n",
                   rel);
    }
  }
  return 0;
}

int cmd_fht(const ExperimentConfig& config, OutputSink& sink, int threads) {
  const SubordinatorSpec spec = make_spec(config);
  const TargetSpec target = make_target(config);
  const RateResult rate = resolve_rate(config, spec, target);
  const SimConfig sim = make_sim_config(config, spec, target, rate.rho);
  const auto pool = run_pool(sim, threads);
  write_pool_csv(sink.out(), pool, config_comment(config));
  return 0;
}

int cmd_extreme_family(const ExperimentConfig& config, OutputSink& sink,
                       int threads) {
  if (config.N_list.empty()) {
    throw ConfigError("command '" + config.command + "' requires key 'N_list'");
  }
  if (config.command == "extremes" && config.N_list.size() != 1) {
    throw ConfigError(
        "command 'extremes' writes one histogram; give a single-entry N_list");
  }
  const SubordinatorSpec spec = make_spec(config);
  const TargetSpec target = make_target(config);
  const RateResult rate = resolve_rate(config, spec, target);
  const SimConfig sim = make_sim_config(config, spec, target, rate.rho);
  const auto pool = run_pool(sim, threads);
  const auto values = fht_values(pool);

  std::vector<ExtremeReport> reports;
  reports.reserve(config.N_list.size());
  for (int N : config.N_list) {
    reports.push_back(build_extreme_report(values, N, config.k, rate.rho,
                                           config.resamples, config.seed,
                                           threads));
  }
  const std::string comment = config_comment(config);
  if (config.command == "ks-sweep") {
    write_ks_csv(sink.out(), reports, comment);
  } else if (config.command == "moments") {
    write_moments_csv(sink.out(), reports, comment);
  } else {
    write_histogram_csv(sink.out(), reports.front(), comment);
  }
  return 0;
}

int cmd_poisson_field(const ExperimentConfig& config, OutputSink& sink) {
  if (!config.geometry || *config.geometry != "poissonballs") {
    throw ConfigError("command 'poisson-field' requires geometry = poissonballs");
  }
  const TargetSpec target = make_target(config);
  sink.out() << "# " << config_comment(config) << "\n";
  write_centers_csv(sink.out(), std::get<PoissonBalls>(target.geometry()));
  return 0;
}

}  // namespace

int run_command(const ExperimentConfig& config, int threads) {
  try {
    OutputSink sink(config.output_path);
    if (config.command == "rate") return cmd_rate(config, sink);
    if (config.command == "fht") return cmd_fht(config, sink, threads);
    if (config.command == "extremes" || config.command == "ks-sweep" ||
        config.command == "moments") {
      return cmd_extreme_family(config, sink, threads);
    }
    if (config.command == "poisson-field") return cmd_poisson_field(config, sink);
    std::fprintf(stderr, "error: unknown command '%s'\n", config.command.c_str());
    return 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  }
}

}  // namespace levyfht
