// Command-line front end: parses a flat key = value experiment config and
// runs one of the commands documented in the README.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "levyfht/config.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--config", opts->config_path, "experiment config file")
      ->required();
  cmd->add_option("--seed", opts->seed, "override the config seed")
      ->each([opts](const std::string&) { opts->seed_given = true; });
  cmd->add_option("--threads", opts->threads, "worker threads (0 = default)");
  cmd->add_option("--out", opts->out_path, "override output_path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo first-hitting statistics of subordinate Brownian motion"};
  app.require_subcommand(1);

  CommonOptions opts;
  const char* commands[] = {"rate",    "fht",     "extremes",
                            "ks-sweep", "moments", "poisson-field"};
  const char* descriptions[] = {
      "print the hitting rate rho (closed form and quadrature)",
      "simulate a first-hitting-time pool, CSV trial,fht,censored",
      "rescaled T_{k,N} histogram, CSV z,density",
      "KS distance to the Erlang limit per N, CSV N,k,rho,ks",
      "moment errors per N, CSV N,abs_err_mean,abs_err_std",
      "generate and save a Poisson ball field, CSV x1,...,xd"};
  for (int i = 0; i < 6; ++i) {
    add_common(app.add_subcommand(commands[i], descriptions[i]), &opts);
  }

  CLI11_PARSE(app, argc, argv);

  std::ifstream file(opts.config_path);
  if (!file) {
    std::fprintf(stderr, "error: cannot read config file '%s'\n",
                 opts.config_path.c_str());
    return 1;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();

  levyfht::ExperimentConfig config;
  try {
    config = levyfht::parse_config(buffer.str());
  } catch (const levyfht::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  config.command = app.get_subcommands().front()->get_name();
  if (opts.seed_given) config.seed = opts.seed;
  if (!opts.out_path.empty()) config.output_path = opts.out_path;

  return levyfht::run_command(config, opts.threads);
}
