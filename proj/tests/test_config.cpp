#include "levyfht/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

using namespace levyfht;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a minimal half-line study parses") {
  const auto config = parse_config(
      "family = stable\nalpha = 1.5\nK = 1\ngeometry = halfline\nL = 1\n");
  CHECK(config.family == "stable");
  CHECK(config.alpha == 1.5);
  CHECK(config.K == 1.0);
  CHECK(config.geometry == "halfline");
  CHECK(config.L == 1.0);
  // defaults mirror the reference simulation setup
  CHECK(config.dt == 1e-5);
  CHECK(config.trials == 100000);
  CHECK(config.seed == 0);
  const auto spec = make_spec(config);
  CHECK(spec.family == SubordinatorFamily::kStable);
  const auto target = make_target(config);
  CHECK(target.dim() == 1);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
  const auto config = parse_config(
      "# study\n\n  family=gamma  # inline\nC = 2.0\nmu = 0.5\n"
      "geometry = sphere\nL = 1\nd = 3\nt_max = 10\n");
  CHECK(config.family == "gamma");
  CHECK(config.C == 2.0);
  CHECK(config.t_max == 10.0);
}

TEST_CASE("errors carry key names and line numbers") {
  CHECK(message_of("alpha = 2.5\n").find("line 1") != std::string::npos);
  CHECK(message_of("alpha = 2.5\n").find("alpha") != std::string::npos);
  CHECK(message_of("alpha = 2.5\n").find("(0,2)") != std::string::npos);

  CHECK(message_of("family = stable\nwhat = 1\n").find("line 2") != std::string::npos);
  CHECK(message_of("family = stable\nwhat = 1\n").find("unknown key 'what'") !=
        std::string::npos);

  CHECK(message_of("K = fast\n").find("expected a number") != std::string::npos);
  CHECK(message_of("family = weird\n").find("family") != std::string::npos);
  CHECK(message_of("K = 1\nK = 2\n").find("already set") != std::string::npos);
  CHECK(message_of("L_minus = 2\nL_plus = 1\n").find("L_minus") != std::string::npos);

  // empty file: the error lists what is required
  const std::string empty_message = message_of("# nothing here\n");
  CHECK(empty_message.find("required keys") != std::string::npos);
  CHECK(empty_message.find("family") != std::string::npos);
  CHECK(empty_message.find("geometry") != std::string::npos);
}

TEST_CASE("config round-trips through serialization") {
  const auto config = parse_config(
      "family = tempered-stable\nalpha = 0.737\nK = 2.25\nmu = 1e-3\n"
      "geometry = annulus\nL_minus = 1\nL_plus = 2.5\nd = 3\n"
      "dt = 0.0001\nt_max = 12\ntrials = 777\nseed = 99\n"
      "N_list = 10,100,1000\nk = 2\nresamples = 500\noutput_path = out.csv\n");
  const auto again = parse_config(serialize_config(config));
  CHECK(again == config);
}

TEST_CASE("make_spec and make_target name missing keys") {
  CHECK_THROWS_WITH_AS(make_spec(parse_config("geometry = halfline\nL = 1\n")),
                       "missing key 'family'", ConfigError);
  CHECK_THROWS_AS(make_spec(parse_config("family = stable\nK = 1\n")), ConfigError);
  CHECK_THROWS_AS(make_target(parse_config("family = stable\nalpha = 1\nK = 1\n")),
                  ConfigError);
  CHECK_THROWS_AS(
      make_target(parse_config("geometry = sphere\nL = 1\n")),  // missing d
      ConfigError);
}

TEST_CASE("rate command prints closed form and quadrature") {
  const auto dir = std::filesystem::temp_directory_path() / "levyfht_test_rate";
  std::filesystem::create_directories(dir);
  auto config = parse_config(
      "family = stable\nalpha = 1\nK = 1\ngeometry = sphere\nL = 1\nd = 3\n");
  config.command = "rate";
  config.output_path = (dir / "rate.csv").string();
  REQUIRE(run_command(config) == 0);
  const std::string text = slurp(dir / "rate.csv");
  CHECK(text.find("method,rho,abs_error_estimate\n") != std::string::npos);
  CHECK(text.find("closed_form,1.27323954473516") != std::string::npos);
  const auto qpos = text.find("quadrature,");
  REQUIRE(qpos != std::string::npos);
  const double quad_rho = std::stod(text.substr(qpos + 11));
  CHECK(std::abs(quad_rho - 1.2732395447351627) < 1e-6 * 1.2732395447351627);
  CHECK(text.find("# command=rate") == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("fht and ks-sweep commands are deterministic across thread counts") {
  const auto dir = std::filesystem::temp_directory_path() / "levyfht_test_det";
  std::filesystem::create_directories(dir);
  auto config = parse_config(
      "family = stable\nalpha = 1.5\nK = 1\ngeometry = halfline\nL = 1\n"
      "dt = 0.001\nt_max = 2\ntrials = 4000\nseed = 7\nN_list = 10,50\n"
      "resamples = 400\n");
  config.command = "fht";
  config.output_path = (dir / "a.csv").string();
  REQUIRE(run_command(config, 1) == 0);
  config.output_path = (dir / "b.csv").string();
  REQUIRE(run_command(config, 2) == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.csv").find("trial,fht,censored") != std::string::npos);

  config.command = "ks-sweep";
  config.output_path = (dir / "k1.csv").string();
  REQUIRE(run_command(config, 1) == 0);
  config.output_path = (dir / "k2.csv").string();
  REQUIRE(run_command(config, 2) == 0);
  const std::string sweep = slurp(dir / "k1.csv");
  CHECK(sweep == slurp(dir / "k2.csv"));
  CHECK(sweep.find("N,k,rho,ks\n") != std::string::npos);
  // the comment line records the config and seed
  CHECK(sweep.find("seed=7") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("moments, extremes and poisson-field commands emit their schemas") {
  const auto dir = std::filesystem::temp_directory_path() / "levyfht_test_cmd";
  std::filesystem::create_directories(dir);
  auto config = parse_config(
      "family = stable\nalpha = 1\nK = 1\ngeometry = sphere\nL = 1\nd = 3\n"
      "dt = 0.001\nt_max = 5\ntrials = 3000\nseed = 1\nN_list = 20\n"
      "resamples = 300\n");
  config.command = "moments";
  config.output_path = (dir / "m.csv").string();
  REQUIRE(run_command(config) == 0);
  CHECK(slurp(dir / "m.csv").find("N,abs_err_mean,abs_err_std\n") != std::string::npos);

  config.command = "extremes";
  config.output_path = (dir / "h.csv").string();
  REQUIRE(run_command(config) == 0);
  const std::string hist = slurp(dir / "h.csv");
  CHECK(hist.find("z,density\n") != std::string::npos);
  // 50 bins plus comment and header
  CHECK(std::count(hist.begin(), hist.end(), '\n') == 52);

  // extremes needs a single N
  config.N_list = {10, 20};
  CHECK(run_command(config) == 1);

  auto field = parse_config(
      "geometry = poissonballs\nlambda = 0.2\nl = 0.3\nd = 2\n"
      "box_halfwidth = 5\nseed = 3\n");
  field.command = "poisson-field";
  field.output_path = (dir / "f.csv").string();
  REQUIRE(run_command(field) == 0);
  CHECK(slurp(dir / "f.csv").find("x1,x2\n") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes distinguish config errors") {
  auto config = parse_config("family = stable\nalpha = 1\nK = 1\n");
  config.command = "fht";  // no geometry
  CHECK(run_command(config) == 1);
  config.command = "nonsense";
  CHECK(run_command(config) == 1);
}
