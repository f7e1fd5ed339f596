#include "levyfht/config.hpp"

#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace levyfht {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& value, const std::string& key, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(line, "key '" + key + "': expected a number, got '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& value, const std::string& key, int line) {
  std::int64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    fail(line, "key '" + key + "': expected an integer, got '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& value, const std::string& key, int line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    fail(line, "key '" + key + "': expected an unsigned integer, got '" + value + "'");
  }
  return v;
}

std::vector<int> parse_int_list(const std::string& value, const std::string& key,
                                int line) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(line, "key '" + key + "': empty list entry");
    out.push_back(static_cast<int>(parse_int(item, key, line)));
  }
  if (out.empty()) fail(line, "key '" + key + "': empty list");
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr const char* kRequiredKeysNote =
    "required keys: family (with its parameters) and geometry (with its "
    "parameters); see README for the per-command list";

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::map<std::string, int> seen;  // key -> line, for constraint messages

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool any_key = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string entry = trim(raw);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty()) fail(line, "missing key before '='");
    if (value.empty()) fail(line, "key '" + key + "': missing value");
    if (seen.count(key)) {
      fail(line, "key '" + key + "' already set on line " + std::to_string(seen[key]));
    }
    seen[key] = line;
    any_key = true;

    if (key == "family") {
      if (value != "stable" && value != "tempered-stable" && value != "gamma") {
        fail(line, "key 'family': expected stable, tempered-stable or gamma");
      }
      config.family = value;
    } else if (key == "alpha") {
      config.alpha = parse_double(value, key, line);
    } else if (key == "K") {
      config.K = parse_double(value, key, line);
    } else if (key == "mu") {
      config.mu = parse_double(value, key, line);
    } else if (key == "C") {
      config.C = parse_double(value, key, line);
    } else if (key == "b") {
      config.b = parse_double(value, key, line);
    } else if (key == "geometry") {
      if (value != "halfline" && value != "sphere" && value != "annulus" &&
          value != "poissonballs") {
        fail(line, "key 'geometry': expected halfline, sphere, annulus or poissonballs");
      }
      config.geometry = value;
    } else if (key == "L") {
      config.L = parse_double(value, key, line);
    } else if (key == "L_minus") {
      config.L_minus = parse_double(value, key, line);
    } else if (key == "L_plus") {
      config.L_plus = parse_double(value, key, line);
    } else if (key == "lambda") {
      config.lambda = parse_double(value, key, line);
    } else if (key == "l") {
      config.l = parse_double(value, key, line);
    } else if (key == "box_halfwidth") {
      config.box_halfwidth = parse_double(value, key, line);
    } else if (key == "d") {
      config.d = static_cast<int>(parse_int(value, key, line));
    } else if (key == "dt") {
      config.dt = parse_double(value, key, line);
    } else if (key == "t_max") {
      config.t_max = parse_double(value, key, line);
    } else if (key == "trials") {
      config.trials = parse_int(value, key, line);
    } else if (key == "seed") {
      config.seed = parse_u64(value, key, line);
    } else if (key == "N_list") {
      config.N_list = parse_int_list(value, key, line);
    } else if (key == "k") {
      config.k = static_cast<int>(parse_int(value, key, line));
    } else if (key == "resamples") {
      config.resamples = static_cast<int>(parse_int(value, key, line));
    } else if (key == "output_path") {
      config.output_path = value;
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }

  if (!any_key) {
    throw ConfigError(std::string("config is empty; ") + kRequiredKeysNote);
  }

  // Cross-field constraints, re-validated here with key names and lines.
  const auto at = [&](const char* key) {
    return seen.count(key) ? seen[key] : 0;
  };
  if (config.alpha && !(*config.alpha > 0.0 && *config.alpha < 2.0)) {
    fail(at("alpha"), "key 'alpha': must be in the open interval (0,2)");
  }
  if (config.K && !(*config.K > 0.0)) fail(at("K"), "key 'K': must be > 0");
  if (config.mu && !(*config.mu > 0.0)) fail(at("mu"), "key 'mu': must be > 0");
  if (config.C && !(*config.C > 0.0)) fail(at("C"), "key 'C': must be > 0");
  if (config.b < 0.0) fail(at("b"), "key 'b': must be >= 0");
  if (config.L && !(*config.L > 0.0)) fail(at("L"), "key 'L': must be > 0");
  if (config.L_minus && config.L_plus &&
      !(*config.L_minus > 0.0 && *config.L_minus < *config.L_plus)) {
    fail(at("L_minus"), "keys 'L_minus'/'L_plus': need 0 < L_minus < L_plus");
  }
  if (config.lambda && !(*config.lambda >= 0.0)) {
    fail(at("lambda"), "key 'lambda': must be >= 0");
  }
  if (config.l && !(*config.l > 0.0)) fail(at("l"), "key 'l': must be > 0");
  if (config.box_halfwidth && !(*config.box_halfwidth > 0.0)) {
    fail(at("box_halfwidth"), "key 'box_halfwidth': must be > 0");
  }
  if (config.d && (*config.d < 1 || *config.d > 16)) {
    fail(at("d"), "key 'd': must be in [1,16]");
  }
  if (!(config.dt > 0.0)) fail(at("dt"), "key 'dt': must be > 0");
  if (config.t_max && !(*config.t_max >= config.dt)) {
    fail(at("t_max"), "key 't_max': must be >= dt");
  }
  if (config.trials < 1) fail(at("trials"), "key 'trials': must be >= 1");
  if (config.k < 1) fail(at("k"), "key 'k': must be >= 1");
  if (config.resamples < 1) fail(at("resamples"), "key 'resamples': must be >= 1");
  for (int n : config.N_list) {
    if (n < 1) fail(at("N_list"), "key 'N_list': entries must be >= 1");
  }
  return config;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  if (config.family) out << "family = " << *config.family << "\n";
  if (config.alpha) out << "alpha = " << format_double(*config.alpha) << "\n";
  if (config.K) out << "K = " << format_double(*config.K) << "\n";
  if (config.mu) out << "mu = " << format_double(*config.mu) << "\n";
  if (config.C) out << "C = " << format_double(*config.C) << "\n";
  if (config.b != 0.0) out << "b = " << format_double(config.b) << "\n";
  if (config.geometry) out << "geometry = " << *config.geometry << "\n";
  if (config.L) out << "L = " << format_double(*config.L) << "\n";
  if (config.L_minus) out << "L_minus = " << format_double(*config.L_minus) << "\n";
  if (config.L_plus) out << "L_plus = " << format_double(*config.L_plus) << "\n";
  if (config.lambda) out << "lambda = " << format_double(*config.lambda) << "\n";
  if (config.l) out << "l = " << format_double(*config.l) << "\n";
  if (config.box_halfwidth) {
    out << "box_halfwidth = " << format_double(*config.box_halfwidth) << "\n";
  }
  if (config.d) out << "d = " << *config.d << "\n";
  out << "dt = " << format_double(config.dt) << "\n";
  if (config.t_max) out << "t_max = " << format_double(*config.t_max) << "\n";
  out << "trials = " << config.trials << "\n";
  out << "seed = " << config.seed << "\n";
  if (!config.N_list.empty()) {
    out << "N_list = ";
    for (std::size_t i = 0; i < config.N_list.size(); ++i) {
      out << (i ? "," : "") << config.N_list[i];
    }
    out << "\n";
  }
  out << "k = " << config.k << "\n";
  out << "resamples = " << config.resamples << "\n";
  if (!config.output_path.empty()) {
    out << "output_path = " << config.output_path << "\n";
  }
  return out.str();
}

std::string config_comment(const ExperimentConfig& config) {
  std::string text = config.command.empty() ? "" : "command=" + config.command + " ";
  // the output location is not part of the experiment identity
  ExperimentConfig stripped = config;
  stripped.output_path.clear();
  std::string serialized = serialize_config(stripped);
  for (char& c : serialized) {
    if (c == '\n') c = ' ';
  }
  // collapse "key = value" to "key=value" for a compact single line
  std::string compact;
  compact.reserve(serialized.size());
  for (std::size_t i = 0; i < serialized.size(); ++i) {
    if (serialized[i] == ' ' &&
        ((i + 1 < serialized.size() && serialized[i + 1] == '=') ||
         (i > 0 && serialized[i - 1] == '='))) {
      continue;
    }
    compact += serialized[i];
  }
  while (!compact.empty() && compact.back() == ' ') compact.pop_back();
  return text + compact;
}

SubordinatorSpec make_spec(const ExperimentConfig& config) {
  if (!config.family) throw ConfigError("missing key 'family'");
  try {
    if (*config.family == "stable") {
      if (!config.alpha || !config.K) {
        throw ConfigError("family stable requires keys 'alpha' and 'K'");
      }
      return SubordinatorSpec::stable(*config.alpha, *config.K, config.b);
    }
    if (*config.family == "tempered-stable") {
      if (!config.alpha || !config.K || !config.mu) {
        throw ConfigError("family tempered-stable requires keys 'alpha', 'K' and 'mu'");
      }
      return SubordinatorSpec::tempered_stable(*config.alpha, *config.K,
                                               *config.mu, config.b);
    }
    if (!config.C || !config.mu) {
      throw ConfigError("family gamma requires keys 'C' and 'mu'");
    }
    return SubordinatorSpec::gamma(*config.C, *config.mu, config.b);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid subordinator: ") + e.what());
  }
}

TargetSpec make_target(const ExperimentConfig& config) {
  if (!config.geometry) throw ConfigError("missing key 'geometry'");
  try {
    if (*config.geometry == "halfline") {
      if (!config.L) throw ConfigError("geometry halfline requires key 'L'");
      return TargetSpec(HalfLine{*config.L});
    }
    if (*config.geometry == "sphere") {
      if (!config.L || !config.d) {
        throw ConfigError("geometry sphere requires keys 'L' and 'd'");
      }
      return TargetSpec(SphereExterior{*config.L, *config.d});
    }
    if (*config.geometry == "annulus") {
      if (!config.L_minus || !config.L_plus || !config.d) {
        throw ConfigError("geometry annulus requires keys 'L_minus', 'L_plus' and 'd'");
      }
      return TargetSpec(Annulus{*config.L_minus, *config.L_plus, *config.d});
    }
    if (!config.lambda || !config.l || !config.d || !config.box_halfwidth) {
      throw ConfigError(
          "geometry poissonballs requires keys 'lambda', 'l', 'd' and 'box_halfwidth'");
    }
    return generate_poisson_field(*config.lambda, *config.l, *config.d,
                                  *config.box_halfwidth, config.seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid target: ") + e.what());
  }
}

}  // namespace levyfht
