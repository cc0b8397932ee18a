#include "aircomp/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "aircomp/error.hpp"
#include "aircomp/random.hpp"
#include "aircomp/strings.hpp"
#include "aircomp/validation.hpp"

namespace aircomp::cli {

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw ConfigError("'" + std::string(key) + "': invalid value '" + std::string(value) + "' (" +
                    std::string(why) + ")");
}

double to_double(std::string_view key, std::string_view value) {
  double v = 0.0;
  if (!parse_double(value, v) || !std::isfinite(v)) bad_value(key, value, "expected a number");
  return v;
}

std::size_t to_count(std::string_view key, std::string_view value) {
  std::size_t v = 0;
  if (!parse_int(value, v)) bad_value(key, value, "expected a non-negative integer");
  return v;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(key, value, "expected true or false");
}

std::vector<std::string> list_items(std::string_view value) {
  std::vector<std::string> items;
  for (const std::string& item : split(value, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) items.push_back(t);
  }
  return items;
}

TargetSelector* custom_target(ExperimentConfig& c) {
  for (TargetSelector& t : c.targets) {
    if (t.preset == 0) return &t;
  }
  c.targets.push_back(TargetSelector::custom({}, {}));
  return &c.targets.back();
}

template <typename T>
std::string join(const std::vector<T>& items) {
  std::string out;
  for (std::size_t j = 0; j < items.size(); ++j) {
    if (j > 0) out += ',';
    if constexpr (std::is_same_v<T, double>) {
      out += format_double(items[j]);
    } else {
      out += std::to_string(items[j]);
    }
  }
  return out;
}

}  // namespace

std::vector<std::size_t> parse_axis_values(std::string_view text) {
  const std::string value = trim(text);
  std::vector<std::size_t> out;
  if (value.find(':') != std::string::npos) {
    const auto parts = split(value, ':');
    if (parts.size() < 2 || parts.size() > 3) bad_value("values", value, "expected a:b or a:b:step");
    const std::size_t first = to_count("values", trim(parts[0]));
    const std::size_t last = to_count("values", trim(parts[1]));
    const std::size_t step = parts.size() == 3 ? to_count("values", trim(parts[2])) : 1;
    if (step == 0) bad_value("values", value, "step must be >= 1");
    if (last < first) bad_value("values", value, "range end precedes start");
    for (std::size_t v = first; v <= last; v += step) out.push_back(v);
  } else {
    for (const std::string& item : list_items(value)) out.push_back(to_count("values", item));
  }
  if (out.empty()) bad_value("values", value, "no values");
  return out;
}

void apply_setting(RunManifest& m, std::string_view key_in, std::string_view value_in) {
  std::string key(key_in);
  for (char& ch : key) {
    if (ch == '-') ch = '_';
  }
  const std::string value = trim(value_in);
  ExperimentConfig& c = m.config;

  if (key == "command") {
    if (value != "sweep" && value != "single" && value != "oracle" && value != "validate" &&
        value != "deploy") {
      bad_value(key, value, "unknown command");
    }
    m.command = value;
  } else if (key == "axis") {
    m.axis = parse_axis(value);
  } else if (key == "values") {
    m.values = parse_axis_values(value);
  } else if (key == "out") {
    if (value.empty()) bad_value(key, value, "empty path");
    m.out = value;
  } else if (key == "n") {
    c.n = to_count(key, value);
  } else if (key == "k") {
    c.k = to_count(key, value);
  } else if (key == "r_cov") {
    c.r_cov = to_double(key, value);
  } else if (key == "h") {
    c.h = to_double(key, value);
  } else if (key == "p_watts") {
    c.p_watts = to_double(key, value);
  } else if (key == "p_dbm") {
    c.p_watts = dbm_to_watts(to_double(key, value));
  } else if (key == "noise_var") {
    c.noise_var = to_double(key, value);
  } else if (key == "pilot_noise_var") {
    c.pilot_noise_var = to_double(key, value);
  } else if (key == "noise_dbm") {
    c.noise_var = dbm_to_watts(to_double(key, value));
    c.pilot_noise_var = c.noise_var;
  } else if (key == "zeta") {
    c.zeta = to_double(key, value);
  } else if (key == "g0") {
    c.g0 = to_double(key, value);
  } else if (key == "carrier_hz") {
    const double f = to_double(key, value);
    if (!(f > 0.0)) bad_value(key, value, "must be > 0");
    c.g0 = kSpeedOfLight / (4.0 * std::numbers::pi * f);
  } else if (key == "data_mean") {
    c.data_mean = to_double(key, value);
  } else if (key == "data_var") {
    c.data_var = to_double(key, value);
  } else if (key == "targets" || key == "target") {
    std::vector<TargetSelector> targets;
    const TargetSelector previous_custom = *custom_target(c);
    for (const std::string& item : list_items(value)) {
      if (item == "all") {
        for (int p = 1; p <= 3; ++p) targets.push_back(TargetSelector::from_preset(p));
      } else if (item == "custom") {
        targets.push_back(previous_custom);
      } else if (item == "config-1" || item == "config-2" || item == "config-3") {
        targets.push_back(TargetSelector::from_preset(item.back() - '0'));
      } else {
        bad_value(key, value, "expected config-1, config-2, config-3, custom or all");
      }
    }
    if (targets.empty()) bad_value(key, value, "no targets");
    c.targets = std::move(targets);
  } else if (key == "weights") {
    std::vector<double> w;
    for (const std::string& item : list_items(value)) w.push_back(to_double(key, item));
    custom_target(c)->weights = std::move(w);
  } else if (key == "exponents") {
    std::vector<int> e;
    for (const std::string& item : list_items(value)) {
      int v = 0;
      if (!parse_int(item, v)) bad_value(key, value, "expected integers");
      e.push_back(v);
    }
    custom_target(c)->exponents = std::move(e);
  } else if (key == "policies" || key == "policy") {
    std::vector<Policy> policies;
    for (const std::string& item : list_items(value)) policies.push_back(parse_policy(item));
    if (policies.empty()) bad_value(key, value, "no policies");
    c.policies = std::move(policies);
  } else if (key == "trials") {
    c.trials = to_count(key, value);
  } else if (key == "seed") {
    std::uint64_t s = 0;
    if (!parse_int(value, s)) bad_value(key, value, "expected an unsigned 64-bit integer");
    c.seed = s;
  } else if (key == "redeploy_per_trial" || key == "redeploy") {
    c.redeploy_per_trial = to_bool(key, value);
  } else if (key == "beta_budget") {
    if (value == "none") {
      c.beta_budget.reset();
    } else {
      c.beta_budget = to_double(key, value);
    }
  } else if (key == "oracle_resolution") {
    c.oracle_resolution = to_count(key, value);
  } else if (key == "oracle_trials") {
    c.oracle_trials = to_count(key, value);
  } else if (key == "layout") {
    c.layout = value;
  } else {
    throw ConfigError("unknown key '" + std::string(key_in) + "'");
  }
}

RunManifest parse_manifest(std::string_view text, RunManifest base) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    std::string key;
    std::string value;
    if (!split_key_value(line, key, value)) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply_setting(base, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  RunManifest m;
  m.config = std::move(base);
  return parse_manifest(text, std::move(m)).config;
}

std::string render_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "n = " << c.n << '\n';
  out << "k = " << c.k << '\n';
  out << "r_cov = " << format_double(c.r_cov) << '\n';
  out << "h = " << format_double(c.h) << '\n';
  out << "p_watts = " << format_double(c.p_watts) << '\n';
  out << "noise_var = " << format_double(c.noise_var) << '\n';
  out << "pilot_noise_var = " << format_double(c.pilot_noise_var) << '\n';
  out << "zeta = " << format_double(c.zeta) << '\n';
  out << "g0 = " << format_double(c.g0) << '\n';
  out << "data_mean = " << format_double(c.data_mean) << '\n';
  out << "data_var = " << format_double(c.data_var) << '\n';
  std::vector<std::string> names;
  const TargetSelector* custom = nullptr;
  for (const TargetSelector& t : c.targets) {
    names.push_back(t.name());
    if (t.preset == 0) custom = &t;
  }
  out << "targets = ";
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
  if (custom) {
    out << "weights = " << join(custom->weights) << '\n';
    out << "exponents = " << join(custom->exponents) << '\n';
  }
  out << "policies = ";
  for (std::size_t j = 0; j < c.policies.size(); ++j) {
    out << (j ? "," : "") << policy_name(c.policies[j]);
  }
  out << '\n';
  out << "trials = " << c.trials << '\n';
  out << "seed = " << c.seed << '\n';
  out << "redeploy_per_trial = " << (c.redeploy_per_trial ? "true" : "false") << '\n';
  out << "beta_budget = " << (c.beta_budget ? format_double(*c.beta_budget) : "none") << '\n';
  out << "oracle_resolution = " << c.oracle_resolution << '\n';
  out << "oracle_trials = " << c.oracle_trials << '\n';
  if (!c.layout.empty()) out << "layout = " << c.layout << '\n';
  return out.str();
}

std::string render_manifest(const RunManifest& m) {
  std::ostringstream out;
  out << "# aircomp " << AIRCOMP_VERSION << " run manifest\n";
  out << "command = " << m.command << '\n';
  if (m.command == "sweep") {
    out << "axis = " << axis_name(m.axis) << '\n';
    out << "values = " << join(m.values) << '\n';
  }
  out << "out = " << m.out << '\n';
  out << render_config(m.config);
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_experiment(const RunManifest& m, const ExperimentResult& result, std::ostream& out) {
  const fs::path dir(m.out);
  fs::create_directories(dir);
  std::ostringstream csv;
  write_results_csv(csv, result);
  std::ostringstream summary;
  summary << "seed = " << m.config.seed << '\n';
  write_summary(summary, result);
  write_file(dir / "results.csv", csv.str());
  write_file(dir / "summary.txt", summary.str());
  write_file(dir / "manifest.txt", render_manifest(m));
  out << summary.str();
  out << "\nwrote " << (dir / "results.csv").string() << ", " << (dir / "summary.txt").string()
      << ", " << (dir / "manifest.txt").string() << '\n';
}

int run_oracle(const RunManifest& m, std::ostream& out, const RunOptions& options) {
  const ExperimentConfig& c = m.config;
  std::size_t n = c.n;
  if (!c.layout.empty()) n = load_layout(c.layout).field.size();
  std::ostringstream csv;
  std::ostringstream summary;
  csv << "target,beta,mse,std_err,selected\n";
  summary << "seed = " << c.seed << '\n';
  for (const TargetSelector& selector : c.targets) {
    const TargetSpec spec = selector.resolve(n);
    const GridOracleResult r =
        beta_grid_oracle(c, spec, c.oracle_resolution, c.oracle_trials, c.seed, options);
    for (std::size_t j = 0; j < r.grid.size(); ++j) {
      csv << selector.name() << ',' << format_double(r.grid[j]) << ','
          << format_double(r.grid_mse[j]) << ',' << format_double(r.grid_se[j]) << ','
          << (r.grid[j] == r.beta ? 1 : 0) << '\n';
    }
    ExperimentConfig stats_config = c;
    stats_config.policies = {Policy::kClosedFormEqual};
    const Scenario scenario(stats_config, spec);
    const QuadraticForm exact =
        scenario.fixed_field()
            ? exact_quadratic_form(
                  effective_gain_matrix(*scenario.fixed_field(), scenario.trajectory(),
                                        c.channel()),
                  spec, scenario.moments(), scenario.noise_vars())
            : exact_quadratic_form(scenario.gain_stats(), spec, scenario.moments(),
                                   scenario.noise_vars());
    summary << "target " << selector.name() << ": grid minimizer " << format_double(r.beta)
            << " (mse " << format_double(r.mse) << " +/- " << format_double(r.std_err)
            << "), closed-form equal beta " << format_double(r.center)
            << ", exact-MSE stationary point " << format_double(beta_equal_exact(exact)) << '\n';
  }
  const fs::path dir(m.out);
  fs::create_directories(dir);
  write_file(dir / "oracle.csv", csv.str());
  write_file(dir / "summary.txt", summary.str());
  write_file(dir / "manifest.txt", render_manifest(m));
  out << summary.str();
  return kExitOk;
}

int run_validate(std::ostream& out, std::uint64_t seed) {
  bool ok = true;
  for (const CheckResult& r : run_quick_validation(seed)) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << " (" << r.detail << ")\n";
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitRuntime;
}

int run_deploy(const RunManifest& m, std::ostream& out) {
  const ExperimentConfig& c = m.config;
  Layout layout;
  layout.field = deploy_sensors(c.n, c.r_cov, c.zeta, c.data_mean, c.data_var,
                                mix_seed(c.seed, Stream::kDeployment));
  layout.trajectory = plan_diameter_trajectory(c.k, c.r_cov, c.h);
  const fs::path dir(m.out);
  fs::create_directories(dir);
  save_layout((dir / "layout.txt").string(), layout);
  write_file(dir / "manifest.txt", render_manifest(m));
  out << "wrote " << (dir / "layout.txt").string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const RunManifest& m, std::ostream& out, std::ostream& err, const RunOptions& options) {
  try {
    m.config.validate();
    if (m.command == "validate") return run_validate(out, m.config.seed);
    if (m.command == "deploy") return run_deploy(m, out);
    if (m.command == "oracle") return run_oracle(m, out, options);
    if (m.command == "sweep") {
      if (m.values.empty()) throw ConfigError("sweep needs --values");
      write_experiment(m, sweep(m.config, m.axis, m.values, options), out);
      return kExitOk;
    }
    if (m.command == "single") {
      const std::size_t k = m.config.layout.empty() ? m.config.k
                                                    : load_layout(m.config.layout).trajectory.size();
      ExperimentResult result;
      result.axis = SweepAxis::kK;
      for (const TargetSelector& t : m.config.targets) {
        CellResult cell = estimate_cell(m.config, t, options);
        cell.axis_value = static_cast<double>(k);
        result.cells.push_back(std::move(cell));
      }
      write_experiment(m, result, out);
      return kExitOk;
    }
    throw ConfigError("unknown command '" + m.command + "'");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

// ---------------------------------------------------------------------------

namespace {

struct FlagBinding {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagBinding kFlags[] = {
    {"--n", "n", "number of sensors"},
    {"--k", "k", "number of stop-overs"},
    {"--r-cov", "r_cov", "coverage radius [m]"},
    {"--h,--altitude", "h", "UAV altitude [m]"},
    {"--p-watts", "p_watts", "carrier power [W]"},
    {"--p-dbm", "p_dbm", "carrier power [dBm]"},
    {"--noise-var", "noise_var", "data-flyover noise variance"},
    {"--pilot-noise-var", "pilot_noise_var", "pilot-flyover noise variance"},
    {"--noise-dbm", "noise_dbm", "noise power for both flyovers [dBm]"},
    {"--zeta", "zeta", "reflection coefficient"},
    {"--g0", "g0", "reference amplitude gain at 1 m"},
    {"--carrier-hz", "carrier_hz", "derive g0 = c / (4 pi f)"},
    {"--data-mean", "data_mean", "sensor data mean"},
    {"--data-var", "data_var", "sensor data variance"},
    {"--targets,--target", "targets", "config-1,config-2,config-3,custom or all"},
    {"--weights", "weights", "custom target weights"},
    {"--exponents", "exponents", "custom target exponents"},
    {"--policies,--policy", "policies",
     "closed-form-equal,heuristic,heuristic-equal,benchmark,grid-oracle"},
    {"--trials", "trials", "Monte Carlo trials per cell"},
    {"--seed", "seed", "base seed"},
    {"--redeploy", "redeploy_per_trial", "resample sensor positions every trial (true/false)"},
    {"--beta-budget", "beta_budget", "cap on sum of beta (number or none)"},
    {"--oracle-resolution", "oracle_resolution", "grid points for the oracle"},
    {"--oracle-trials", "oracle_trials", "trials for the oracle"},
    {"--layout", "layout", "pinned layout file"},
    {"--out", "out", "output directory"},
};

struct Subcommand {
  CLI::App* app = nullptr;
  std::string config_path;
  unsigned threads = 1;
  std::vector<std::pair<CLI::Option*, std::string>> bound;
  std::vector<std::string> storage;
};

}  // namespace

int main(int argc, const char* const* argv) {
  CLI::App app{"Mobility-assisted over-the-air computation simulator"};
  app.require_subcommand(1);
  // -h would collide with the altitude flag --h.
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", AIRCOMP_VERSION);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"sweep", "MSE versus K or N for every target and policy"},
      {"single", "one Monte Carlo MSE estimate per target and policy"},
      {"oracle", "equal-beta grid search against Monte Carlo MSE"},
      {"validate", "quick run of the model invariants"},
      {"deploy", "write a seeded sensor layout for pinning"},
  };

  std::vector<Subcommand> subs(commands.size());
  std::string axis_text;
  std::string values_text;
  for (std::size_t s = 0; s < commands.size(); ++s) {
    Subcommand& sub = subs[s];
    sub.app = app.add_subcommand(commands[s].first, commands[s].second);
    sub.app->add_option("--config", sub.config_path, "flat key = value config file");
    sub.app->add_option("--threads", sub.threads, "worker threads (results do not depend on it)");
    sub.storage.resize(std::size(kFlags));
    for (std::size_t f = 0; f < std::size(kFlags); ++f) {
      CLI::Option* opt = sub.app->add_option(kFlags[f].flag, sub.storage[f], kFlags[f].help);
      sub.bound.emplace_back(opt, kFlags[f].key);
    }
    if (commands[s].first == "sweep") {
      sub.app->add_option("--axis", axis_text, "k or n")->required();
      sub.app->add_option("--values", values_text, "a:b, a:b:step or a,b,c")->required();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (std::size_t s = 0; s < subs.size(); ++s) {
    Subcommand& sub = subs[s];
    if (!sub.app->parsed()) continue;
    RunManifest m;
    try {
      if (!sub.config_path.empty()) {
        std::ifstream in(sub.config_path);
        if (!in) throw ConfigError("cannot read config file '" + sub.config_path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        try {
          m = parse_manifest(buffer.str(), m);
        } catch (const ConfigError& e) {
          throw ConfigError(sub.config_path + ": " + e.what());
        }
      }
      m.command = commands[s].first;
      for (std::size_t f = 0; f < sub.bound.size(); ++f) {
        const auto& [opt, key] = sub.bound[f];
        if (opt->count() == 0) continue;
        try {
          apply_setting(m, key, sub.storage[f]);
        } catch (const ConfigError& e) {
          throw ConfigError("flag " + opt->get_name() + ": " + e.what());
        }
      }
      if (m.command == "sweep") {
        try {
          m.axis = parse_axis(axis_text);
          m.values = parse_axis_values(values_text);
        } catch (const ConfigError& e) {
          throw ConfigError(std::string("flag --axis/--values: ") + e.what());
        }
      }
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kExitConfig;
    }
    RunOptions options;
    options.threads = std::max(1u, sub.threads);
    return run(m, std::cout, std::cerr, options);
  }
  return kExitConfig;
}

}  // namespace aircomp::cli
