#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "aircomp/evaluation.hpp"

namespace aircomp::cli {

// Everything that determines a run's outputs. Rendered as the manifest echo
// and accepted back through --config.
struct RunManifest {
  std::string command = "single";  // sweep | single | oracle | validate | deploy
  ExperimentConfig config;
  SweepAxis axis = SweepAxis::kK;
  std::vector<std::size_t> values;  // sweep only
  std::string out = "aircomp_out";

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

// Config file grammar: one `key = value` per line, `#` starts a comment,
// blank lines ignored. Keys are the long flag names with '_' for '-'.
//
// Applies one setting. Throws ConfigError naming the key.
void apply_setting(RunManifest& manifest, std::string_view key, std::string_view value);

// Applies every line of `text` on top of `base`. Errors carry the line number.
RunManifest parse_manifest(std::string_view text, RunManifest base = {});
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});

std::string render_manifest(const RunManifest& manifest);
std::string render_config(const ExperimentConfig& config);

// "a:b" (inclusive), "a:b:step", or "v1,v2,...".
std::vector<std::size_t> parse_axis_values(std::string_view text);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

// Executes a resolved manifest, writing artifacts under manifest.out.
int run(const RunManifest& manifest, std::ostream& out, std::ostream& err,
        const RunOptions& options = {});

// Full command-line entry point.
int main(int argc, const char* const* argv);

}  // namespace aircomp::cli
