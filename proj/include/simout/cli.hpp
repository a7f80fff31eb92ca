#ifndef SIMOUT_CLI_HPP_
#define SIMOUT_CLI_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simout/compare.hpp"
#include "simout/focal.hpp"
#include "simout/plots.hpp"
#include "simout/synth.hpp"

// Command implementations behind the simout binary. Exit codes: 0 success
// (and, for compare, alignment), 1 usage error, 2 data error, 3 comparison
// detected misalignment.
namespace simout::cli {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitMisaligned = 3;

struct SetupConfig {
  std::string tag;
  std::vector<std::string> patterns;  // globs or literal paths
};

// The analysis configuration: a JSON config file and/or flags populate it.
struct RunConfig {
  std::vector<SetupConfig> setups;
  std::optional<ExtractorSpec> extractor;
  std::vector<std::string> outputs;       // subset, names or indices
  std::vector<std::string> output_names;  // rename file columns
  double alpha = 0.05;
  std::string tests = "p";                // "p", "np", or comma list
  TVariant variant = TVariant::PooledT;
  std::string out_dir;
  std::string format = "json";            // json | text | latex
  bool plots = false;
  std::optional<char> delimiter;
  std::size_t skip_rows = 0;
};

// Parses a JSON config file into a RunConfig (missing keys keep defaults).
RunConfig load_config(const std::string& path);

// Shell-style pattern expansion for one path component ('*' and '?'),
// sorted lexicographically. A pattern without wildcards passes through.
std::vector<std::string> expand_pattern(const std::string& pattern);

bool use_color();  // honors SIMOUT_NO_COLOR and TTY detection

int cmd_synth(SynthModel model, std::size_t runs, std::size_t iters,
              std::uint64_t seed, const std::string& out_dir);

int cmd_plot(const RunConfig& config, const std::string& mode,
             const std::string& output_sel, std::size_t w,
             const std::string& out_path);

int cmd_analyze(const RunConfig& config);

int cmd_compare(const RunConfig& config, bool pairwise);

}  // namespace simout::cli

#endif  // SIMOUT_CLI_HPP_
