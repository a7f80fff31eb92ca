// simout: analyze and compare time-series output of stochastic simulation
// models. Subcommands: synth, plot, analyze, compare.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simout/cli.hpp"
#include "simout/error.hpp"
#include "simout/focal.hpp"

namespace {

using simout::cli::RunConfig;

// Shared flag wiring for the commands that read run files.
struct CommonOpts {
  std::string config_path;
  std::vector<std::string> files;
  std::string tag = "setup";
  std::vector<std::string> setup_args;  // tag=pattern
  long long ss_idx = -1;
  std::vector<std::size_t> iters;
  std::vector<std::string> outputs;
  std::vector<std::string> output_names;
  double alpha = -1.0;
  std::string tests;
  std::string variant;
  std::string format;
  std::string out_dir;
  bool plots = false;
  long long skip_rows = -1;
  std::string delim;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool multi_setup) {
  cmd->add_option("--config", opts.config_path,
                  "JSON config file (flags override it)");
  if (multi_setup) {
    cmd->add_option("--setup", opts.setup_args,
                    "setup as tag=glob (repeatable)");
  }
  cmd->add_option("--files", opts.files, "input files or globs");
  cmd->add_option("--tag", opts.tag, "setup label for --files");
  cmd->add_option("--ss-idx", opts.ss_idx,
                  "steady-state truncation iteration (sixpack extractor)");
  cmd->add_option("--iters", opts.iters,
                  "extract values at these iterations instead");
  cmd->add_option("--outputs", opts.outputs,
                  "subset of outputs (names or indices)");
  cmd->add_option("--output-names", opts.output_names,
                  "names for the file columns");
  cmd->add_option("--alpha", opts.alpha, "significance level (default 0.05)");
  cmd->add_option("--tests", opts.tests,
                  "p | np | comma list per focal measure");
  cmd->add_option("--variant", opts.variant, "pooled | welch");
  cmd->add_option("--format", opts.format, "json | text | latex");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_flag("--plots", opts.plots, "emit SVG/PGF figures");
  cmd->add_option("--skip-rows", opts.skip_rows,
                  "drop this many leading rows from each file");
  cmd->add_option("--delim", opts.delim,
                  "field delimiter (default: inferred)");
}

RunConfig build_config(const CommonOpts& opts) {
  RunConfig config;
  if (!opts.config_path.empty()) {
    config = simout::cli::load_config(opts.config_path);
  }
  for (const auto& arg : opts.setup_args) {
    const std::size_t eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= arg.size()) {
      throw simout::Error(simout::ErrorKind::ConfigError,
                          "--setup expects tag=glob, got '" + arg + "'");
    }
    config.setups.push_back({arg.substr(0, eq), {arg.substr(eq + 1)}});
  }
  if (!opts.files.empty()) {
    config.setups.push_back({opts.tag, opts.files});
  }
  if (!opts.iters.empty()) {
    config.extractor = simout::ExtractorSpec::at_iterations(opts.iters);
  } else if (opts.ss_idx >= 0) {
    config.extractor = simout::ExtractorSpec::sixpack(
        static_cast<std::size_t>(opts.ss_idx));
  }
  if (!opts.outputs.empty()) config.outputs = opts.outputs;
  if (!opts.output_names.empty()) config.output_names = opts.output_names;
  if (opts.alpha >= 0.0) config.alpha = opts.alpha;
  if (!opts.tests.empty()) config.tests = opts.tests;
  if (!opts.variant.empty()) {
    if (opts.variant == "pooled") {
      config.variant = simout::TVariant::PooledT;
    } else if (opts.variant == "welch") {
      config.variant = simout::TVariant::WelchT;
    } else {
      throw simout::Error(simout::ErrorKind::ConfigError,
                          "--variant must be pooled or welch");
    }
  }
  if (!opts.format.empty()) config.format = opts.format;
  if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
  if (opts.plots) config.plots = true;
  if (opts.skip_rows >= 0) {
    config.skip_rows = static_cast<std::size_t>(opts.skip_rows);
  }
  if (!opts.delim.empty()) {
    if (opts.delim == "tab" || opts.delim == "\\t") {
      config.delimiter = '\t';
    } else if (opts.delim == "space") {
      config.delimiter = ' ';
    } else if (opts.delim.size() == 1) {
      config.delimiter = opts.delim[0];
    } else {
      throw simout::Error(simout::ErrorKind::ConfigError,
                          "--delim must be one character, tab or space");
    }
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statistical analysis of stochastic simulation output"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand(
      "synth", "generate synthetic simulation output fixtures");
  std::string model_name = "pp";
  std::size_t runs = 30, s_iters = 100;
  std::uint64_t seed = 1;
  std::string synth_out = "synth_out";
  synth->add_option("--model", model_name, "logistic | pp");
  synth->add_option("--runs", runs, "number of replications");
  synth->add_option("--iters", s_iters, "iterations per run");
  synth->add_option("--seed", seed, "random seed");
  synth->add_option("--out", synth_out, "output directory");

  // plot
  auto* plot = app.add_subcommand("plot", "plot output dynamics");
  CommonOpts plot_opts;
  std::string mode = "superimposed";
  std::string output_sel;
  std::size_t window = 0;
  std::string plot_out = "plot.svg";
  add_common(plot, plot_opts, false);
  plot->add_option("--mode", mode, "superimposed | extremes | movavg");
  plot->add_option("--output", output_sel, "output column (name or index)");
  plot->add_option("--w", window, "moving-average window");
  plot->add_option("--out-file", plot_out, "figure path (.svg or .tex)");

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "extract focal measures and summarize their distributions");
  CommonOpts analyze_opts;
  add_common(analyze, analyze_opts, true);
  bool analyze_latex = false;
  analyze->add_flag("--latex", analyze_latex, "same as --format latex");

  // compare
  auto* compare = app.add_subcommand(
      "compare", "statistically compare implementations (docking)");
  CommonOpts compare_opts;
  add_common(compare, compare_opts, true);
  bool pairwise = false, compare_latex = false;
  compare->add_flag("--pairwise", pairwise,
                    "emit the pairwise failed-test table");
  compare->add_flag("--latex", compare_latex, "same as --format latex");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : simout::cli::kExitUsage;
  }

  try {
    if (synth->parsed()) {
      return simout::cli::cmd_synth(
          simout::synth_model_from_name(model_name), runs, s_iters, seed,
          synth_out);
    }
    if (plot->parsed()) {
      return simout::cli::cmd_plot(build_config(plot_opts), mode, output_sel,
                                   window, plot_out);
    }
    if (analyze->parsed()) {
      RunConfig config = build_config(analyze_opts);
      if (analyze_latex) config.format = "latex";
      return simout::cli::cmd_analyze(config);
    }
    if (compare->parsed()) {
      RunConfig config = build_config(compare_opts);
      if (compare_latex) config.format = "latex";
      return simout::cli::cmd_compare(config, pairwise);
    }
  } catch (const simout::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == simout::ErrorKind::ConfigError
               ? simout::cli::kExitUsage
               : simout::cli::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return simout::cli::kExitData;
  }
  return simout::cli::kExitUsage;
}
