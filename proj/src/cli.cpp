#include "simout/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "simout/error.hpp"
#include "simout/ingest.hpp"
#include "simout/render.hpp"
#include "simout/stats.hpp"
#include "simout/tables.hpp"

#if defined(_WIN32)
#include <io.h>
#define SIMOUT_ISATTY _isatty(1)
#else
#include <unistd.h>
#define SIMOUT_ISATTY isatty(1)
#endif

namespace simout::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

bool glob_match(const std::string& pattern, const std::string& text) {
  std::size_t p = 0, t = 0;
  std::size_t star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() &&
        (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  }
  out << content;
  if (!out) {
    throw Error(ErrorKind::IoError, "write failed for " + path);
  }
}

RunSet load_setup(const SetupConfig& setup, const RunConfig& config) {
  std::vector<std::string> paths;
  for (const auto& pattern : setup.patterns) {
    const auto expanded = expand_pattern(pattern);
    paths.insert(paths.end(), expanded.begin(), expanded.end());
  }
  RunSet rs = load_run_set(paths, setup.tag, config.delimiter,
                           config.skip_rows);
  if (!config.output_names.empty()) {
    if (config.output_names.size() != rs.n_outputs()) {
      throw Error(ErrorKind::ConfigError,
                  "output_names has " +
                      std::to_string(config.output_names.size()) +
                      " entries but files have " +
                      std::to_string(rs.n_outputs()) + " outputs");
    }
    for (auto& run : rs.runs) run.output_names = config.output_names;
  }
  return rs;
}

std::size_t resolve_output(const RunSet& rs, const std::string& sel) {
  for (std::size_t i = 0; i < rs.n_outputs(); ++i) {
    if (rs.output_names()[i] == sel) return i;
  }
  if (!sel.empty() &&
      std::all_of(sel.begin(), sel.end(),
                  [](unsigned char c) { return std::isdigit(c); })) {
    const std::size_t idx = std::stoul(sel);
    if (idx < rs.n_outputs()) return idx;
  }
  throw Error(ErrorKind::IndexOutOfRange,
              "unknown output '" + sel + "'");
}

std::vector<std::size_t> resolve_outputs(const RunSet& rs,
                                         const std::vector<std::string>& sel) {
  std::vector<std::size_t> out;
  if (sel.empty()) {
    out.resize(rs.n_outputs());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }
  out.reserve(sel.size());
  for (const auto& s : sel) out.push_back(resolve_output(rs, s));
  return out;
}

ExtractorSpec default_extractor(const RunConfig& config, const RunSet& rs) {
  if (config.extractor) return *config.extractor;
  // Without an explicit truncation point, treat the second half of the
  // series as steady state.
  return ExtractorSpec::sixpack(rs.n_iters() / 2);
}

TestSpec make_test_spec(const RunConfig& config, std::size_t m) {
  TestSpec spec;
  spec.alpha = config.alpha;
  spec.variant = config.variant;
  spec.per_fm_tests.clear();
  if (config.tests == "p") {
    spec.per_fm_tests.push_back(TestKind::Parametric);
  } else if (config.tests == "np") {
    spec.per_fm_tests.push_back(TestKind::NonParametric);
  } else {
    std::size_t start = 0;
    const std::string& s = config.tests;
    while (start <= s.size()) {
      const std::size_t comma = s.find(',', start);
      const std::string item =
          s.substr(start, comma == std::string::npos ? std::string::npos
                                                     : comma - start);
      if (item == "p") {
        spec.per_fm_tests.push_back(TestKind::Parametric);
      } else if (item == "np") {
        spec.per_fm_tests.push_back(TestKind::NonParametric);
      } else {
        throw Error(ErrorKind::ConfigError,
                    "bad test token '" + item + "' (expected p or np)");
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (spec.per_fm_tests.size() != m && spec.per_fm_tests.size() != 1) {
      throw Error(ErrorKind::ConfigError,
                  "test list has " +
                      std::to_string(spec.per_fm_tests.size()) +
                      " entries but there are " + std::to_string(m) +
                      " focal measures");
    }
  }
  return spec;
}

std::string out_path(const RunConfig& config, const std::string& name) {
  if (config.out_dir.empty()) return name;
  fs::create_directories(config.out_dir);
  return (fs::path(config.out_dir) / name).string();
}

void emit_dist_plots(const RunConfig& config,
                     const std::vector<std::pair<std::string, FMMatrix>>& fms) {
  if (fms.empty()) return;
  const FMMatrix& first = fms[0].second;
  for (const auto& [tag, fm] : fms) {
    if (fm.fm_names != first.fm_names) {
      throw Error(ErrorKind::FMNameMismatch,
                  "setups '" + first.tag + "' and '" + fm.tag +
                      "' have different focal measures; cannot plot them "
                      "in one grid");
    }
  }
  for (std::size_t j = 0; j < first.m; ++j) {
    std::vector<TaggedSample> samples;
    for (const auto& [tag, fm] : fms) {
      samples.push_back(TaggedSample{tag, fm.fm_column(j)});
    }
    const std::string fm_name = first.fm_names[j].display();
    const FigureGrid grid = dist_plot_per_fm(samples, config.alpha, fm_name);
    emit_svg(grid, out_path(config, "dist_" + fm_name + ".svg"));
    emit_pgf(grid, out_path(config, "dist_" + fm_name + ".tex"));
  }
}

}  // namespace

bool use_color() {
  if (std::getenv("SIMOUT_NO_COLOR") != nullptr) return false;
  return SIMOUT_ISATTY != 0;
}

std::vector<std::string> expand_pattern(const std::string& pattern) {
  if (pattern.find('*') == std::string::npos &&
      pattern.find('?') == std::string::npos) {
    return {pattern};
  }
  const fs::path full(pattern);
  const fs::path dir =
      full.has_parent_path() ? full.parent_path() : fs::path(".");
  const std::string name_pattern = full.filename().string();
  std::vector<std::string> matches;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (glob_match(name_pattern, name)) {
      matches.push_back(entry.path().string());
    }
  }
  if (ec) {
    throw Error(ErrorKind::FileNotFound,
                "cannot list directory " + dir.string());
  }
  std::sort(matches.begin(), matches.end());
  return matches;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::FileNotFound, path);
  }
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ConfigError,
                path + ": " + std::string(e.what()));
  }
  RunConfig config;
  if (doc.contains("setups")) {
    for (const auto& s : doc["setups"]) {
      SetupConfig setup;
      setup.tag = s.at("tag").get<std::string>();
      for (const auto& f : s.at("files")) {
        setup.patterns.push_back(f.get<std::string>());
      }
      config.setups.push_back(std::move(setup));
    }
  }
  if (doc.contains("extractor")) {
    const auto& e = doc["extractor"];
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "sixpack") {
      config.extractor =
          ExtractorSpec::sixpack(e.at("ss_idx").get<std::size_t>());
    } else if (kind == "iters") {
      config.extractor = ExtractorSpec::at_iterations(
          e.at("iters").get<std::vector<std::size_t>>());
    } else {
      throw Error(ErrorKind::ConfigError,
                  "extractor kind must be sixpack or iters");
    }
  }
  if (doc.contains("outputs")) {
    config.outputs = doc["outputs"].get<std::vector<std::string>>();
  }
  if (doc.contains("output_names")) {
    config.output_names =
        doc["output_names"].get<std::vector<std::string>>();
  }
  if (doc.contains("alpha")) config.alpha = doc["alpha"].get<double>();
  if (doc.contains("tests")) config.tests = doc["tests"].get<std::string>();
  if (doc.contains("variant")) {
    const std::string v = doc["variant"].get<std::string>();
    if (v == "pooled") {
      config.variant = TVariant::PooledT;
    } else if (v == "welch") {
      config.variant = TVariant::WelchT;
    } else {
      throw Error(ErrorKind::ConfigError,
                  "variant must be pooled or welch");
    }
  }
  if (doc.contains("out")) config.out_dir = doc["out"].get<std::string>();
  if (doc.contains("format")) {
    config.format = doc["format"].get<std::string>();
  }
  if (doc.contains("plots")) config.plots = doc["plots"].get<bool>();
  if (doc.contains("skip_rows")) {
    config.skip_rows = doc["skip_rows"].get<std::size_t>();
  }
  if (doc.contains("delimiter")) {
    const std::string d = doc["delimiter"].get<std::string>();
    if (d.size() != 1) {
      throw Error(ErrorKind::ConfigError,
                  "delimiter must be a single character");
    }
    config.delimiter = d[0];
  }
  return config;
}

int cmd_synth(SynthModel model, std::size_t runs, std::size_t iters,
              std::uint64_t seed, const std::string& out_dir) {
  const auto paths = synth_write_runs(model, runs, iters, seed, out_dir);
  std::cout << "wrote " << paths.size() << " runs to " << out_dir << "\n";
  return kExitOk;
}

int cmd_plot(const RunConfig& config, const std::string& mode,
             const std::string& output_sel, std::size_t w,
             const std::string& path) {
  if (config.setups.size() != 1) {
    throw Error(ErrorKind::ConfigError, "plot needs exactly one setup");
  }
  const RunSet rs = load_setup(config.setups[0], config);
  const std::size_t output =
      output_sel.empty() ? 0 : resolve_output(rs, output_sel);
  PlotMode plot_mode;
  if (mode == "superimposed") {
    plot_mode = PlotMode::Superimposed;
  } else if (mode == "extremes") {
    plot_mode = PlotMode::Extremes;
  } else if (mode == "movavg") {
    plot_mode = PlotMode::MovingAvg;
  } else {
    throw Error(ErrorKind::ConfigError,
                "mode must be superimposed | extremes | movavg");
  }
  const FigureDoc fig = output_plot(rs, output, plot_mode, w);
  const bool pgf = config.format == "pgf" ||
                   (path.size() >= 4 &&
                    path.compare(path.size() - 4, 4, ".tex") == 0);
  if (pgf) {
    emit_pgf(fig, path);
  } else {
    emit_svg(fig, path);
  }
  std::cout << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_analyze(const RunConfig& config) {
  if (config.setups.empty()) {
    throw Error(ErrorKind::ConfigError, "analyze needs a setup");
  }
  std::vector<std::pair<std::string, FMMatrix>> fms;
  for (const auto& setup : config.setups) {
    const RunSet rs = load_setup(setup, config);
    const ExtractorSpec spec = default_extractor(config, rs);
    const auto outputs = resolve_outputs(rs, config.outputs);
    fms.emplace_back(setup.tag, stats_gather(rs, spec, outputs, setup.tag));
  }

  for (const auto& [tag, fm] : fms) {
    const auto stats = stats_analyze(fm, config.alpha);
    const std::string json = summary_stats_to_json(stats, tag);
    // Machine-readable results go to stdout under the json format; with an
    // output directory they are also written to a file.
    if (config.format == "json") {
      std::cout << json;
    }
    if (!config.out_dir.empty()) {
      write_file(out_path(config, tag + "_analysis.json"), json);
      // gathered focal-measure matrix, for interchange with other tools
      write_file(out_path(config, tag + "_fm.json"), fm_matrix_to_json(fm));
      write_file(out_path(config, tag + "_fm.tsv"), fm_matrix_to_delim(fm));
    }
    if (config.format == "text") {
      std::cout << render_table_text(stats_table_per_setup(stats, tag),
                                     use_color());
    } else if (config.format == "latex") {
      const TableDoc table = stats_table_per_setup(stats, tag);
      const TableDoc dist = dist_table_per_setup(fm, config.alpha);
      if (config.out_dir.empty()) {
        std::cout << render_table_latex(table);
        std::cout << render_table_latex(dist);
      } else {
        emit_table(table, out_path(config, tag + "_stats.tex"));
        emit_table(dist, out_path(config, tag + "_dist.tex"));
      }
    }
  }
  if (config.plots) {
    emit_dist_plots(config, fms);
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& config, bool pairwise) {
  if (config.setups.size() < 2) {
    throw Error(ErrorKind::ConfigError, "compare needs >= 2 setups");
  }
  std::vector<FMMatrix> fms;
  std::vector<std::string> tags;
  for (const auto& setup : config.setups) {
    const RunSet rs = load_setup(setup, config);
    const ExtractorSpec spec = default_extractor(config, rs);
    const auto outputs = resolve_outputs(rs, config.outputs);
    fms.push_back(stats_gather(rs, spec, outputs, setup.tag));
    tags.push_back(setup.tag);
  }
  const TestSpec spec = make_test_spec(config, fms[0].m);
  const CompareResult result = stats_compare(fms, spec);

  const std::string json = compare_result_to_json(result, tags);
  if (config.format == "json") {
    std::cout << json;
  }
  if (!config.out_dir.empty()) {
    write_file(out_path(config, "compare.json"), json);
  }

  if (pairwise) {
    const PairwiseTable table = stats_compare_pw(fms, spec);
    const std::string text = pairwise_table_to_text(table);
    std::cout << text;
    if (!config.out_dir.empty()) {
      write_file(out_path(config, "pairwise.txt"), text);
      write_file(out_path(config, "pairwise.json"),
                 pairwise_table_to_json(table));
    }
  }
  if (config.format == "latex" || config.format == "text") {
    const TableDoc table = stats_compare_table({{tags[0] + " vs " +
                                                     (tags.size() == 2
                                                          ? tags[1]
                                                          : "all"),
                                                 result}});
    if (config.format == "text") {
      std::cout << render_table_text(table, use_color());
    } else if (config.out_dir.empty()) {
      std::cout << render_table_latex(table);
    } else {
      emit_table(table, out_path(config, "compare.tex"));
    }
  }
  if (config.plots) {
    for (std::size_t j = 0; j < fms[0].m; ++j) {
      std::vector<TaggedSample> samples;
      for (std::size_t i = 0; i < fms.size(); ++i) {
        samples.push_back(TaggedSample{tags[i], fms[i].fm_column(j)});
      }
      const std::string fm_name = fms[0].fm_names[j].display();
      try {
        const ComparePlots plots = stats_compare_plot(samples, fm_name);
        FigureGrid grid;
        grid.n_rows = 1;
        grid.n_cols = 2;
        grid.title = fm_name;
        grid.panels = {plots.pdf, plots.cdf};
        emit_svg(grid, out_path(config, "cmp_" + fm_name + ".svg"));
        emit_pgf(grid, out_path(config, "cmp_" + fm_name + ".tex"));
      } catch (const Error&) {
        // Degenerate columns (constant argmin etc.) have no density to draw.
      }
    }
  }
  std::cout << (result.n_failed == 0 ? "aligned" : "MISALIGNED") << ": "
            << result.n_failed << "/" << result.p_values.size()
            << " failed tests\n";
  return result.n_failed == 0 ? kExitOk : kExitMisaligned;
}

}  // namespace simout::cli
