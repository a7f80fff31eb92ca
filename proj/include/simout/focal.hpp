#ifndef SIMOUT_FOCAL_HPP_
#define SIMOUT_FOCAL_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simout/matrix.hpp"

namespace simout {

// Which statistical summaries to pull from each output series.
struct ExtractorSpec {
  enum class Kind { SteadyStateSixpack, AtIterations };
  Kind kind = Kind::SteadyStateSixpack;
  std::size_t ss_idx = 0;            // SteadyStateSixpack: truncation point
  std::vector<std::size_t> iters;    // AtIterations: strictly increasing

  static ExtractorSpec sixpack(std::size_t ss_idx);
  static ExtractorSpec at_iterations(std::vector<std::size_t> iters);

  std::size_t summaries_per_output() const {
    return kind == Kind::SteadyStateSixpack ? 6 : iters.size();
  }
  std::vector<std::string> summary_names() const;
};

// max, first iteration of max, min, first iteration of min, steady-state
// mean and steady-state sample standard deviation over [ss_idx, end).
struct Sixpack {
  double max;
  double argmax;  // 0-based iteration index, stored as real
  double min;
  double argmin;
  double ss_mean;
  double ss_std;

  std::array<double, 6> as_array() const {
    return {max, argmax, min, argmin, ss_mean, ss_std};
  }
};

Sixpack extract_sixpack(std::span<const double> series, std::size_t ss_idx);

std::vector<double> extract_at_iters(std::span<const double> series,
                                     std::span<const std::size_t> iters);

// One focal measure name: which output it came from and which summary.
struct FmName {
  std::string output;
  std::string summary;
  std::string display() const { return output + "." + summary; }
  bool operator==(const FmName&) const = default;
};

// n runs x m focal measures, plus the metadata the table/figure layers need.
struct FMMatrix {
  std::vector<double> data;  // row-major n x m
  std::size_t n = 0;
  std::size_t m = 0;
  std::string tag;
  std::vector<FmName> fm_names;  // length m, output-major order

  double at(std::size_t run, std::size_t fm) const {
    return data[run * m + fm];
  }
  // One focal measure over all runs.
  std::vector<double> fm_column(std::size_t fm) const {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = at(i, fm);
    return col;
  }
  std::optional<std::size_t> find_fm(const std::string& display_name) const;
};

// Extracts the focal-measure matrix for a replication set: row i holds the
// concatenated summaries of run i over the selected outputs (all outputs by
// default), in output-major order.
FMMatrix stats_gather(const RunSet& rs, const ExtractorSpec& spec,
                      const std::vector<std::size_t>& outputs,
                      const std::string& tag);
FMMatrix stats_gather(const RunSet& rs, const ExtractorSpec& spec,
                      const std::string& tag);

// Interchange formats: JSON document {tag, fm_names, data} and delimited
// text (header of display names, then one row per run).
std::string fm_matrix_to_json(const FMMatrix& fm);
FMMatrix fm_matrix_from_json(const std::string& json_text);
std::string fm_matrix_to_delim(const FMMatrix& fm, char delimiter = '\t');

}  // namespace simout

#endif  // SIMOUT_FOCAL_HPP_
