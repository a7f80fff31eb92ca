#ifndef SIMOUT_MATRIX_HPP_
#define SIMOUT_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace simout {

// One simulation run: rows are iterations, columns are outputs. Storage is
// row-major; all entries are finite (the reader rejects NaN/Inf).
struct OutputMatrix {
  std::vector<double> values;  // n_iters * n_outputs, row-major
  std::size_t n_iters = 0;
  std::size_t n_outputs = 0;
  std::vector<std::string> output_names;  // length n_outputs
  std::string source;                     // file path, empty for synthetic

  double at(std::size_t iter, std::size_t output) const {
    return values[iter * n_outputs + output];
  }
  // One output over all iterations.
  std::vector<double> column(std::size_t output) const {
    std::vector<double> col(n_iters);
    for (std::size_t i = 0; i < n_iters; ++i) col[i] = at(i, output);
    return col;
  }
};

// Replications of one setup. All runs share n_iters and n_outputs.
struct RunSet {
  std::vector<OutputMatrix> runs;
  std::string tag;

  std::size_t n_runs() const { return runs.size(); }
  std::size_t n_iters() const { return runs.front().n_iters; }
  std::size_t n_outputs() const { return runs.front().n_outputs; }
  const std::vector<std::string>& output_names() const {
    return runs.front().output_names;
  }
};

// Auto-generated column names "out0".."out{k-1}".
std::vector<std::string> default_output_names(std::size_t n_outputs);

}  // namespace simout

#endif  // SIMOUT_MATRIX_HPP_
