#ifndef SIMOUT_INGEST_HPP_
#define SIMOUT_INGEST_HPP_

#include <optional>
#include <string>
#include <vector>

#include "simout/matrix.hpp"

namespace simout {

// Reads a delimited text file of simulation output (one row per iteration,
// one column per output). When no delimiter is given it is inferred from the
// leading rows: candidates are tried in the order comma, semicolon, tab,
// space runs, and the first one that actually splits the first data row wins
// (preferring a candidate that splits the second row consistently); a file
// where no candidate splits is a single column. skip_rows drops leading
// lines before parsing.
//
// Throws Error with kind FileNotFound, EmptyFile, RaggedRows (with row) or
// NonNumericToken (with row and column).
OutputMatrix read_output_file(const std::string& path,
                              std::optional<char> delimiter = std::nullopt,
                              std::size_t skip_rows = 0);

// Parses in-memory text with the same contract as read_output_file.
OutputMatrix parse_output_text(const std::string& text,
                               std::optional<char> delimiter = std::nullopt,
                               std::size_t skip_rows = 0,
                               const std::string& source = "<memory>");

// Loads a replication set, enforcing that every file agrees with the first
// in both dimensions. Errors from individual files are annotated with the
// offending path.
RunSet load_run_set(const std::vector<std::string>& paths,
                    const std::string& tag,
                    std::optional<char> delimiter = std::nullopt,
                    std::size_t skip_rows = 0);

// Writes a matrix with the given delimiter, 17 significant digits, LF line
// endings. read_output_file(write_output_file(m)) reproduces m exactly.
void write_output_file(const OutputMatrix& m, const std::string& path,
                       char delimiter = '\t');

std::string format_output_text(const OutputMatrix& m, char delimiter = '\t');

}  // namespace simout

#endif  // SIMOUT_INGEST_HPP_
