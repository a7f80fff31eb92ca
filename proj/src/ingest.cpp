#include "simout/ingest.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>

#include "simout/error.hpp"

namespace simout {

std::vector<std::string> default_output_names(std::size_t n_outputs) {
  std::vector<std::string> names;
  names.reserve(n_outputs);
  for (std::size_t i = 0; i < n_outputs; ++i) {
    names.push_back("out" + std::to_string(i));
  }
  return names;
}

namespace {

bool is_blank(std::string_view line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line,
                                           char delimiter) {
  std::vector<std::string_view> fields;
  if (delimiter == ' ') {
    // Space mode: fields separated by runs of spaces (and stray tabs).
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      fields.push_back(line.substr(i, j - i));
      i = j;
    }
    return fields;
  }
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(delimiter, start);
    std::string_view field = (end == std::string_view::npos)
                                 ? line.substr(start)
                                 : line.substr(start, end - start);
    // Trim spaces around the field so "1, 2" parses.
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
      field.remove_prefix(1);
    }
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) {
      field.remove_suffix(1);
    }
    fields.push_back(field);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return fields;
}

// Candidate order mirrors common simulation output formats. The delimiter
// must actually split the first data row; when two rows are available a
// candidate consistent across both is preferred, so a genuinely ragged file
// is reported as RaggedRows rather than silently re-tokenized.
char infer_delimiter(const std::vector<std::string_view>& lines) {
  static const char candidates[] = {',', ';', '\t', ' '};
  const std::string_view first = lines[0];
  const std::string_view second = lines.size() > 1 ? lines[1] : "";
  for (char d : candidates) {
    const std::size_t c0 = split_fields(first, d).size();
    if (c0 < 2) continue;
    if (lines.size() > 1 && split_fields(second, d).size() != c0) continue;
    return d;
  }
  for (char d : candidates) {
    if (split_fields(first, d).size() >= 2) return d;
  }
  return ',';  // single column; any delimiter parses it
}

double parse_number(std::string_view token, std::size_t row,
                    std::size_t col) {
  auto fail = [&]() -> Error {
    return Error(ErrorKind::NonNumericToken,
                 "token '" + std::string(token) + "' at row " +
                     std::to_string(row) + ", column " + std::to_string(col));
  };
  if (token.empty()) throw fail();
  std::string_view body = token;
  if (body.front() == '+') body.remove_prefix(1);  // from_chars rejects '+'
  if (body.empty()) throw fail();
  double value = 0.0;
  const char* begin = body.data();
  const char* end = begin + body.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) throw fail();
  if (!std::isfinite(value)) throw fail();
  return value;
}

}  // namespace

OutputMatrix parse_output_text(const std::string& text,
                               std::optional<char> delimiter,
                               std::size_t skip_rows,
                               const std::string& source) {
  std::vector<std::string_view> lines = split_lines(text);
  if (skip_rows > 0) {
    lines.erase(lines.begin(),
                lines.begin() +
                    static_cast<std::ptrdiff_t>(
                        std::min(skip_rows, lines.size())));
  }
  while (!lines.empty() && is_blank(lines.back())) lines.pop_back();
  if (lines.empty()) {
    throw Error(ErrorKind::EmptyFile, source + " has no data rows");
  }
  const char delim = delimiter ? *delimiter : infer_delimiter(lines);

  OutputMatrix m;
  m.source = source;
  m.n_iters = lines.size();
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r], delim);
    if (r == 0) {
      m.n_outputs = fields.size();
      if (m.n_outputs == 0) {
        throw Error(ErrorKind::EmptyFile, source + " first row is empty");
      }
      m.values.reserve(m.n_iters * m.n_outputs);
    } else if (fields.size() != m.n_outputs) {
      throw Error(ErrorKind::RaggedRows,
                  source + ": row " + std::to_string(r + 1) + " has " +
                      std::to_string(fields.size()) + " columns, expected " +
                      std::to_string(m.n_outputs));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      m.values.push_back(parse_number(fields[c], r + 1, c + 1));
    }
  }
  m.output_names = default_output_names(m.n_outputs);
  return m;
}

OutputMatrix read_output_file(const std::string& path,
                              std::optional<char> delimiter,
                              std::size_t skip_rows) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorKind::FileNotFound, path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::FileNotFound, path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_output_text(buf.str(), delimiter, skip_rows, path);
}

RunSet load_run_set(const std::vector<std::string>& paths,
                    const std::string& tag, std::optional<char> delimiter,
                    std::size_t skip_rows) {
  if (paths.empty()) {
    throw Error(ErrorKind::EmptyRunSet, "no input files for setup '" + tag +
                                            "'");
  }
  RunSet rs;
  rs.tag = tag;
  rs.runs.reserve(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    OutputMatrix m = read_output_file(paths[i], delimiter, skip_rows);
    if (i > 0 && (m.n_iters != rs.runs[0].n_iters ||
                  m.n_outputs != rs.runs[0].n_outputs)) {
      throw Error(ErrorKind::DimensionMismatch,
                  paths[i] + " is " + std::to_string(m.n_iters) + "x" +
                      std::to_string(m.n_outputs) + " but " + paths[0] +
                      " is " + std::to_string(rs.runs[0].n_iters) + "x" +
                      std::to_string(rs.runs[0].n_outputs));
    }
    rs.runs.push_back(std::move(m));
  }
  return rs;
}

std::string format_output_text(const OutputMatrix& m, char delimiter) {
  std::string out;
  out.reserve(m.values.size() * 20);
  char buf[40];
  for (std::size_t r = 0; r < m.n_iters; ++r) {
    for (std::size_t c = 0; c < m.n_outputs; ++c) {
      if (c > 0) out.push_back(delimiter);
      std::snprintf(buf, sizeof(buf), "%.17g", m.at(r, c));
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

void write_output_file(const OutputMatrix& m, const std::string& path,
                       char delimiter) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  }
  out << format_output_text(m, delimiter);
  if (!out) {
    throw Error(ErrorKind::IoError, "write failed for " + path);
  }
}

}  // namespace simout
