#include "simout/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "simout/error.hpp"

namespace simout {

namespace {

// Escape characters LaTeX treats specially in table text.
std::string latex_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\textbackslash{}"; break;
      case '{': out += "\\{"; break;
      case '}': out += "\\}"; break;
      case '_': out += "\\_"; break;
      case '%': out += "\\%"; break;
      case '&': out += "\\&"; break;
      case '#': out += "\\#"; break;
      case '$': out += "\\$"; break;
      case '^': out += "\\textasciicircum{}"; break;
      case '~': out += "\\textasciitilde{}"; break;
      case '<': out += "\\textless{}"; break;
      case '>': out += "\\textgreater{}"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

Cell text_cell(const std::string& s) {
  return Cell{s, latex_escape(s), false, false};
}

Cell num_cell(const std::string& s, bool emph = false) {
  return Cell{s, latex_escape(s), emph, true};
}

Cell stat_cell(const MaybeStat& s, int sig = 3) {
  if (s.defined()) return num_cell(format_real(*s, sig));
  return Cell{"n/a", "n/a", false, true};
}

Cell pvalue_cell(const MaybeStat& s) {
  if (s.defined()) return num_cell(format_pvalue(*s));
  return Cell{"n/a", "n/a", false, true};
}

// Mini-plot cell: PGF snippet for LaTeX, sparkline for plain text.
Cell plot_cell(const std::string& text_alt, const std::string& pgf) {
  return Cell{text_alt, pgf, false, false};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string format_real(double x, int sig) {
  if (sig < 1) sig = 1;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", sig, x);
  std::string s = buf;
  // Compact exponents: "1.23e+05" -> "1.23e5", "1e-05" -> "1e-5".
  const std::size_t e = s.find('e');
  if (e != std::string::npos) {
    std::string mant = s.substr(0, e);
    std::string exp = s.substr(e + 1);
    bool neg = false;
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
      neg = exp[0] == '-';
      exp.erase(0, 1);
    }
    while (exp.size() > 1 && exp[0] == '0') exp.erase(0, 1);
    s = mant + "e" + (neg ? "-" : "") + exp;
  }
  return s;
}

std::string format_pvalue(double p, double floor) {
  if (p < floor) {
    return "<" + format_real(floor, 1);
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", p);
  return buf;
}

std::string mini_hist(std::span<const double> sample) {
  const Histogram h = histogram(sample, 8);
  std::size_t max_count = 1;
  for (std::size_t c : h.counts) max_count = std::max(max_count, c);
  // Fixed bounding box: 8 bars x 3pt wide, up to 9pt tall.
  std::string out =
      "\\begin{tikzpicture}[x=3pt,y=9pt,baseline=1pt]";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double height =
        static_cast<double>(h.counts[b]) / static_cast<double>(max_count);
    if (height == 0.0) continue;
    out += "\\fill[black!55] (" + fmt(static_cast<double>(b)) +
           ",0) rectangle (" + fmt(static_cast<double>(b + 1)) + "," +
           fmt(height) + ");";
  }
  out += "\\draw[black!70, line width=0.3pt] (0,0) -- (8,0);";
  out += "\\end{tikzpicture}";
  return out;
}

std::string mini_hist_text(std::span<const double> sample) {
  const Histogram h = histogram(sample, 8);
  std::size_t max_count = 1;
  for (std::size_t c : h.counts) max_count = std::max(max_count, c);
  static const char levels[] = " .:-=+*#";
  std::string out;
  for (std::size_t c : h.counts) {
    const std::size_t lvl =
        c == 0 ? 0 : 1 + (c - 1) * 7 / std::max<std::size_t>(1, max_count);
    out.push_back(levels[std::min<std::size_t>(lvl, 7)]);
  }
  return out;
}

std::string mini_qq(std::span<const double> sample) {
  const auto pts = qq_points(sample);
  double x_lo = pts.front().first, x_hi = pts.back().first;
  double y_lo = pts.front().second, y_hi = pts.back().second;
  for (const auto& [q, v] : pts) {
    y_lo = std::min(y_lo, v);
    y_hi = std::max(y_hi, v);
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;
  auto ux = [&](double q) { return (q - x_lo) / (x_hi - x_lo); };
  auto uy = [&](double v) { return (v - y_lo) / (y_hi - y_lo); };
  // Fixed bounding box: 24pt x 9pt.
  std::string out =
      "\\begin{tikzpicture}[x=24pt,y=9pt,baseline=1pt]";
  out += "\\draw[black!40, line width=0.3pt] (0,0) -- (1,1);";
  for (const auto& [q, v] : pts) {
    out += "\\fill[black!75] (" + fmt(ux(q)) + "," + fmt(uy(v)) +
           ") circle (0.35pt);";
  }
  out += "\\end{tikzpicture}";
  return out;
}

TableDoc stats_table_per_setup(const std::vector<SummaryStats>& stats,
                               const std::string& tag) {
  TableDoc t;
  t.n_cols = 6;
  t.aligns = "lrrrrr";
  TableRow header;
  header.header = true;
  header.rule_after = true;
  for (const char* name :
       {"measure", "mean", "variance", "CI", "SW p", "skewness"}) {
    header.cells.push_back(text_cell(name));
  }
  t.rows.push_back(std::move(header));
  for (const auto& s : stats) {
    TableRow row;
    row.cells.push_back(text_cell(s.fm_name));
    row.cells.push_back(num_cell(format_real(s.mean, 4)));
    row.cells.push_back(stat_cell(s.variance, 4));
    if (s.ci_lo.defined()) {
      row.cells.push_back(num_cell("[" + format_real(*s.ci_lo, 4) + ", " +
                                   format_real(*s.ci_hi, 4) + "]"));
    } else {
      row.cells.push_back(num_cell("n/a"));
    }
    row.cells.push_back(pvalue_cell(s.sw_p));
    row.cells.push_back(stat_cell(s.skewness));
    t.rows.push_back(std::move(row));
  }
  t.footnotes.push_back("setup: " + tag +
                        (stats.empty()
                             ? ""
                             : ", n=" + std::to_string(stats[0].n) +
                                   ", alpha=" + format_real(stats[0].alpha)));
  return t;
}

TableDoc dist_table_per_fm(const std::vector<TaggedSample>& per_setup,
                           double alpha, const std::string& fm_name) {
  TableDoc t;
  t.n_cols = 7;
  t.aligns = "lrrrrcc";
  t.partial = true;  // meant to be merged into a larger table
  for (const auto& s : per_setup) {
    const SummaryStats st = analyze_sample(s.values, alpha);
    TableRow row;
    row.cells.push_back(text_cell(s.tag));
    row.cells.push_back(num_cell(format_real(st.mean, 4)));
    row.cells.push_back(stat_cell(st.variance, 4));
    row.cells.push_back(pvalue_cell(st.sw_p));
    row.cells.push_back(stat_cell(st.skewness));
    row.cells.push_back(plot_cell(mini_hist_text(s.values),
                                  mini_hist(s.values)));
    if (s.values.size() >= 2) {
      row.cells.push_back(plot_cell("(qq)", mini_qq(s.values)));
    } else {
      row.cells.push_back(text_cell("n/a"));
    }
    t.rows.push_back(std::move(row));
  }
  t.footnotes.push_back("measure: " + fm_name);  // kept out of the fragment
  return t;
}

TableDoc dist_table_per_setup(const FMMatrix& fm, double alpha) {
  const auto stats = stats_analyze(fm, alpha);
  TableDoc t;
  t.n_cols = 7;
  t.aligns = "lrrrrcc";
  TableRow header;
  header.header = true;
  header.rule_after = true;
  for (const char* name : {"measure", "mean", "variance", "SW p", "skewness",
                           "hist", "QQ"}) {
    header.cells.push_back(text_cell(name));
  }
  t.rows.push_back(std::move(header));
  for (std::size_t j = 0; j < fm.m; ++j) {
    const std::vector<double> col = fm.fm_column(j);
    const SummaryStats& s = stats[j];
    TableRow row;
    row.cells.push_back(text_cell(s.fm_name));
    row.cells.push_back(num_cell(format_real(s.mean, 4)));
    row.cells.push_back(stat_cell(s.variance, 4));
    row.cells.push_back(pvalue_cell(s.sw_p));
    row.cells.push_back(stat_cell(s.skewness));
    row.cells.push_back(plot_cell(mini_hist_text(col), mini_hist(col)));
    if (col.size() >= 2) {
      row.cells.push_back(plot_cell("(qq)", mini_qq(col)));
    } else {
      row.cells.push_back(text_cell("n/a"));
    }
    t.rows.push_back(std::move(row));
  }
  t.footnotes.push_back("setup: " + fm.tag + ", n=" + std::to_string(fm.n));
  return t;
}

TableDoc stats_compare_table(
    const std::vector<std::pair<std::string, CompareResult>>& results) {
  if (results.empty()) {
    throw Error(ErrorKind::EmptyMatrix, "no comparison results to tabulate");
  }
  const CompareResult& first = results[0].second;
  TableDoc t;
  t.n_cols = 2 + first.fm_names.size();
  t.aligns = "ll" + std::string(first.fm_names.size(), 'r');
  TableRow header;
  header.header = true;
  header.rule_after = true;
  header.cells.push_back(text_cell("setup"));
  header.cells.push_back(text_cell("test"));
  for (const auto& name : first.fm_names) {
    header.cells.push_back(text_cell(name));
  }
  t.rows.push_back(std::move(header));
  for (const auto& [label, r] : results) {
    if (r.fm_names != first.fm_names) {
      throw Error(ErrorKind::FMNameMismatch,
                  "comparison results do not share focal measures");
    }
    TableRow row;
    row.cells.push_back(text_cell(label));
    std::string tests = r.tests_used.empty() ? "" : r.tests_used[0];
    for (const auto& name : r.tests_used) {
      if (name != tests) {
        tests = "mixed";
        break;
      }
    }
    row.cells.push_back(text_cell(tests));
    for (std::size_t j = 0; j < r.p_values.size(); ++j) {
      row.cells.push_back(num_cell(format_pvalue(r.p_values[j]),
                                   r.failed[j]));
    }
    t.rows.push_back(std::move(row));
  }
  t.footnotes.push_back("bold: p < " + format_real(first.alpha) +
                        "; Bonferroni-adjusted threshold: " +
                        format_real(first.alpha /
                                    static_cast<double>(
                                        std::max<std::size_t>(
                                            1, first.fm_names.size()))));
  return t;
}

std::string render_table_text(const TableDoc& table, bool color) {
  std::vector<std::size_t> widths(table.n_cols, 0);
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      widths[c] = std::max(widths[c], row.cells[c].text.size());
    }
  }
  std::string out;
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      if (c > 0) out += "  ";
      const Cell& cell = row.cells[c];
      const std::size_t pad = widths[c] - cell.text.size();
      std::string body = cell.text;
      if (cell.emph && color) body = "\x1b[1m" + body + "\x1b[0m";
      if (cell.numeric) {
        out += std::string(pad, ' ') + body;
      } else {
        out += body + std::string(pad, ' ');
      }
    }
    // Trim trailing spaces from left-aligned last cells.
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
    if (row.rule_after) {
      std::size_t total = 0;
      for (std::size_t wc : widths) total += wc;
      total += 2 * (table.n_cols - 1);
      out += std::string(total, '-') + "\n";
    }
  }
  for (const auto& note : table.footnotes) {
    out += "# " + note + "\n";
  }
  return out;
}

std::string render_table_latex(const TableDoc& table) {
  std::string out;
  if (!table.partial) {
    out += "\\begin{tabular}{" + table.aligns + "}\n";
    out += "\\hline\n";
  }
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      if (c > 0) out += " & ";
      const Cell& cell = row.cells[c];
      std::string body = cell.latex.empty() ? cell.text : cell.latex;
      if (cell.emph) body = "\\textbf{" + body + "}";
      out += body;
    }
    out += " \\\\\n";
    if (row.rule_after) out += "\\hline\n";
  }
  if (!table.partial) {
    out += "\\hline\n";
    out += "\\end{tabular}\n";
    for (const auto& note : table.footnotes) {
      out += "\\par\\noindent{\\small " + latex_escape(note) + "}\n";
    }
  }
  return out;
}

void emit_table(const TableDoc& table, const std::string& path,
                TableFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  }
  out << (format == TableFormat::Latex ? render_table_latex(table)
                                       : render_table_text(table));
  if (!out) {
    throw Error(ErrorKind::IoError, "write failed for " + path);
  }
}

void emit_table(const TableDoc& table, const std::string& path) {
  const bool latex = path.size() >= 4 &&
                     path.compare(path.size() - 4, 4, ".tex") == 0;
  emit_table(table, path,
             latex ? TableFormat::Latex : TableFormat::PlainText);
}

}  // namespace simout
