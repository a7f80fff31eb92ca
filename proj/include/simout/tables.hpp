#ifndef SIMOUT_TABLES_HPP_
#define SIMOUT_TABLES_HPP_

#include <span>
#include <string>
#include <vector>

#include "simout/compare.hpp"
#include "simout/figure.hpp"
#include "simout/plots.hpp"
#include "simout/stats.hpp"

namespace simout {

enum class TableFormat { PlainText, Latex };

// Rounds to sig significant digits; exponents are compacted ("1.23e5").
std::string format_real(double x, int sig = 3);

// Three decimals, or "<floor" below the floor.
std::string format_pvalue(double p, double floor = 0.001);

// Self-contained PGF picture snippets sized for a table cell.
std::string mini_hist(std::span<const double> sample);
std::string mini_qq(std::span<const double> sample);

// Plain-text sparkline stand-ins for the mini plots.
std::string mini_hist_text(std::span<const double> sample);

// One row per FM: mean, variance, CI, SW p-value, skewness.
TableDoc stats_table_per_setup(const std::vector<SummaryStats>& stats,
                               const std::string& tag);

// One row per setup for a single FM: tag, mean, variance, SW p, skewness,
// inline mini histogram and mini QQ plot. Partial: no surrounding
// environment, so fragments can be merged into larger tables.
TableDoc dist_table_per_fm(const std::vector<TaggedSample>& per_setup,
                           double alpha, const std::string& fm_name);

// One row per FM of one setup: mean, variance, SW p, skewness, histogram,
// QQ plot.
TableDoc dist_table_per_setup(const FMMatrix& fm, double alpha);

// p-value table over one or more comparison results (grouped by setup when
// several are given); cells with p < alpha are emphasized.
TableDoc stats_compare_table(
    const std::vector<std::pair<std::string, CompareResult>>& results);

std::string render_table_text(const TableDoc& table, bool color = false);
std::string render_table_latex(const TableDoc& table);

// Writes a table in the format implied by the path (.tex -> LaTeX).
void emit_table(const TableDoc& table, const std::string& path);
void emit_table(const TableDoc& table, const std::string& path,
                TableFormat format);

}  // namespace simout

#endif  // SIMOUT_TABLES_HPP_
