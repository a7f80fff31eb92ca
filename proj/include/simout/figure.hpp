#ifndef SIMOUT_FIGURE_HPP_
#define SIMOUT_FIGURE_HPP_

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace simout {

// Style token resolved by the backends: series picks from an 8-color cycle
// (line style rotates once the palette is exhausted).
struct Style {
  int series = 0;
  enum class Line { Solid, Dashed, Dotted } line = Line::Solid;
  double width = 1.0;
  double opacity = 1.0;
};

struct Polyline {
  std::vector<double> x, y;
  Style style;
};

// Filled area between lo and hi over shared x.
struct Band {
  std::vector<double> x, lo, hi;
  Style style;
};

struct Scatter {
  std::vector<double> x, y;
  Style style;
};

// Right-continuous step curve (drawn with horizontal segments).
struct Steps {
  std::vector<double> x, y;
  Style style;
};

// Text anchored at data coordinates.
struct Note {
  double x = 0, y = 0;
  std::string text;
  Style style;
};

using Layer = std::variant<Polyline, Band, Scatter, Steps, Note>;

struct AxisRange {
  double lo = 0.0, hi = 1.0;
};

struct Axes {
  std::string x_label, y_label;
  AxisRange x, y;
};

struct LegendEntry {
  std::string label;
  Style style;
};

struct FigureDoc {
  std::string title;
  Axes axes;
  std::vector<Layer> layers;
  std::vector<LegendEntry> legend;
};

// Panels laid out row-major; a grid of one panel is a plain figure.
struct FigureGrid {
  std::string title;
  std::size_t n_rows = 1, n_cols = 1;
  std::vector<FigureDoc> panels;
};

// Sets axis ranges to the data bounds padded by the given fraction.
void autoscale(FigureDoc& fig, double pad = 0.04);

// Checks the FigureDoc invariants: finite coordinates everywhere and ranges
// containing all layer data. Throws Error(DomainError) on violation.
void validate(const FigureDoc& fig);

// Table cells carry final text; mini-plot cells additionally carry a PGF
// snippet used by the LaTeX renderer.
struct Cell {
  std::string text;       // plain-text rendering
  std::string latex;      // LaTeX rendering (empty: reuse text)
  bool emph = false;      // bold when the renderer supports it
  bool numeric = false;   // right-aligned in plain text
};

struct TableRow {
  std::vector<Cell> cells;
  bool header = false;
  bool rule_after = false;  // horizontal rule below this row
};

struct TableDoc {
  std::size_t n_cols = 0;
  std::string aligns;  // latex alignment tokens, length n_cols
  std::vector<TableRow> rows;
  bool partial = false;  // no surrounding table environment
  std::vector<std::string> footnotes;
};

}  // namespace simout

#endif  // SIMOUT_FIGURE_HPP_
