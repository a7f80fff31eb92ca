#include <cstdio>
#include <fstream>
#include <string>

#include "simout/error.hpp"
#include "simout/render.hpp"

namespace simout {

namespace {

// Panel size in cm.
constexpr double kPanelW = 7.0;
constexpr double kPanelH = 4.8;
constexpr double kGapX = 1.6;
constexpr double kGapY = 1.6;

struct Rgb {
  int r, g, b;
};
const Rgb kPalette[8] = {{31, 119, 180}, {214, 39, 40},  {44, 160, 44},
                         {148, 103, 189}, {255, 127, 14}, {140, 86, 75},
                         {23, 190, 207},  {127, 127, 127}};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.5g", v);
  return buf;
}

std::string tex_escape(const std::string& s) {
  std::string out;
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

std::string color_name(int series) {
  return "simc" + std::to_string(((series % 8) + 8) % 8);
}

std::string line_options(const Style& style) {
  std::string opts = color_name(style.series);
  const bool dash_cycle = style.series >= 8;
  if (style.line == Style::Line::Dashed ||
      (dash_cycle && style.line == Style::Line::Solid)) {
    opts += ", dashed";
  } else if (style.line == Style::Line::Dotted) {
    opts += ", dotted";
  }
  opts += ", line width=" + fmt(0.5 * style.width) + "pt";
  if (style.opacity < 1.0) opts += ", opacity=" + fmt(style.opacity);
  return opts;
}

struct Mapper {
  const Axes& axes;
  double ux(double x) const {
    return (x - axes.x.lo) / (axes.x.hi - axes.x.lo) * kPanelW;
  }
  double uy(double y) const {
    return (y - axes.y.lo) / (axes.y.hi - axes.y.lo) * kPanelH;
  }
};

void emit_coords(std::string& out, const std::vector<double>& xs,
                 const std::vector<double>& ys, const Mapper& map) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += "(" + fmt(map.ux(xs[i])) + "," + fmt(map.uy(ys[i])) + ")";
    // Break lines to keep TeX input manageable for long series.
    out += (i % 6 == 5) ? "\n    " : " ";
  }
}

void render_panel(std::string& out, const FigureDoc& fig) {
  validate(fig);
  const Mapper map{fig.axes};
  out += "% panel: " + fig.title + "\n";
  out += "\\draw[black!70, line width=0.4pt] (0,0) rectangle (" +
         fmt(kPanelW) + "," + fmt(kPanelH) + ");\n";
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double frac = static_cast<double>(i) / nticks;
    const double xv = fig.axes.x.lo + frac * (fig.axes.x.hi - fig.axes.x.lo);
    const double yv = fig.axes.y.lo + frac * (fig.axes.y.hi - fig.axes.y.lo);
    out += "\\draw[black!70, line width=0.4pt] (" + fmt(frac * kPanelW) +
           ",0) -- (" + fmt(frac * kPanelW) + ",-0.08) node[below, "
           "font=\\scriptsize] {" +
           tex_escape(fmt(xv)) + "};\n";
    out += "\\draw[black!70, line width=0.4pt] (0," + fmt(frac * kPanelH) +
           ") -- (-0.08," + fmt(frac * kPanelH) + ") node[left, "
           "font=\\scriptsize] {" +
           tex_escape(fmt(yv)) + "};\n";
  }
  if (!fig.axes.x_label.empty()) {
    out += "\\node[below, font=\\small] at (" + fmt(kPanelW / 2) +
           ",-0.55) {" + tex_escape(fig.axes.x_label) + "};\n";
  }
  if (!fig.axes.y_label.empty()) {
    out += "\\node[rotate=90, font=\\small] at (-1.15," + fmt(kPanelH / 2) +
           ") {" + tex_escape(fig.axes.y_label) + "};\n";
  }
  if (!fig.title.empty()) {
    out += "\\node[above, font=\\small] at (" + fmt(kPanelW / 2) + "," +
           fmt(kPanelH + 0.1) + ") {" + tex_escape(fig.title) + "};\n";
  }
  for (const auto& layer : fig.layers) {
    if (const auto* line = std::get_if<Polyline>(&layer)) {
      out += "\\draw[" + line_options(line->style) + "] plot coordinates {\n    ";
      emit_coords(out, line->x, line->y, map);
      out += "};\n";
    } else if (const auto* band = std::get_if<Band>(&layer)) {
      out += "\\fill[" + color_name(band->style.series) +
             ", opacity=" + fmt(band->style.opacity * 0.5) + "] ";
      for (std::size_t i = 0; i < band->x.size(); ++i) {
        out += "(" + fmt(map.ux(band->x[i])) + "," +
               fmt(map.uy(band->lo[i])) + ") -- ";
        if (i % 6 == 5) out += "\n    ";
      }
      for (std::size_t i = band->x.size(); i-- > 0;) {
        out += "(" + fmt(map.ux(band->x[i])) + "," +
               fmt(map.uy(band->hi[i])) + ")";
        out += (i == 0) ? " -- cycle;\n" : " -- ";
        if (i % 6 == 0 && i != 0) out += "\n    ";
      }
    } else if (const auto* sc = std::get_if<Scatter>(&layer)) {
      for (std::size_t i = 0; i < sc->x.size(); ++i) {
        out += "\\fill[" + color_name(sc->style.series) + "] (" +
               fmt(map.ux(sc->x[i])) + "," + fmt(map.uy(sc->y[i])) +
               ") circle (1.1pt);\n";
      }
    } else if (const auto* st = std::get_if<Steps>(&layer)) {
      out += "\\draw[" + line_options(st->style) + "] ";
      for (std::size_t i = 0; i < st->x.size(); ++i) {
        const std::string px = fmt(map.ux(st->x[i]));
        const std::string py = fmt(map.uy(st->y[i]));
        if (i == 0) {
          out += "(" + px + "," + py + ")";
        } else {
          out += " -| (" + px + "," + py + ")";
        }
        if (i % 6 == 5) out += "\n    ";
      }
      out += ";\n";
    } else if (const auto* note = std::get_if<Note>(&layer)) {
      out += "\\node[font=\\scriptsize] at (" + fmt(map.ux(note->x)) + "," +
             fmt(map.uy(note->y)) + ") {" + tex_escape(note->text) + "};\n";
    }
  }
  double ly = kPanelH - 0.35;
  for (const auto& entry : fig.legend) {
    out += "\\draw[" + line_options(entry.style) + "] (" +
           fmt(kPanelW - 2.3) + "," + fmt(ly) + ") -- (" +
           fmt(kPanelW - 1.8) + "," + fmt(ly) + ");\n";
    out += "\\node[right, font=\\scriptsize] at (" + fmt(kPanelW - 1.75) +
           "," + fmt(ly) + ") {" + tex_escape(entry.label) + "};\n";
    ly -= 0.35;
  }
}

}  // namespace

std::string render_pgf(const FigureGrid& grid) {
  if (grid.panels.empty()) {
    throw Error(ErrorKind::EmptyMatrix, "figure grid has no panels");
  }
  std::string out;
  for (int i = 0; i < 8; ++i) {
    out += "\\definecolor{" + color_name(i) + "}{RGB}{" +
           std::to_string(kPalette[i].r) + "," +
           std::to_string(kPalette[i].g) + "," +
           std::to_string(kPalette[i].b) + "}\n";
  }
  out += "\\begin{tikzpicture}\n";
  if (!grid.title.empty()) {
    const double total_w =
        static_cast<double>(grid.n_cols) * (kPanelW + kGapX) - kGapX;
    out += "\\node[above, font=\\normalsize] at (" + fmt(total_w / 2) +
           ",0.75) {" + tex_escape(grid.title) + "};\n";
  }
  for (std::size_t i = 0; i < grid.panels.size(); ++i) {
    const std::size_t row = i / grid.n_cols;
    const std::size_t col = i % grid.n_cols;
    const double x = static_cast<double>(col) * (kPanelW + kGapX);
    const double y = -static_cast<double>(row + 1) * (kPanelH + kGapY);
    out += "\\begin{scope}[shift={(" + fmt(x) + "," + fmt(y) + ")}]\n";
    render_panel(out, grid.panels[i]);
    out += "\\end{scope}\n";
  }
  out += "\\end{tikzpicture}\n";
  return out;
}

std::string render_pgf(const FigureDoc& fig) {
  FigureGrid grid;
  grid.panels.push_back(fig);
  return render_pgf(grid);
}

void emit_pgf(const FigureGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  }
  out << render_pgf(grid);
  if (!out) {
    throw Error(ErrorKind::IoError, "write failed for " + path);
  }
}

void emit_pgf(const FigureDoc& fig, const std::string& path) {
  FigureGrid grid;
  grid.panels.push_back(fig);
  emit_pgf(grid, path);
}

}  // namespace simout
