#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "simout/error.hpp"
#include "simout/render.hpp"

namespace simout {

namespace {

constexpr double kPanelW = 440.0;
constexpr double kPanelH = 300.0;
constexpr double kMarginL = 58.0;
constexpr double kMarginR = 16.0;
constexpr double kMarginT = 30.0;
constexpr double kMarginB = 44.0;
constexpr double kTitleH = 26.0;  // extra band when the grid has a title

const char* kPalette[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Mapper {
  const Axes& axes;
  double px(double x) const {
    return kMarginL + (x - axes.x.lo) / (axes.x.hi - axes.x.lo) *
                          (kPanelW - kMarginL - kMarginR);
  }
  double py(double y) const {
    return kPanelH - kMarginB - (y - axes.y.lo) / (axes.y.hi - axes.y.lo) *
                                    (kPanelH - kMarginT - kMarginB);
  }
};

std::string stroke_attrs(const Style& style) {
  std::string out = "stroke=\"";
  out += kPalette[((style.series % 8) + 8) % 8];
  out += "\" stroke-width=\"" + fmt(1.4 * style.width) + "\" fill=\"none\"";
  const bool dash_cycle = style.series >= 8;
  if (style.line == Style::Line::Dashed || (dash_cycle && style.line == Style::Line::Solid)) {
    out += " stroke-dasharray=\"6 3\"";
  } else if (style.line == Style::Line::Dotted) {
    out += " stroke-dasharray=\"1.5 3\"";
  }
  if (style.opacity < 1.0) {
    out += " stroke-opacity=\"" + fmt(style.opacity) + "\"";
  }
  return out;
}

std::string path_of(const std::vector<double>& xs,
                    const std::vector<double>& ys, const Mapper& map,
                    bool steps) {
  std::string d;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::string px = fmt(map.px(xs[i]));
    const std::string py = fmt(map.py(ys[i]));
    if (i == 0) {
      d += "M" + px + " " + py;
    } else if (steps) {
      d += " H" + px + " V" + py;
    } else {
      d += " L" + px + " " + py;
    }
  }
  return d;
}

void render_ticks(std::string& out, const Axes& axes, const Mapper& map) {
  const double plot_x0 = kMarginL, plot_x1 = kPanelW - kMarginR;
  const double plot_y0 = kMarginT, plot_y1 = kPanelH - kMarginB;
  out += "<rect x=\"" + fmt(plot_x0) + "\" y=\"" + fmt(plot_y0) +
         "\" width=\"" + fmt(plot_x1 - plot_x0) + "\" height=\"" +
         fmt(plot_y1 - plot_y0) +
         "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double frac = static_cast<double>(i) / nticks;
    const double xv = axes.x.lo + frac * (axes.x.hi - axes.x.lo);
    const double yv = axes.y.lo + frac * (axes.y.hi - axes.y.lo);
    const double xp = map.px(xv);
    const double yp = map.py(yv);
    out += "<line x1=\"" + fmt(xp) + "\" y1=\"" + fmt(plot_y1) + "\" x2=\"" +
           fmt(xp) + "\" y2=\"" + fmt(plot_y1 + 4) +
           "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt(xp) + "\" y=\"" + fmt(plot_y1 + 16) +
           "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#333333\">" +
           xml_escape(fmt(xv)) + "</text>\n";
    out += "<line x1=\"" + fmt(plot_x0 - 4) + "\" y1=\"" + fmt(yp) +
           "\" x2=\"" + fmt(plot_x0) + "\" y2=\"" + fmt(yp) +
           "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fmt(plot_x0 - 7) + "\" y=\"" + fmt(yp + 3.5) +
           "\" font-size=\"10\" text-anchor=\"end\" fill=\"#333333\">" +
           xml_escape(fmt(yv)) + "</text>\n";
  }
  if (!axes.x_label.empty()) {
    out += "<text x=\"" + fmt((plot_x0 + plot_x1) / 2) + "\" y=\"" +
           fmt(kPanelH - 10) +
           "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#111111\">" +
           xml_escape(axes.x_label) + "</text>\n";
  }
  if (!axes.y_label.empty()) {
    out += "<text x=\"14\" y=\"" + fmt((plot_y0 + plot_y1) / 2) +
           "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#111111\" "
           "transform=\"rotate(-90 14 " +
           fmt((plot_y0 + plot_y1) / 2) + ")\">" +
           xml_escape(axes.y_label) + "</text>\n";
  }
}

void render_panel(std::string& out, const FigureDoc& fig) {
  validate(fig);
  const Mapper map{fig.axes};
  if (!fig.title.empty()) {
    out += "<text x=\"" + fmt(kPanelW / 2) +
           "\" y=\"18\" font-size=\"12\" text-anchor=\"middle\" "
           "fill=\"#111111\">" +
           xml_escape(fig.title) + "</text>\n";
  }
  render_ticks(out, fig.axes, map);
  for (const auto& layer : fig.layers) {
    if (const auto* line = std::get_if<Polyline>(&layer)) {
      out += "<path d=\"" + path_of(line->x, line->y, map, false) + "\" " +
             stroke_attrs(line->style) + "/>\n";
    } else if (const auto* band = std::get_if<Band>(&layer)) {
      std::string d;
      for (std::size_t i = 0; i < band->x.size(); ++i) {
        d += (i == 0 ? "M" : " L") + fmt(map.px(band->x[i])) + " " +
             fmt(map.py(band->lo[i]));
      }
      for (std::size_t i = band->x.size(); i-- > 0;) {
        d += " L" + fmt(map.px(band->x[i])) + " " + fmt(map.py(band->hi[i]));
      }
      d += " Z";
      out += "<path d=\"" + d + "\" fill=\"" +
             kPalette[((band->style.series % 8) + 8) % 8] +
             "\" fill-opacity=\"" + fmt(band->style.opacity * 0.5) +
             "\" stroke=\"none\"/>\n";
    } else if (const auto* sc = std::get_if<Scatter>(&layer)) {
      for (std::size_t i = 0; i < sc->x.size(); ++i) {
        out += "<circle cx=\"" + fmt(map.px(sc->x[i])) + "\" cy=\"" +
               fmt(map.py(sc->y[i])) + "\" r=\"2\" fill=\"" +
               kPalette[((sc->style.series % 8) + 8) % 8] + "\"/>\n";
      }
    } else if (const auto* st = std::get_if<Steps>(&layer)) {
      out += "<path d=\"" + path_of(st->x, st->y, map, true) + "\" " +
             stroke_attrs(st->style) + "/>\n";
    } else if (const auto* note = std::get_if<Note>(&layer)) {
      out += "<text x=\"" + fmt(map.px(note->x)) + "\" y=\"" +
             fmt(map.py(note->y)) +
             "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#222222\">" +
             xml_escape(note->text) + "</text>\n";
    }
  }
  // Legend in the top-right corner of the plot area.
  double ly = kMarginT + 14.0;
  for (const auto& entry : fig.legend) {
    const double lx = kPanelW - kMarginR - 110.0;
    out += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly - 3) + "\" x2=\"" +
           fmt(lx + 20) + "\" y2=\"" + fmt(ly - 3) + "\" " +
           stroke_attrs(entry.style) + "/>\n";
    out += "<text x=\"" + fmt(lx + 25) + "\" y=\"" + fmt(ly) +
           "\" font-size=\"10\" fill=\"#111111\">" +
           xml_escape(entry.label) + "</text>\n";
    ly += 14.0;
  }
}

}  // namespace

std::string render_svg(const FigureGrid& grid) {
  if (grid.panels.empty()) {
    throw Error(ErrorKind::EmptyMatrix, "figure grid has no panels");
  }
  const double title_h = grid.title.empty() ? 0.0 : kTitleH;
  const double width = kPanelW * static_cast<double>(grid.n_cols);
  const double height =
      kPanelH * static_cast<double>(grid.n_rows) + title_h;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"" +
         fmt(width) + "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " +
         fmt(width) + " " + fmt(height) + "\">\n";
  out += "<rect width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
         "\" fill=\"#ffffff\"/>\n";
  if (!grid.title.empty()) {
    out += "<text x=\"" + fmt(width / 2) +
           "\" y=\"18\" font-size=\"14\" text-anchor=\"middle\" "
           "fill=\"#111111\">" +
           xml_escape(grid.title) + "</text>\n";
  }
  for (std::size_t i = 0; i < grid.panels.size(); ++i) {
    const std::size_t row = i / grid.n_cols;
    const std::size_t col = i % grid.n_cols;
    out += "<g transform=\"translate(" +
           fmt(kPanelW * static_cast<double>(col)) + " " +
           fmt(kPanelH * static_cast<double>(row) + title_h) + ")\">\n";
    render_panel(out, grid.panels[i]);
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_svg(const FigureDoc& fig) {
  FigureGrid grid;
  grid.panels.push_back(fig);
  return render_svg(grid);
}

void emit_svg(const FigureGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot open " + path + " for writing");
  }
  out << render_svg(grid);
  if (!out) {
    throw Error(ErrorKind::IoError, "write failed for " + path);
  }
}

void emit_svg(const FigureDoc& fig, const std::string& path) {
  FigureGrid grid;
  grid.panels.push_back(fig);
  emit_svg(grid, path);
}

}  // namespace simout
