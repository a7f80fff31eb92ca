#include "simout/plots.hpp"

#include <algorithm>
#include <cmath>

#include "simout/error.hpp"
#include "simout/kernels.hpp"
#include "simout/tables.hpp"

namespace simout {

namespace {

std::vector<double> iota_reals(std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i);
  return xs;
}

// Degrade a panel to a centered text notice.
FigureDoc notice_panel(const std::string& title, const std::string& text) {
  FigureDoc fig;
  fig.title = title;
  fig.axes.x = {0.0, 1.0};
  fig.axes.y = {0.0, 1.0};
  fig.layers.push_back(Note{0.5, 0.5, text, Style{}});
  return fig;
}

FigureDoc kde_panel(const TaggedSample& s, double alpha) {
  const SummaryStats stats = analyze_sample(s.values, alpha);
  const DensityEstimate de = kde(s.values);
  FigureDoc fig;
  fig.title = s.tag;
  fig.axes.x_label = "value";
  fig.axes.y_label = "density";
  fig.layers.push_back(Polyline{de.grid, de.density, Style{0}});
  const double peak = *std::max_element(de.density.begin(), de.density.end());
  // Mean marker and CI band drawn as vertical guides.
  fig.layers.push_back(Polyline{{stats.mean, stats.mean},
                                {0.0, peak},
                                Style{1, Style::Line::Dashed}});
  if (stats.ci_lo.defined() && stats.ci_hi.defined()) {
    fig.layers.push_back(Band{{*stats.ci_lo, *stats.ci_hi},
                              {0.0, 0.0},
                              {peak, peak},
                              Style{1, Style::Line::Solid, 1.0, 0.15}});
  }
  std::string annot = "mean=" + format_real(stats.mean, 4);
  if (stats.ci_lo.defined()) {
    annot += " CI=[" + format_real(*stats.ci_lo, 4) + "," +
             format_real(*stats.ci_hi, 4) + "]";
  }
  if (stats.sw_p.defined()) {
    annot += " SW p=" + format_pvalue(*stats.sw_p);
  }
  fig.layers.push_back(Note{de.grid[de.grid.size() / 2], peak * 1.08, annot,
                            Style{}});
  autoscale(fig);
  fig.axes.y.lo = 0.0;  // densities are nonnegative
  return fig;
}

FigureDoc hist_panel(const TaggedSample& s) {
  const Histogram h = histogram(s.values);
  FigureDoc fig;
  fig.title = s.tag;
  fig.axes.x_label = "value";
  fig.axes.y_label = "count";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    fig.layers.push_back(Band{{h.edges[b], h.edges[b + 1]},
                              {0.0, 0.0},
                              {static_cast<double>(h.counts[b]),
                               static_cast<double>(h.counts[b])},
                              Style{0, Style::Line::Solid, 1.0, 0.6}});
  }
  autoscale(fig);
  fig.axes.y.lo = 0.0;  // counts start at zero
  return fig;
}

FigureDoc qq_panel(const TaggedSample& s) {
  const auto pts = qq_points(s.values);
  FigureDoc fig;
  fig.title = s.tag;
  fig.axes.x_label = "normal quantiles";
  fig.axes.y_label = "sample";
  std::vector<double> tx, ty;
  tx.reserve(pts.size());
  ty.reserve(pts.size());
  for (const auto& [q, v] : pts) {
    tx.push_back(q);
    ty.push_back(v);
  }
  // Reference line through the first/third quartile pairs, clipped to the
  // theoretical range.
  const double tq1 = sample_quantile(tx, 0.25);
  const double tq3 = sample_quantile(tx, 0.75);
  const double eq1 = sample_quantile(ty, 0.25);
  const double eq3 = sample_quantile(ty, 0.75);
  if (tq3 > tq1 && eq3 > eq1) {
    const double slope = (eq3 - eq1) / (tq3 - tq1);
    const double x0 = tx.front(), x1 = tx.back();
    fig.layers.push_back(Polyline{{x0, x1},
                                  {eq1 + slope * (x0 - tq1),
                                   eq1 + slope * (x1 - tq1)},
                                  Style{7, Style::Line::Dashed}});
  }
  fig.layers.push_back(Scatter{std::move(tx), std::move(ty), Style{0}});
  autoscale(fig);
  return fig;
}

}  // namespace

FigureDoc output_plot(const RunSet& rs, std::size_t output, PlotMode mode,
                      std::size_t w,
                      const std::vector<std::size_t>& run_subset) {
  if (rs.runs.empty()) {
    throw Error(ErrorKind::EmptyRunSet, "output_plot on empty run set");
  }
  if (output >= rs.n_outputs()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "output " + std::to_string(output) + " >= n_outputs " +
                    std::to_string(rs.n_outputs()));
  }
  std::vector<std::size_t> runs = run_subset;
  if (runs.empty()) {
    runs.resize(rs.n_runs());
    for (std::size_t i = 0; i < runs.size(); ++i) runs[i] = i;
  }
  for (std::size_t r : runs) {
    if (r >= rs.n_runs()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "run " + std::to_string(r) + " >= n_runs " +
                      std::to_string(rs.n_runs()));
    }
  }
  const std::size_t n_iters = rs.n_iters();
  const std::vector<double> xs = iota_reals(n_iters);
  const std::string& out_name = rs.output_names()[output];

  FigureDoc fig;
  fig.axes.x_label = "iteration";
  fig.axes.y_label = out_name;

  switch (mode) {
    case PlotMode::Superimposed: {
      fig.title = out_name + " (" + std::to_string(runs.size()) + " runs)";
      int series = 0;
      for (std::size_t r : runs) {
        fig.layers.push_back(Polyline{xs, rs.runs[r].column(output),
                                      Style{series++}});
      }
      break;
    }
    case PlotMode::Extremes: {
      fig.title = out_name + " extremes (" + std::to_string(runs.size()) +
                  " runs)";
      std::vector<double> lo = rs.runs[runs[0]].column(output);
      std::vector<double> hi = lo;
      for (std::size_t i = 1; i < runs.size(); ++i) {
        const std::vector<double> col = rs.runs[runs[i]].column(output);
        kernels::envelope(col, lo, hi);
      }
      fig.layers.push_back(Band{xs, lo, hi,
                                Style{0, Style::Line::Solid, 1.0, 0.3}});
      fig.layers.push_back(Polyline{xs, std::move(lo), Style{0}});
      fig.layers.push_back(Polyline{xs, std::move(hi), Style{1}});
      break;
    }
    case PlotMode::MovingAvg: {
      fig.title = out_name + " moving average (w=" + std::to_string(w) + ")";
      int series = 0;
      for (std::size_t r : runs) {
        fig.layers.push_back(Polyline{
            xs, moving_average(rs.runs[r].column(output), w),
            Style{series++}});
      }
      break;
    }
  }
  autoscale(fig);
  return fig;
}

FigureGrid dist_plot_per_fm(const std::vector<TaggedSample>& samples,
                            double alpha, const std::string& fm_name) {
  FigureGrid grid;
  grid.title = fm_name;
  grid.n_rows = samples.size();
  grid.n_cols = 3;
  for (const auto& s : samples) {
    try {
      grid.panels.push_back(kde_panel(s, alpha));
    } catch (const Error& e) {
      grid.panels.push_back(notice_panel(s.tag, e.what()));
    }
    try {
      grid.panels.push_back(hist_panel(s));
    } catch (const Error& e) {
      grid.panels.push_back(notice_panel(s.tag, e.what()));
    }
    try {
      grid.panels.push_back(qq_panel(s));
    } catch (const Error& e) {
      grid.panels.push_back(notice_panel(s.tag, e.what()));
    }
  }
  return grid;
}

ComparePlots stats_compare_plot(const std::vector<TaggedSample>& samples,
                                const std::string& fm_name) {
  if (samples.size() < 2) {
    throw Error(ErrorKind::DegenerateInput,
                "compare plot needs >= 2 implementations");
  }
  ComparePlots plots;
  plots.pdf.title = fm_name + " PDF";
  plots.pdf.axes.x_label = "value";
  plots.pdf.axes.y_label = "density";
  plots.cdf.title = fm_name + " CDF";
  plots.cdf.axes.x_label = "value";
  plots.cdf.axes.y_label = "F";

  int series = 0;
  for (const auto& s : samples) {
    const Style style{series++};
    const DensityEstimate de = kde(s.values);
    plots.pdf.layers.push_back(Polyline{de.grid, de.density, style});
    plots.pdf.legend.push_back({s.tag, style});

    const Ecdf e = ecdf(s.values);
    plots.cdf.layers.push_back(Steps{e.x, e.f, style});
    plots.cdf.legend.push_back({s.tag, style});
  }
  autoscale(plots.pdf);
  autoscale(plots.cdf);
  plots.pdf.axes.y.lo = 0.0;
  // A CDF lives on [0,1].
  plots.cdf.axes.y.lo = 0.0;
  plots.cdf.axes.y.hi = std::max(plots.cdf.axes.y.hi, 1.02);
  return plots;
}

}  // namespace simout
