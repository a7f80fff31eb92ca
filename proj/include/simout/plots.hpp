#ifndef SIMOUT_PLOTS_HPP_
#define SIMOUT_PLOTS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simout/figure.hpp"
#include "simout/matrix.hpp"
#include "simout/stats.hpp"

namespace simout {

enum class PlotMode { Superimposed, Extremes, MovingAvg };

// Output-dynamics plot over a replication set: every selected run as a
// polyline (Superimposed), the per-iteration min/max envelope with a filled
// band (Extremes), or per-run centered moving averages (MovingAvg, window
// w; w == 0 plots the raw series).
FigureDoc output_plot(const RunSet& rs, std::size_t output, PlotMode mode,
                      std::size_t w = 0,
                      const std::vector<std::size_t>& run_subset = {});

// One labelled sample of a single focal measure.
struct TaggedSample {
  std::string tag;
  std::vector<double> values;
};

// Distributional panel row per setup: estimated PDF annotated with mean,
// CI and the Shapiro-Wilk p, histogram, and normal QQ plot with a
// reference line through the quartile pairs. Degenerate samples degrade
// the affected panels to a text notice.
FigureGrid dist_plot_per_fm(const std::vector<TaggedSample>& samples,
                            double alpha, const std::string& fm_name);

// PDF and CDF overlays across implementations, shared axes per panel.
struct ComparePlots {
  FigureDoc pdf;
  FigureDoc cdf;
};
ComparePlots stats_compare_plot(const std::vector<TaggedSample>& samples,
                                const std::string& fm_name);

}  // namespace simout

#endif  // SIMOUT_PLOTS_HPP_
