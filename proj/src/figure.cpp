#include "simout/figure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "simout/error.hpp"

namespace simout {

namespace {

struct Bounds {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -std::numeric_limits<double>::infinity();
  double y_lo = std::numeric_limits<double>::infinity();
  double y_hi = -std::numeric_limits<double>::infinity();
  bool any = false;

  void add(double x, double y) {
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
    any = true;
  }
};

void for_each_point(const Layer& layer,
                    const std::function<void(double, double)>& fn) {
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Note>) {
          fn(l.x, l.y);
        } else if constexpr (std::is_same_v<T, Band>) {
          for (std::size_t i = 0; i < l.x.size(); ++i) {
            fn(l.x[i], l.lo[i]);
            fn(l.x[i], l.hi[i]);
          }
        } else {
          for (std::size_t i = 0; i < l.x.size(); ++i) fn(l.x[i], l.y[i]);
        }
      },
      layer);
}

Bounds layer_bounds(const FigureDoc& fig) {
  Bounds b;
  for (const auto& layer : fig.layers) {
    for_each_point(layer, [&](double x, double y) { b.add(x, y); });
  }
  return b;
}

}  // namespace

void autoscale(FigureDoc& fig, double pad) {
  Bounds b = layer_bounds(fig);
  if (!b.any) {
    fig.axes.x = {0.0, 1.0};
    fig.axes.y = {0.0, 1.0};
    return;
  }
  auto padded = [pad](double lo, double hi) -> AxisRange {
    if (lo == hi) {  // flat data still needs a visible extent
      const double off = (lo == 0.0) ? 0.5 : std::fabs(lo) * 0.1;
      return {lo - off, hi + off};
    }
    const double margin = (hi - lo) * pad;
    return {lo - margin, hi + margin};
  };
  fig.axes.x = padded(b.x_lo, b.x_hi);
  fig.axes.y = padded(b.y_lo, b.y_hi);
}

void validate(const FigureDoc& fig) {
  for (const auto& layer : fig.layers) {
    const bool sized = std::visit(
        [](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, Note>) {
            return true;
          } else if constexpr (std::is_same_v<T, Band>) {
            return l.lo.size() == l.x.size() && l.hi.size() == l.x.size();
          } else {
            return l.y.size() == l.x.size();
          }
        },
        layer);
    if (!sized) {
      throw Error(ErrorKind::DimensionMismatch,
                  "figure '" + fig.title + "' has mismatched layer vectors");
    }
  }
  bool finite = true;
  for (const auto& layer : fig.layers) {
    for_each_point(layer, [&](double x, double y) {
      if (!std::isfinite(x) || !std::isfinite(y)) finite = false;
    });
  }
  if (!finite) {
    throw Error(ErrorKind::DomainError,
                "figure '" + fig.title + "' has non-finite coordinates");
  }
  const Bounds b = layer_bounds(fig);
  if (b.any) {
    const double eps_x = 1e-9 * std::max(1.0, b.x_hi - b.x_lo);
    const double eps_y = 1e-9 * std::max(1.0, b.y_hi - b.y_lo);
    if (b.x_lo < fig.axes.x.lo - eps_x || b.x_hi > fig.axes.x.hi + eps_x ||
        b.y_lo < fig.axes.y.lo - eps_y || b.y_hi > fig.axes.y.hi + eps_y) {
      throw Error(ErrorKind::DomainError,
                  "figure '" + fig.title + "' has data outside axis ranges");
    }
  }
  if (!(fig.axes.x.hi > fig.axes.x.lo) || !(fig.axes.y.hi > fig.axes.y.lo)) {
    throw Error(ErrorKind::DomainError,
                "figure '" + fig.title + "' has empty axis ranges");
  }
}

}  // namespace simout
