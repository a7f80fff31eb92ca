#include "simout/focal.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "simout/error.hpp"
#include "simout/kernels.hpp"

namespace simout {

using ordered_json = nlohmann::ordered_json;

ExtractorSpec ExtractorSpec::sixpack(std::size_t ss_idx) {
  ExtractorSpec spec;
  spec.kind = Kind::SteadyStateSixpack;
  spec.ss_idx = ss_idx;
  return spec;
}

ExtractorSpec ExtractorSpec::at_iterations(std::vector<std::size_t> iters) {
  if (iters.empty()) {
    throw Error(ErrorKind::DomainError, "AtIterations needs >= 1 index");
  }
  for (std::size_t i = 1; i < iters.size(); ++i) {
    if (iters[i] <= iters[i - 1]) {
      throw Error(ErrorKind::DomainError,
                  "AtIterations indices must be strictly increasing");
    }
  }
  ExtractorSpec spec;
  spec.kind = Kind::AtIterations;
  spec.iters = std::move(iters);
  return spec;
}

std::vector<std::string> ExtractorSpec::summary_names() const {
  if (kind == Kind::SteadyStateSixpack) {
    return {"max", "argmax", "min", "argmin", "ssmean", "ssstd"};
  }
  std::vector<std::string> names;
  names.reserve(iters.size());
  for (std::size_t it : iters) names.push_back("it" + std::to_string(it));
  return names;
}

Sixpack extract_sixpack(std::span<const double> series, std::size_t ss_idx) {
  if (series.empty()) {
    throw Error(ErrorKind::TooFewObservations, "empty series");
  }
  if (ss_idx > series.size() - 1) {
    throw Error(ErrorKind::SsIdxOutOfRange,
                "ss_idx " + std::to_string(ss_idx) + " >= series length " +
                    std::to_string(series.size()));
  }
  const kernels::MinMax mm = kernels::minmax(series);
  const auto tail = series.subspan(ss_idx);
  const double mean = kernels::mean(tail);
  double sd = 0.0;
  if (tail.size() > 1) {
    sd = std::sqrt(kernels::sum_sq_dev(tail, mean) /
                   static_cast<double>(tail.size() - 1));
  }
  return Sixpack{mm.max, static_cast<double>(mm.imax),
                 mm.min, static_cast<double>(mm.imin),
                 mean,   sd};
}

std::vector<double> extract_at_iters(std::span<const double> series,
                                     std::span<const std::size_t> iters) {
  std::vector<double> out;
  out.reserve(iters.size());
  for (std::size_t idx : iters) {
    if (idx >= series.size()) {
      throw Error(ErrorKind::IterOutOfRange,
                  "iteration " + std::to_string(idx) + " >= series length " +
                      std::to_string(series.size()));
    }
    out.push_back(series[idx]);
  }
  return out;
}

FMMatrix stats_gather(const RunSet& rs, const ExtractorSpec& spec,
                      const std::vector<std::size_t>& outputs,
                      const std::string& tag) {
  if (rs.runs.empty()) {
    throw Error(ErrorKind::EmptyRunSet, "setup '" + tag + "'");
  }
  for (std::size_t o : outputs) {
    if (o >= rs.n_outputs()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "output " + std::to_string(o) + " >= n_outputs " +
                      std::to_string(rs.n_outputs()));
    }
  }
  const std::size_t per_out = spec.summaries_per_output();
  const auto summaries = spec.summary_names();

  FMMatrix fm;
  fm.tag = tag;
  fm.n = rs.n_runs();
  fm.m = outputs.size() * per_out;
  fm.data.reserve(fm.n * fm.m);
  for (std::size_t o : outputs) {
    for (const auto& s : summaries) {
      fm.fm_names.push_back(FmName{rs.output_names()[o], s});
    }
  }
  for (std::size_t r = 0; r < rs.n_runs(); ++r) {
    for (std::size_t o : outputs) {
      const std::vector<double> series = rs.runs[r].column(o);
      try {
        if (spec.kind == ExtractorSpec::Kind::SteadyStateSixpack) {
          const auto six = extract_sixpack(series, spec.ss_idx).as_array();
          fm.data.insert(fm.data.end(), six.begin(), six.end());
        } else {
          const auto vals = extract_at_iters(series, spec.iters);
          fm.data.insert(fm.data.end(), vals.begin(), vals.end());
        }
      } catch (const Error& e) {
        throw Error(e.kind(), "run " + std::to_string(r) + ", output " +
                                  std::to_string(o) + ": " + e.what());
      }
    }
  }
  return fm;
}

FMMatrix stats_gather(const RunSet& rs, const ExtractorSpec& spec,
                      const std::string& tag) {
  std::vector<std::size_t> all(rs.n_outputs());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return stats_gather(rs, spec, all, tag);
}

std::optional<std::size_t> FMMatrix::find_fm(
    const std::string& display_name) const {
  for (std::size_t j = 0; j < fm_names.size(); ++j) {
    if (fm_names[j].display() == display_name) return j;
  }
  return std::nullopt;
}

std::string fm_matrix_to_json(const FMMatrix& fm) {
  ordered_json doc;
  doc["tag"] = fm.tag;
  doc["fm_names"] = ordered_json::array();
  for (const auto& name : fm.fm_names) {
    doc["fm_names"].push_back({{"output", name.output},
                               {"summary", name.summary}});
  }
  doc["data"] = ordered_json::array();
  for (std::size_t i = 0; i < fm.n; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < fm.m; ++j) row.push_back(fm.at(i, j));
    doc["data"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

FMMatrix fm_matrix_from_json(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ConfigError,
                std::string("bad FM matrix JSON: ") + e.what());
  }
  FMMatrix fm;
  fm.tag = doc.at("tag").get<std::string>();
  for (const auto& item : doc.at("fm_names")) {
    fm.fm_names.push_back(FmName{item.at("output").get<std::string>(),
                                 item.at("summary").get<std::string>()});
  }
  fm.m = fm.fm_names.size();
  for (const auto& row : doc.at("data")) {
    if (row.size() != fm.m) {
      throw Error(ErrorKind::DimensionMismatch,
                  "FM matrix row length != fm_names length");
    }
    for (const auto& v : row) fm.data.push_back(v.get<double>());
    ++fm.n;
  }
  if (fm.n == 0 || fm.m == 0) {
    throw Error(ErrorKind::EmptyMatrix, "FM matrix has no data");
  }
  return fm;
}

std::string fm_matrix_to_delim(const FMMatrix& fm, char delimiter) {
  std::string out;
  for (std::size_t j = 0; j < fm.m; ++j) {
    if (j > 0) out.push_back(delimiter);
    out += fm.fm_names[j].display();
  }
  out.push_back('\n');
  char buf[40];
  for (std::size_t i = 0; i < fm.n; ++i) {
    for (std::size_t j = 0; j < fm.m; ++j) {
      if (j > 0) out.push_back(delimiter);
      std::snprintf(buf, sizeof(buf), "%.17g", fm.at(i, j));
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace simout
