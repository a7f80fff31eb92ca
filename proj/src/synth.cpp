#include "simout/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "simout/error.hpp"
#include "simout/ingest.hpp"

namespace simout {

using ordered_json = nlohmann::ordered_json;

double Splitmix64::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 in (0,1] so the log is finite.
  const double u1 = 1.0 - next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

SynthModel synth_model_from_name(const std::string& name) {
  if (name == "logistic") return SynthModel::Logistic;
  if (name == "pp" || name == "predator-prey") return SynthModel::PredatorPrey;
  throw Error(ErrorKind::ConfigError,
              "unknown synthetic model '" + name +
                  "' (expected logistic | pp)");
}

const char* synth_model_name(SynthModel model) {
  return model == SynthModel::Logistic ? "logistic" : "pp";
}

namespace {

// Distinct seed stream per (seed, run) pair.
std::uint64_t mix_seed(std::uint64_t seed, std::size_t run) {
  Splitmix64 mixer(seed ^ (0x2545f4914f6cdd1dULL *
                           static_cast<std::uint64_t>(run + 1)));
  return mixer.next_u64();
}

OutputMatrix logistic_run(std::size_t iters, Splitmix64& rng) {
  OutputMatrix m;
  m.n_iters = iters;
  m.n_outputs = 1;
  m.output_names = {"pop"};
  m.values.reserve(iters);
  const double growth = 0.25;
  const double capacity = 100.0;
  double x = 5.0 * (1.0 + 0.2 * rng.next_double());
  for (std::size_t t = 0; t < iters; ++t) {
    m.values.push_back(x);
    x += growth * x * (1.0 - x / capacity);
    x *= 1.0 + 0.02 * rng.next_normal();
    if (x < 0.01) x = 0.01;
  }
  return m;
}

OutputMatrix predator_prey_run(std::size_t iters, Splitmix64& rng) {
  OutputMatrix m;
  m.n_iters = iters;
  m.n_outputs = 2;
  m.output_names = {"prey", "pred"};
  m.values.reserve(iters * 2);
  // Discrete Lotka-Volterra with logistic prey growth; the coexistence
  // equilibrium is (prey, pred) = (200, 200), reached after a transient of
  // roughly 30 iterations from the (400, 40) start.
  const double growth = 0.25;
  const double capacity = 1000.0;
  const double attack = 0.001;
  const double efficiency = 0.5;
  const double death = 0.1;
  double prey = 400.0 * (1.0 + 0.1 * rng.next_double());
  double pred = 40.0 * (1.0 + 0.1 * rng.next_double());
  for (std::size_t t = 0; t < iters; ++t) {
    m.values.push_back(prey);
    m.values.push_back(pred);
    const double eaten = attack * prey * pred;
    double prey_next = prey + growth * prey * (1.0 - prey / capacity) - eaten;
    double pred_next = pred + efficiency * eaten - death * pred;
    prey_next *= 1.0 + 0.03 * rng.next_normal();
    pred_next *= 1.0 + 0.03 * rng.next_normal();
    prey = std::max(prey_next, 0.01);
    pred = std::max(pred_next, 0.01);
  }
  return m;
}

}  // namespace

OutputMatrix synth_run(SynthModel model, std::size_t iters,
                       std::uint64_t seed, std::size_t run) {
  if (iters == 0) {
    throw Error(ErrorKind::ConfigError, "synth needs iters >= 1");
  }
  Splitmix64 rng(mix_seed(seed, run));
  return model == SynthModel::Logistic ? logistic_run(iters, rng)
                                       : predator_prey_run(iters, rng);
}

std::vector<std::string> synth_write_runs(SynthModel model, std::size_t runs,
                                          std::size_t iters,
                                          std::uint64_t seed,
                                          const std::string& out_dir) {
  if (runs == 0) {
    throw Error(ErrorKind::ConfigError, "synth needs runs >= 1");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorKind::IoError,
                "cannot create directory " + out_dir + ": " + ec.message());
  }
  std::vector<std::string> paths;
  paths.reserve(runs);
  char name[64];
  for (std::size_t r = 0; r < runs; ++r) {
    OutputMatrix m = synth_run(model, iters, seed, r);
    std::snprintf(name, sizeof(name), "%s_%03zu.tsv",
                  synth_model_name(model), r);
    const std::string path =
        (std::filesystem::path(out_dir) / name).string();
    write_output_file(m, path, '\t');
    paths.push_back(path);
  }
  ordered_json manifest;
  manifest["model"] = synth_model_name(model);
  manifest["runs"] = runs;
  manifest["iters"] = iters;
  manifest["seed"] = seed;
  manifest["generator"] = "splitmix64 + box-muller";
  manifest["outputs"] = model == SynthModel::Logistic
                            ? std::vector<std::string>{"pop"}
                            : std::vector<std::string>{"prey", "pred"};
  ordered_json files = ordered_json::array();
  for (const auto& p : paths) {
    files.push_back(std::filesystem::path(p).filename().string());
  }
  manifest["files"] = std::move(files);
  const std::string manifest_path =
      (std::filesystem::path(out_dir) / "manifest.json").string();
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot write " + manifest_path);
  }
  out << manifest.dump(2) << "\n";
  return paths;
}

}  // namespace simout
