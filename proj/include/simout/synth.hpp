#ifndef SIMOUT_SYNTH_HPP_
#define SIMOUT_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "simout/matrix.hpp"

namespace simout {

// splitmix64: the fixture generator named in the README so synthetic data
// is reproducible bit-for-bit from (model, seed, run index).
class Splitmix64 {
 public:
  explicit Splitmix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (one draw per call, pairs cached).
  double next_normal();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

enum class SynthModel { Logistic, PredatorPrey };

SynthModel synth_model_from_name(const std::string& name);
const char* synth_model_name(SynthModel model);

// One run of the model: Logistic is noisy logistic growth (one output,
// "pop"); PredatorPrey is a discrete stochastic Lotka-Volterra with a
// transient followed by a noisy quasi-steady state (outputs "prey",
// "pred"). Values are clamped positive. Deterministic given (model, seed,
// run).
OutputMatrix synth_run(SynthModel model, std::size_t iters,
                       std::uint64_t seed, std::size_t run);

// Writes `runs` delimited files plus a manifest.json recording the model,
// seed and generator identity. Returns the file paths in run order.
std::vector<std::string> synth_write_runs(SynthModel model, std::size_t runs,
                                          std::size_t iters,
                                          std::uint64_t seed,
                                          const std::string& out_dir);

}  // namespace simout

#endif  // SIMOUT_SYNTH_HPP_
