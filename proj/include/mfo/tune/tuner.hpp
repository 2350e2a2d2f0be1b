#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mfo/engine.hpp"
#include "mfo/tune/dataset.hpp"
#include "mfo/tune/model.hpp"

namespace mfo::tune {

/// Search box for (momentum, learning_rate, epochs, l2).
inline constexpr std::array<double, 4> kHyperLower{0.5, 0.01, 5.0, 1e-4};
inline constexpr std::array<double, 4> kHyperUpper{1.0, 0.5, 15.0, 5e-4};

SearchSpace hyperparam_space();

/// Position order is (momentum, learning_rate, epochs, l2). Epochs round half
/// away from zero; every field is then clamped into its bound.
HyperParams decode_hyperparams(std::span<const double> position);

/// Black-box training cost: trains with `hp` and returns L_D in [0, 100].
using Trainer = std::function<double(const HyperParams&)>;

/// The built-in trainer: toy logistic model on `data`, fixed training seed.
Trainer toy_trainer(const ToyDataset& data, std::uint64_t seed);

struct Candidate {
  HyperParams hp;
  double error_rate = 0.0;
};

struct TuneResult {
  HyperParams best;
  double best_error_rate = 0.0;
  RunResult run;
  /// Every evaluated candidate, in evaluation order.
  std::vector<Candidate> candidates;
};

/// Engine defaults for the tuner: pop 30, max_iter 20.
EngineConfig default_tune_config(std::uint64_t seed = 1);

/// Minimizes the trainer's L_D over the hyperparameter box.
TuneResult tune(const EngineConfig& engine, const Trainer& trainer);
TuneResult tune(const EngineConfig& engine, const ToyDataset& data, std::uint64_t trainer_seed);

}  // namespace mfo::tune
