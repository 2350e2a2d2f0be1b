#include "mfo/tune/tuner.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mfo/errors.hpp"

namespace mfo::tune {

SearchSpace hyperparam_space() {
  return SearchSpace({kHyperLower.begin(), kHyperLower.end()}, {kHyperUpper.begin(), kHyperUpper.end()});
}

HyperParams decode_hyperparams(std::span<const double> position) {
  if (position.size() != 4)
    throw ParameterError(fmt::format("hyperparameter position needs 4 values, got {}", position.size()));
  auto field = [&](std::size_t k, double v) { return std::clamp(v, kHyperLower[k], kHyperUpper[k]); };
  HyperParams hp;
  hp.momentum = field(0, position[0]);
  hp.learning_rate = field(1, position[1]);
  hp.epochs = static_cast<int>(field(2, std::round(position[2])));
  hp.l2 = field(3, position[3]);
  return hp;
}

Trainer toy_trainer(const ToyDataset& data, std::uint64_t seed) {
  return [&data, seed](const HyperParams& hp) {
    return evaluate_error_rate(train_toy_model(hp, data, seed), data);
  };
}

EngineConfig default_tune_config(std::uint64_t seed) {
  EngineConfig cfg;
  cfg.algorithm = Algorithm::NLCMFO;
  cfg.pop_size = 30;
  cfg.max_iter = 20;
  cfg.seed = seed;
  return cfg;
}

TuneResult tune(const EngineConfig& engine, const Trainer& trainer) {
  TuneResult out;
  const Objective objective = [&](std::span<const double> x) {
    const HyperParams hp = decode_hyperparams(x);
    const double err = trainer(hp);
    out.candidates.push_back({hp, err});
    return err;
  };
  out.run = run(engine, hyperparam_space(), objective);
  out.best = decode_hyperparams(out.run.best_position);
  out.best_error_rate = out.run.best_fitness;
  return out;
}

TuneResult tune(const EngineConfig& engine, const ToyDataset& data, std::uint64_t trainer_seed) {
  return tune(engine, toy_trainer(data, trainer_seed));
}

}  // namespace mfo::tune
