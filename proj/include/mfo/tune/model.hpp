#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mfo/matrix.hpp"
#include "mfo/tune/dataset.hpp"

namespace mfo::tune {

/// SGD-with-momentum training knobs searched by the tuner.
struct HyperParams {
  double momentum = 0.9;
  double learning_rate = 0.01;
  int epochs = 10;
  double l2 = 1e-4;
};

inline constexpr std::size_t kBatchSize = 32;

/// Logistic classifier p(y=1|x) = sigmoid(w.x + b).
struct ToyModel {
  Vector weights;
  double bias = 0.0;
  /// Set when training produced a non-finite loss or parameter.
  bool diverged = false;
  HyperParams hp;
  /// Full training-set objective (mean log-loss + l2/2 |w|^2) after each epoch.
  std::vector<double> epoch_loss;
};

/// Starting point of training: w ~ N(0, 0.01^2) from `seed`, b = 0.
ToyModel init_model(std::size_t features, std::uint64_t seed);

/**
 * Mean log-loss over `rows` plus (l2 / 2) |w|^2 (bias unpenalized).
 * `params` is [w_0 .. w_{p-1}, b]. When `grad` is non-empty it receives the
 * analytic gradient in the same layout.
 */
double loss_and_gradient(std::span<const double> params, const Matrix& features,
                         const std::vector<int>& labels, std::span<const std::size_t> rows,
                         double l2, std::span<double> grad = {});

/**
 * Mini-batch (32) gradient descent with momentum on the training split:
 * v <- momentum * v - lr * g;  theta <- theta + v. Batches are drawn from a
 * per-epoch shuffle seeded by `seed`. Divergence sets ToyModel::diverged
 * instead of throwing.
 */
ToyModel train_toy_model(const HyperParams& hp, const ToyDataset& data, std::uint64_t seed);

/// Positive-class probabilities for the given rows.
std::vector<double> predict_scores(const ToyModel& model, const ToyDataset& data,
                                   std::span<const std::size_t> rows);

/// Hard labels at threshold 0.5.
std::vector<int> predict_labels(const ToyModel& model, const ToyDataset& data,
                                std::span<const std::size_t> rows);

/// L_D = (1 - test accuracy) * 100. A diverged model scores 100. Throws
/// ParameterError on an empty test split.
double evaluate_error_rate(const ToyModel& model, const ToyDataset& data);

/**
 * Flat text export:
 *   toy-logistic-model 1
 *   features <p>
 *   bias <b>
 *   weights <w_0> ... <w_{p-1}>
 *   momentum <v> / learning_rate <v> / epochs <n> / l2 <v>   (one per line)
 *   diverged <0|1>
 * Values use shortest round-trip formatting.
 */
void write_model(const std::filesystem::path& path, const ToyModel& model);
ToyModel read_model(const std::filesystem::path& path);

}  // namespace mfo::tune
