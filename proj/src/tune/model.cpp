#include "mfo/tune/model.hpp"

#include <cmath>
#include <algorithm>
#include <fstream>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "mfo/errors.hpp"
#include "mfo/rng.hpp"

namespace mfo::tune {
namespace {

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::vector<double> pack(const ToyModel& m) {
  std::vector<double> p(m.weights.begin(), m.weights.end());
  p.push_back(m.bias);
  return p;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

ToyModel init_model(std::size_t features, std::uint64_t seed) {
  ToyModel m;
  Rng rng(derive_seed(seed, 2));
  m.weights.resize(static_cast<Eigen::Index>(features));
  for (auto& w : m.weights) w = 0.01 * rng.normal();
  return m;
}

double loss_and_gradient(std::span<const double> params, const Matrix& features,
                         const std::vector<int>& labels, std::span<const std::size_t> rows,
                         double l2, std::span<double> grad) {
  const auto p = features.cols();
  const Eigen::Map<const Vector> w(params.data(), p);
  const double b = params[static_cast<std::size_t>(p)];
  const bool want_grad = !grad.empty();
  Eigen::Map<Vector> gw(want_grad ? grad.data() : nullptr, want_grad ? p : 0);
  double gb = 0.0;
  if (want_grad) gw.setZero();

  double loss = 0.0;
  for (std::size_t r : rows) {
    const auto row = features.row(static_cast<Eigen::Index>(r));
    const double z = row.dot(w) + b;
    const double y = labels[r];
    loss += softplus(z) - y * z;
    if (want_grad) {
      const double err = sigmoid(z) - y;
      gw += err * row.transpose();
      gb += err;
    }
  }
  const double inv = rows.empty() ? 0.0 : 1.0 / static_cast<double>(rows.size());
  loss = loss * inv + 0.5 * l2 * w.squaredNorm();
  if (want_grad) {
    gw = gw * inv + l2 * w;
    grad[static_cast<std::size_t>(p)] = gb * inv;
  }
  return loss;
}

ToyModel train_toy_model(const HyperParams& hp, const ToyDataset& data, std::uint64_t seed) {
  ToyModel model = init_model(data.feature_count(), seed);
  model.hp = hp;
  std::vector<double> theta = pack(model);
  std::vector<double> velocity(theta.size(), 0.0);
  std::vector<double> grad(theta.size());
  std::vector<std::size_t> order = data.train;
  Rng rng(derive_seed(seed, 3));

  auto store = [&] {
    const auto p = static_cast<Eigen::Index>(data.feature_count());
    model.weights = Eigen::Map<const Vector>(theta.data(), p);
    model.bias = theta.back();
  };

  for (int epoch = 0; epoch < hp.epochs && !model.diverged; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t start = 0; start < order.size(); start += kBatchSize) {
      const std::size_t len = std::min(kBatchSize, order.size() - start);
      loss_and_gradient(theta, data.features, data.labels,
                        std::span<const std::size_t>(order).subspan(start, len), hp.l2, grad);
      for (std::size_t k = 0; k < theta.size(); ++k) {
        velocity[k] = hp.momentum * velocity[k] - hp.learning_rate * grad[k];
        theta[k] += velocity[k];
      }
    }
    const double loss = loss_and_gradient(theta, data.features, data.labels, data.train, hp.l2);
    model.epoch_loss.push_back(loss);
    if (!std::isfinite(loss) || !all_finite(theta)) model.diverged = true;
  }
  store();
  return model;
}

std::vector<double> predict_scores(const ToyModel& model, const ToyDataset& data,
                                   std::span<const std::size_t> rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r : rows)
    out.push_back(sigmoid(data.features.row(static_cast<Eigen::Index>(r)).dot(model.weights) + model.bias));
  return out;
}

std::vector<int> predict_labels(const ToyModel& model, const ToyDataset& data,
                                std::span<const std::size_t> rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (double s : predict_scores(model, data, rows)) out.push_back(s >= 0.5 ? 1 : 0);
  return out;
}

double evaluate_error_rate(const ToyModel& model, const ToyDataset& data) {
  if (data.test.empty()) throw ParameterError("cannot score a model on an empty test split");
  if (model.diverged) return 100.0;
  const auto preds = predict_labels(model, data, data.test);
  std::size_t correct = 0;
  for (std::size_t k = 0; k < preds.size(); ++k)
    if (preds[k] == data.labels[data.test[k]]) ++correct;
  const double accuracy = static_cast<double>(correct) / static_cast<double>(preds.size());
  return (1.0 - accuracy) * 100.0;
}

void write_model(const std::filesystem::path& path, const ToyModel& model) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << "toy-logistic-model 1\n";
  out << fmt::format("features {}\n", model.weights.size());
  out << fmt::format("bias {}\n", model.bias);
  out << "weights";
  for (double w : model.weights) out << fmt::format(" {}", w);
  out << '\n';
  out << fmt::format("momentum {}\nlearning_rate {}\nepochs {}\nl2 {}\n", model.hp.momentum,
                     model.hp.learning_rate, model.hp.epochs, model.hp.l2);
  out << fmt::format("diverged {}\n", model.diverged ? 1 : 0);
  if (!out) throw std::runtime_error(fmt::format("write failed for {}", path.string()));
}

ToyModel read_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError(fmt::format("cannot open {}", path.string()));
  auto expect = [&](std::string_view key) {
    std::string got;
    if (!(in >> got) || got != key)
      throw ParameterError(fmt::format("{}: expected '{}', found '{}'", path.string(), key, got));
  };
  ToyModel m;
  int version = 0;
  std::size_t p = 0;
  int diverged = 0;
  expect("toy-logistic-model");
  in >> version;
  if (version != 1) throw ParameterError(fmt::format("{}: unsupported version {}", path.string(), version));
  expect("features");
  in >> p;
  expect("bias");
  in >> m.bias;
  expect("weights");
  m.weights.resize(static_cast<Eigen::Index>(p));
  for (auto& w : m.weights) in >> w;
  expect("momentum");
  in >> m.hp.momentum;
  expect("learning_rate");
  in >> m.hp.learning_rate;
  expect("epochs");
  in >> m.hp.epochs;
  expect("l2");
  in >> m.hp.l2;
  expect("diverged");
  in >> diverged;
  if (!in) throw ParameterError(fmt::format("{}: truncated model file", path.string()));
  m.diverged = diverged != 0;
  return m;
}

}  // namespace mfo::tune
