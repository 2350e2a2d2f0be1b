#include "mfo/tune/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <fmt/os.h>

#include "mfo/errors.hpp"
#include "mfo/rng.hpp"

namespace mfo::tune {
namespace {

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace

void assign_split(ToyDataset& data, std::uint64_t seed) {
  const std::size_t m = data.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, 1));
  shuffle(order, rng);
  const std::size_t n_train = m * 7 / 10;
  data.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  data.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  data.seed = seed;
}

ToyDataset make_toy_dataset(std::size_t m, std::size_t p, std::uint64_t seed, double separation) {
  if (m < 40) throw ParameterError(fmt::format("toy dataset needs m >= 40, got {}", m));
  if (p < 2) throw ParameterError(fmt::format("toy dataset needs p >= 2, got {}", p));
  ToyDataset data;
  data.features.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(p));
  data.labels.resize(m);
  Rng rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    const int label = static_cast<int>(i % 2);
    data.labels[i] = label;
    const double centre = label == 1 ? separation : -separation;
    for (std::size_t j = 0; j < p; ++j)
      data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = centre + rng.normal();
  }
  assign_split(data, seed);
  return data;
}

void write_dataset_csv(const std::filesystem::path& path, const ToyDataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  const std::size_t p = data.feature_count();
  for (std::size_t j = 0; j < p; ++j) out << 'x' << j << ',';
  out << "label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < p; ++j)
      out << fmt::format("{},", data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    out << data.labels[i] << '\n';
  }
  if (!out) throw std::runtime_error(fmt::format("write failed for {}", path.string()));
}

ToyDataset read_dataset_csv(const std::filesystem::path& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw ParameterError(fmt::format("cannot open {}", path.string()));
  std::string line;
  if (!std::getline(in, line)) throw ParameterError(fmt::format("{}: empty file", path.string()));
  const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (columns < 3) throw ParameterError(fmt::format("{}: need >= 2 feature columns", path.string()));
  const std::size_t p = columns - 1;

  std::vector<double> values;
  std::vector<int> labels;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ls, cell, ',')) {
      try {
        if (col < p)
          values.push_back(std::stod(cell));
        else
          labels.push_back(std::stoi(cell));
      } catch (const std::exception&) {
        throw ParameterError(fmt::format("{}:{}: bad cell '{}'", path.string(), row, cell));
      }
      ++col;
    }
    if (col != columns)
      throw ParameterError(fmt::format("{}:{}: expected {} cells, got {}", path.string(), row, columns, col));
    if (labels.back() != 0 && labels.back() != 1)
      throw ParameterError(fmt::format("{}:{}: label must be 0 or 1", path.string(), row));
  }

  ToyDataset data;
  const auto m = static_cast<Eigen::Index>(labels.size());
  data.features = Eigen::Map<Matrix>(values.data(), m, static_cast<Eigen::Index>(p));
  data.labels = std::move(labels);
  assign_split(data, seed);
  return data;
}

}  // namespace mfo::tune
