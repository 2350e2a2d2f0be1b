#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "mfo/matrix.hpp"

namespace mfo::tune {

/// Binary-labelled feature table with a fixed 70/30 train/test split.
struct ToyDataset {
  Matrix features;          // m x p
  std::vector<int> labels;  // 0 or 1
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t feature_count() const noexcept { return static_cast<std::size_t>(features.cols()); }
};

/**
 * Two unit-variance Gaussian blobs centred at +separation and -separation on
 * every axis. Labels are exactly balanced (class 1 = positive blob). Rows are
 * split 70/30 after a seeded shuffle. Requires m >= 40 and p >= 2.
 */
ToyDataset make_toy_dataset(std::size_t m, std::size_t p, std::uint64_t seed,
                            double separation = 1.0);

/// Seeded shuffle of 0..m-1 cut at floor(0.7 m).
void assign_split(ToyDataset& data, std::uint64_t seed);

/// CSV with header x0,...,x{p-1},label.
void write_dataset_csv(const std::filesystem::path& path, const ToyDataset& data);
/// Reads the same layout; the split is rebuilt from `seed`.
ToyDataset read_dataset_csv(const std::filesystem::path& path, std::uint64_t seed);

}  // namespace mfo::tune
