#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mfo/matrix.hpp"

namespace mfo {

/// Cost function; minimized. Must be pure within a run.
using Objective = std::function<double(std::span<const double>)>;

/// Box-bounded feasible region. Invariant: lb[i] < ub[i], dim >= 1.
class SearchSpace {
 public:
  /// Throws ParameterError on size mismatch, empty bounds or lb >= ub.
  SearchSpace(std::vector<double> lower, std::vector<double> upper);

  /// Same bounds on every coordinate.
  static SearchSpace uniform(std::size_t dim, double lower, double upper);

  std::size_t dim() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double lower(std::size_t j) const { return lower_[j]; }
  double upper(std::size_t j) const { return upper_[j]; }

  bool contains(std::span<const double> x) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/**
 * Per-run output shared by every optimizer in the library.
 *
 * `convergence`, `mean_fitness` and `trajectory` hold one entry per
 * iteration (T entries). `history` is filled only when requested and then
 * holds the population after each iteration's move and repair.
 */
struct RunResult {
  std::vector<double> best_position;
  double best_fitness = 0.0;
  std::vector<double> convergence;
  std::vector<double> mean_fitness;
  std::vector<double> trajectory;
  std::vector<Matrix> history;
  double wall_time = 0.0;
  std::size_t evaluations = 0;
};

}  // namespace mfo
