#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "mfo/matrix.hpp"
#include "mfo/types.hpp"

namespace mfo {

/// Global-best PSO. Velocities are clamped to `velocity_clamp` of each
/// coordinate's range and start at zero.
struct PsoConfig {
  double inertia = 0.5;
  double c1 = 2.0;
  double c2 = 2.0;
  double velocity_clamp = 0.2;
  std::size_t pop_size = 30;
  std::size_t max_iter = 500;
  std::uint64_t seed = 1;
  bool record_history = false;
  std::optional<Matrix> initial_population;
};

/// Grey wolf optimizer with a linear a-schedule from a_start to a_end.
struct GwoConfig {
  double a_start = 2.0;
  double a_end = 0.0;
  std::size_t pop_size = 30;
  std::size_t max_iter = 500;
  std::uint64_t seed = 1;
  bool record_history = false;
  std::optional<Matrix> initial_population;
};

RunResult run_pso(const PsoConfig& config, const SearchSpace& space, const Objective& objective);
RunResult run_gwo(const GwoConfig& config, const SearchSpace& space, const Objective& objective);

}  // namespace mfo
