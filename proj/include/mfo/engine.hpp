#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mfo/chaos.hpp"
#include "mfo/matrix.hpp"
#include "mfo/rng.hpp"
#include "mfo/types.hpp"

namespace mfo {

enum class Algorithm { MFO, NLCMFO };

std::string_view to_string(Algorithm a) noexcept;

/// Moth population: positions M (n x d) and costs OM (n).
struct Swarm {
  Matrix positions;
  Vector fitness;  // NaN until evaluated
};

/// Best-so-far archive: positions F (n x d) with costs OF sorted ascending.
struct FlameArchive {
  Matrix positions;
  Vector fitness;

  bool empty() const noexcept { return fitness.size() == 0; }
};

struct EngineConfig {
  Algorithm algorithm = Algorithm::NLCMFO;
  std::size_t pop_size = 30;
  std::size_t max_iter = 500;
  std::uint64_t seed = 1;
  double spiral_b = 1.0;
  double levy_alpha = 1.5;
  MapKind map_primary = MapKind::Sine;
  MapKind map_secondary = MapKind::Chebyshev;
  double map_initial_state = 0.7;
  std::size_t stagnation_window = 5;
  bool record_history = false;
  /// Replaces the random initial population when set (n x d).
  std::optional<Matrix> initial_population;
};

// ---------------------------------------------------------------------------
// Building blocks of one iteration. Each takes its random draws explicitly so
// it can be checked in isolation.

/// M(i, j) = (ub(j) - lb(j)) * U[0, 1) + lb(j); fitness left as NaN.
Swarm init_population(const SearchSpace& space, std::size_t n, Rng& rng);

/// Merges archive and swarm rows (archive first, stable sort ascending) and
/// keeps the best n. An empty archive yields the sorted swarm. Throws
/// ObjectiveError if any swarm fitness is NaN.
FlameArchive update_flames(const FlameArchive& archive, const Swarm& swarm);

/// round(N - l * (N - 1) / T), half away from zero, floored at 1.
std::size_t flame_count(std::size_t max_flames, std::size_t iteration, std::size_t max_iter);

/// a = -1 - l / T.
inline double convergence_constant(std::size_t iteration, std::size_t max_iter) {
  return -1.0 - static_cast<double>(iteration) / static_cast<double>(max_iter);
}

/// t = (a - 1) * u + 1 for u in [0, 1).
inline double t_mfo(double a, double u) { return (a - 1.0) * u + 1.0; }

/// t = |(a - 1) * cm + 1| for a chaotic value cm in [0, 1].
double t_nlcmfo(double a, double cm);

/// w = 4 * exp(-(6 * l / T)^2).
double nonlinear_weight(std::size_t iteration, std::size_t max_iter);

/// S_j = |F_j - M_j| * e^(b t) * cos(2 pi t) + F_j.
void spiral_step_mfo(std::span<const double> moth, std::span<const double> flame, double b,
                     double t, std::span<double> out);
std::vector<double> spiral_step_mfo(std::span<const double> moth, std::span<const double> flame,
                                    double b, double t);

/// S_j = w * L_j * |F_j - M_j| * e^(b t) * cos(2 pi t) + L_j * F_j.
/// The Lévy factor also scales the flame term, so S != F even when D = 0.
void spiral_step_nlcmfo(std::span<const double> moth, std::span<const double> flame, double b,
                        double t, double w, std::span<const double> levy_row,
                        std::span<double> out);
std::vector<double> spiral_step_nlcmfo(std::span<const double> moth,
                                       std::span<const double> flame, double b, double t,
                                       double w, std::span<const double> levy_row);

/// Moths ranked below flame_no follow their own flame, the rest the worst survivor.
inline std::size_t assign_flame(std::size_t moth_index, std::size_t flame_no) {
  return moth_index < flame_no ? moth_index : flame_no - 1;
}

/// Clamps every coordinate into [lb, ub].
void repair(std::span<double> position, const SearchSpace& space);
std::vector<double> repair(std::vector<double> position, const SearchSpace& space);

/**
 * Dual-map chaotic source for NLCMFO.
 *
 * next() advances only the active map. observe() counts iterations whose
 * flame costs are bit-for-bit unchanged; after `window` of them in a row the
 * active map toggles and the counter restarts. Any change resets the counter.
 */
class MapScheduler {
 public:
  MapScheduler(ChaoticMap primary, ChaoticMap secondary, std::size_t window);

  double next();
  void observe(std::span<const double> flame_fitness_now,
               std::span<const double> flame_fitness_prev);

  bool primary_active() const noexcept { return active_ == 0; }
  MapKind active_kind() const noexcept { return maps_[active_].kind; }
  std::size_t stagnant_iterations() const noexcept { return counter_; }
  std::size_t switches() const noexcept { return switches_; }

 private:
  ChaoticMap maps_[2];
  std::size_t active_ = 0;
  std::size_t window_;
  std::size_t counter_ = 0;
  std::size_t switches_ = 0;
};

/// Full optimization run. Throws ObjectiveError (naming the position) when
/// the objective returns NaN or infinity; ParameterError on invalid config.
RunResult run(const EngineConfig& config, const SearchSpace& space, const Objective& objective);

// Shared helpers for every optimizer's telemetry and evaluation contract.
namespace detail {

/// Evaluates `x`; non-finite results throw ObjectiveError naming `x`.
double checked_eval(const Objective& objective, std::span<const double> x);

Matrix initial_positions(const SearchSpace& space, std::size_t n,
                         const std::optional<Matrix>& preset, Rng& rng);

}  // namespace detail

}  // namespace mfo
