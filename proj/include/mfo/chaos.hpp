#pragma once

#include <string>
#include <string_view>

namespace mfo {

enum class MapKind {
  Logistic,
  Tent,
  Sinusoidal,
  Circle,
  Gauss,
  Chebyshev,
  Singer,
  Sine,
  Iterative,
};

std::string_view to_string(MapKind kind) noexcept;
/// Case-insensitive; throws ParameterError on an unknown name.
MapKind parse_map_kind(std::string_view name);

/**
 * One-dimensional chaotic recurrence X_{n+1} = f(X_n).
 *
 * Default constants: Logistic a=4, Sinusoidal a=2.3, Circle a=0.5 b=0.2,
 * Chebyshev a=4, Sine a=4, Iterative a=0.7. Singer uses its printed
 * polynomial with no extra multiplier. Tent and Gauss take no constants.
 *
 * Native domains: [-1, 1] for Chebyshev and Iterative (Iterative excludes 0),
 * [0, 1] for all others.
 */
struct ChaoticMap {
  MapKind kind = MapKind::Sine;
  double a = 4.0;
  double b = 0.0;
  double state = 0.7;

  /// Map of the given kind with its default constants, started at x0.
  static ChaoticMap make(MapKind kind, double x0);

  bool native_symmetric() const noexcept {
    return kind == MapKind::Chebyshev || kind == MapKind::Iterative;
  }
};

struct ChaoticStep {
  double value;    // next state normalized into [0, 1]
  ChaoticMap map;  // carries the raw next state
};

/**
 * Advances the map one step. Maps native to [-1, 1] are normalized by
 * (x + 1) / 2; the others pass through.
 *
 * A raw next state sitting exactly on an absorbing point is nudged by 1e-7
 * (0 -> 1e-7 for Logistic, Tent, Sinusoidal, Singer, Sine and Iterative;
 * +-1 -> +-(1 - 1e-7) for Chebyshev). Gauss keeps its literal X=0 -> 0 rule.
 *
 * Throws DomainError naming the map when the current state is outside its
 * native domain.
 */
ChaoticStep chaotic_next(const ChaoticMap& map);

inline constexpr double kAbsorbingNudge = 1e-7;

}  // namespace mfo
