#include "mfo/chaos.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "mfo/errors.hpp"

namespace mfo {
namespace {

constexpr std::array<std::pair<MapKind, std::string_view>, 9> kNames{{
    {MapKind::Logistic, "logistic"},
    {MapKind::Tent, "tent"},
    {MapKind::Sinusoidal, "sinusoidal"},
    {MapKind::Circle, "circle"},
    {MapKind::Gauss, "gauss"},
    {MapKind::Chebyshev, "chebyshev"},
    {MapKind::Singer, "singer"},
    {MapKind::Sine, "sine"},
    {MapKind::Iterative, "iterative"},
}};

bool in_domain(const ChaoticMap& m) {
  const double x = m.state;
  if (!std::isfinite(x)) return false;
  switch (m.kind) {
    case MapKind::Chebyshev:
      return x >= -1.0 && x <= 1.0;
    case MapKind::Iterative:
      return x >= -1.0 && x <= 1.0 && x != 0.0;
    default:
      return x >= 0.0 && x <= 1.0;
  }
}

double raw_step(const ChaoticMap& m) {
  constexpr double pi = std::numbers::pi;
  const double x = m.state;
  switch (m.kind) {
    case MapKind::Logistic:
      return m.a * x * (1.0 - x);
    case MapKind::Tent:
      return x < 0.5 ? 2.0 * x : 2.0 * (1.0 - x);
    case MapKind::Sinusoidal:
      return m.a * x * x * std::sin(pi * x);
    case MapKind::Circle: {
      const double y = x + m.b - (m.a / (2.0 * pi)) * std::sin(2.0 * pi * x);
      const double r = std::fmod(y, 1.0);
      return r < 0.0 ? r + 1.0 : r;
    }
    case MapKind::Gauss:
      return x == 0.0 ? 0.0 : std::fmod(1.0 / x, 1.0);
    case MapKind::Chebyshev:
      return std::cos(m.a * std::acos(x));
    case MapKind::Singer:
      return 7.86 * x - 23.31 * x * x + 28.75 * x * x * x - 13.302875 * x * x * x * x;
    case MapKind::Sine:
      return (m.a / 4.0) * std::sin(pi * x);
    case MapKind::Iterative:
      return std::sin(m.a * pi / x);
  }
  return x;
}

double nudge_absorbing(MapKind kind, double x) {
  switch (kind) {
    case MapKind::Logistic:
    case MapKind::Tent:
    case MapKind::Sinusoidal:
    case MapKind::Singer:
    case MapKind::Sine:
    case MapKind::Iterative:
      return x == 0.0 ? kAbsorbingNudge : x;
    case MapKind::Chebyshev:
      if (x == 1.0) return 1.0 - kAbsorbingNudge;
      if (x == -1.0) return -1.0 + kAbsorbingNudge;
      return x;
    default:
      return x;
  }
}

}  // namespace

std::string_view to_string(MapKind kind) noexcept {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

MapKind parse_map_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& [k, n] : kNames)
    if (n == lower) return k;
  throw ParameterError(fmt::format("unknown chaotic map '{}'", name));
}

ChaoticMap ChaoticMap::make(MapKind kind, double x0) {
  ChaoticMap m;
  m.kind = kind;
  m.state = x0;
  switch (kind) {
    case MapKind::Logistic:
    case MapKind::Chebyshev:
    case MapKind::Sine:
      m.a = 4.0;
      break;
    case MapKind::Sinusoidal:
      m.a = 2.3;
      break;
    case MapKind::Circle:
      m.a = 0.5;
      m.b = 0.2;
      break;
    case MapKind::Iterative:
      m.a = 0.7;
      break;
    case MapKind::Tent:
    case MapKind::Gauss:
    case MapKind::Singer:
      m.a = 0.0;
      break;
  }
  return m;
}

ChaoticStep chaotic_next(const ChaoticMap& map) {
  if (!in_domain(map))
    throw DomainError(fmt::format("{} map: state {} outside native domain", to_string(map.kind),
                                  map.state));
  ChaoticMap next = map;
  next.state = nudge_absorbing(map.kind, raw_step(map));
  double value = map.native_symmetric() ? (next.state + 1.0) / 2.0 : next.state;
  value = std::clamp(value, 0.0, 1.0);
  return {value, next};
}

}  // namespace mfo
