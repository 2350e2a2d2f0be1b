#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfo/rng.hpp"
#include "mfo/types.hpp"

namespace mfo::bench {

/// Benchmark formula. `noise` feeds F7's additive uniform term; nullptr
/// means a zero draw. Every other function ignores it.
using Eval = std::function<double(std::span<const double> x, Rng* noise)>;

enum class Category { Unimodal, Multimodal, FixedDimension, Composite };

std::string_view to_string(Category c) noexcept;

struct BenchmarkFunction {
  std::string id;
  std::string name;
  Category category = Category::Unimodal;
  std::size_t dim = 30;  // default (table) dimension
  double lower = -100.0;
  double upper = 100.0;
  bool fixed_dim = false;
  /// Tabulated optimum; for F8 this is the per-coordinate value.
  double f_min = 0.0;
  bool f_min_per_dim = false;
  /// Reference minimizer for a given dimension; empty when none is known.
  std::function<std::vector<double>(std::size_t)> minimizer;
  Eval eval;

  std::size_t resolve_dim(std::size_t requested) const;
  SearchSpace space(std::size_t requested_dim = 0) const;
  double optimum(std::size_t requested_dim = 0) const;
  std::optional<std::vector<double>> reference_point(std::size_t requested_dim = 0) const;
};

/**
 * Benchmark lookup table. Built-ins are F1-F23; composite functions (F24 and
 * up) are only served after a pack registers them.
 */
class Registry {
 public:
  static Registry with_builtins();

  /// Accepts "F7" or "f7". Throws LookupError for unknown ids and for
  /// F24-F29 when no composite pack has supplied them.
  const BenchmarkFunction& lookup(std::string_view id) const;
  bool contains(std::string_view id) const;

  /// Throws LookupError on unknown id and ParameterError on a dimension
  /// mismatch for fixed-dimension functions.
  double evaluate(std::string_view id, std::span<const double> x, Rng* noise = nullptr) const;

  /// Adds external functions; throws LookupError on any id collision (and
  /// then registers none of them).
  void register_composite(std::vector<BenchmarkFunction> pack);

  std::vector<std::string> ids() const;

 private:
  std::vector<BenchmarkFunction> functions_;
};

/// Process-wide registry used by the harness and CLI (built-ins plus
/// whatever packs were loaded at startup).
Registry& default_registry();

/// Upper-cased canonical id ("f3" -> "F3").
std::string canonical_id(std::string_view id);

/// True for F24-F29, the composite slots.
bool is_composite_slot(std::string_view id);

/// Wraps a benchmark as an engine objective. F7 draws its noise from a
/// private stream seeded with `noise_seed`, so runs remain reproducible.
Objective make_objective(const BenchmarkFunction& fn, std::uint64_t noise_seed);

}  // namespace mfo::bench
