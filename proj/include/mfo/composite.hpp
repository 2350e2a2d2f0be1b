#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mfo/benchmarks.hpp"
#include "mfo/matrix.hpp"

namespace mfo::bench {

/// One weighted component of a composition: g(M (x - shift)) * lambda + bias.
struct CompositeComponent {
  std::string base_id;  // scalable built-in, F1-F13
  double sigma = 10.0;
  double lambda = 1.0;
  double bias = 0.0;
  std::vector<double> shift;
  Matrix rotation;  // d x d; identity when the file says so
};

struct CompositeSpec {
  std::string id;
  std::string name;
  std::size_t dim = 0;
  double lower = -100.0;
  double upper = 100.0;
  double f_min = 0.0;
  std::vector<CompositeComponent> components;
};

/// Parses one definition file (format in docs/composite_packs.md).
/// Throws ParameterError with the path and offending token on bad input.
CompositeSpec parse_composite_file(const std::filesystem::path& file);

/// Builds the evaluator. Component weights follow the usual composition
/// rule w_i = exp(-|x - o_i|^2 / (2 d sigma_i^2)) / |x - o_i|, normalized.
BenchmarkFunction make_composite(const CompositeSpec& spec, const Registry& base);

/// Loads every *.txt in `dir`, sorted by filename.
std::vector<BenchmarkFunction> load_composite_pack(const std::filesystem::path& dir,
                                                   const Registry& base);

}  // namespace mfo::bench
