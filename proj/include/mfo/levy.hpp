#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "mfo/matrix.hpp"
#include "mfo/rng.hpp"

namespace mfo {

/// Mantegna scale sigma_x for stability index alpha in (0.3, 1.99].
/// Throws ParameterError outside that range.
double levy_sigma_x(double alpha);

/**
 * Mantegna Lévy-flight step: scale * x / |y|^(1/alpha) with
 * x ~ N(0, sigma_x^2) and y ~ N(0, 1).
 */
struct LevySampler {
  double alpha = 1.5;
  double scale = 0.05;
  double sigma_x = 0.0;
  double sigma_y = 1.0;

  static LevySampler make(double alpha, double scale = 0.05);

  /// Step for given x and y draws (x already carries sigma_x). y must be non-zero.
  double from_draws(double x, double y) const { return scale * x / std::pow(std::abs(y), 1.0 / alpha); }

  /// `standard_normal` is any callable returning N(0, 1) variates. An exact
  /// zero y is redrawn.
  template <class NormalSource>
  double sample_with(NormalSource&& standard_normal) const {
    const double x = sigma_x * standard_normal();
    double y = sigma_y * standard_normal();
    while (y == 0.0) y = sigma_y * standard_normal();
    return from_draws(x, y);
  }

  double sample(Rng& rng) const {
    return sample_with([&rng] { return rng.normal(); });
  }
};

/// rows x cols matrix of independent draws, filled row-major.
template <class NormalSource>
Matrix levy_matrix_with(std::size_t rows, std::size_t cols, const LevySampler& sampler,
                        NormalSource&& standard_normal) {
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  double* p = out.data();
  for (std::size_t k = 0; k < rows * cols; ++k) p[k] = sampler.sample_with(standard_normal);
  return out;
}

Matrix levy_matrix(std::size_t rows, std::size_t cols, const LevySampler& sampler, Rng& rng);

}  // namespace mfo
