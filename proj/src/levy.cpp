#include "mfo/levy.hpp"

#include <numbers>

#include <fmt/format.h>

#include "mfo/errors.hpp"

namespace mfo {

double levy_sigma_x(double alpha) {
  if (!(alpha > 0.3 && alpha <= 1.99))
    throw ParameterError(fmt::format("Levy index alpha={} outside (0.3, 1.99]", alpha));
  const double num = std::tgamma(1.0 + alpha) * std::sin(std::numbers::pi * alpha / 2.0);
  const double den = std::tgamma((1.0 + alpha) / 2.0) * alpha * std::pow(2.0, (alpha - 1.0) / 2.0);
  return std::pow(num / den, 1.0 / alpha);
}

LevySampler LevySampler::make(double alpha, double scale) {
  LevySampler s;
  s.alpha = alpha;
  s.scale = scale;
  s.sigma_x = levy_sigma_x(alpha);
  s.sigma_y = 1.0;
  return s;
}

Matrix levy_matrix(std::size_t rows, std::size_t cols, const LevySampler& sampler, Rng& rng) {
  if (rows == 0 || cols == 0) throw ParameterError("levy_matrix needs rows, cols >= 1");
  return levy_matrix_with(rows, cols, sampler, [&rng] { return rng.normal(); });
}

}  // namespace mfo
