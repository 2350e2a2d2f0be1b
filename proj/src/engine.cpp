#include "mfo/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mfo/errors.hpp"
#include "mfo/levy.hpp"

namespace mfo {

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::MFO:
      return "MFO";
    case Algorithm::NLCMFO:
      return "NLCMFO";
  }
  return "unknown";
}

namespace detail {

double checked_eval(const Objective& objective, std::span<const double> x) {
  const double f = objective(x);
  if (!std::isfinite(f)) {
    const std::size_t shown = std::min<std::size_t>(x.size(), 8);
    throw ObjectiveError(fmt::format("objective returned {} at position [{}{}]", f,
                                     fmt::join(x.subspan(0, shown), ", "),
                                     x.size() > shown ? ", ..." : ""));
  }
  return f;
}

Matrix initial_positions(const SearchSpace& space, std::size_t n,
                         const std::optional<Matrix>& preset, Rng& rng) {
  if (!preset) return init_population(space, n, rng).positions;
  if (static_cast<std::size_t>(preset->rows()) != n ||
      static_cast<std::size_t>(preset->cols()) != space.dim())
    throw ParameterError(fmt::format("initial population is {}x{}, expected {}x{}",
                                     preset->rows(), preset->cols(), n, space.dim()));
  Matrix m = *preset;
  for (Eigen::Index i = 0; i < m.rows(); ++i) repair(row_span(m, i), space);
  return m;
}

}  // namespace detail

Swarm init_population(const SearchSpace& space, std::size_t n, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  Swarm s;
  s.positions.resize(static_cast<Eigen::Index>(n), d);
  for (Eigen::Index i = 0; i < s.positions.rows(); ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      s.positions(i, j) = (space.upper(jj) - space.lower(jj)) * rng.uniform() + space.lower(jj);
    }
  s.fitness = Vector::Constant(static_cast<Eigen::Index>(n), std::numeric_limits<double>::quiet_NaN());
  return s;
}

FlameArchive update_flames(const FlameArchive& archive, const Swarm& swarm) {
  const Eigen::Index n = swarm.positions.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::isnan(swarm.fitness[i]))
      throw ObjectiveError(fmt::format("NaN fitness for moth {} cannot enter the flame archive", i));

  const Eigen::Index na = archive.empty() ? 0 : archive.fitness.size();
  const Eigen::Index total = na + n;
  auto cost = [&](Eigen::Index k) { return k < na ? archive.fitness[k] : swarm.fitness[k - na]; };

  std::vector<Eigen::Index> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return cost(x) < cost(y); });

  FlameArchive out;
  out.positions.resize(n, swarm.positions.cols());
  out.fitness.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Eigen::Index k = order[static_cast<std::size_t>(r)];
    out.fitness[r] = cost(k);
    if (k < na)
      out.positions.row(r) = archive.positions.row(k);
    else
      out.positions.row(r) = swarm.positions.row(k - na);
  }
  return out;
}

std::size_t flame_count(std::size_t max_flames, std::size_t iteration, std::size_t max_iter) {
  const double n = static_cast<double>(max_flames);
  const double v = std::round(n - static_cast<double>(iteration) * (n - 1.0) /
                                      static_cast<double>(max_iter));
  return v < 1.0 ? 1 : static_cast<std::size_t>(v);
}

double t_nlcmfo(double a, double cm) { return std::abs((a - 1.0) * cm + 1.0); }

double nonlinear_weight(std::size_t iteration, std::size_t max_iter) {
  const double r = 6.0 * static_cast<double>(iteration) / static_cast<double>(max_iter);
  return 4.0 * std::exp(-(r * r));
}

void spiral_step_mfo(std::span<const double> moth, std::span<const double> flame, double b,
                     double t, std::span<double> out) {
  const double spiral = std::exp(b * t) * std::cos(2.0 * std::numbers::pi * t);
  for (std::size_t j = 0; j < moth.size(); ++j)
    out[j] = std::abs(flame[j] - moth[j]) * spiral + flame[j];
}

std::vector<double> spiral_step_mfo(std::span<const double> moth, std::span<const double> flame,
                                    double b, double t) {
  std::vector<double> out(moth.size());
  spiral_step_mfo(moth, flame, b, t, out);
  return out;
}

void spiral_step_nlcmfo(std::span<const double> moth, std::span<const double> flame, double b,
                        double t, double w, std::span<const double> levy_row,
                        std::span<double> out) {
  const double spiral = std::exp(b * t) * std::cos(2.0 * std::numbers::pi * t);
  for (std::size_t j = 0; j < moth.size(); ++j)
    out[j] = w * levy_row[j] * std::abs(flame[j] - moth[j]) * spiral + levy_row[j] * flame[j];
}

std::vector<double> spiral_step_nlcmfo(std::span<const double> moth,
                                       std::span<const double> flame, double b, double t,
                                       double w, std::span<const double> levy_row) {
  std::vector<double> out(moth.size());
  spiral_step_nlcmfo(moth, flame, b, t, w, levy_row, out);
  return out;
}

void repair(std::span<double> position, const SearchSpace& space) {
  for (std::size_t j = 0; j < position.size(); ++j)
    position[j] = std::clamp(position[j], space.lower(j), space.upper(j));
}

std::vector<double> repair(std::vector<double> position, const SearchSpace& space) {
  repair(std::span<double>(position), space);
  return position;
}

MapScheduler::MapScheduler(ChaoticMap primary, ChaoticMap secondary, std::size_t window)
    : maps_{primary, secondary}, window_(window) {
  if (window == 0) throw ParameterError("stagnation window must be >= 1");
}

double MapScheduler::next() {
  auto step = chaotic_next(maps_[active_]);
  maps_[active_] = step.map;
  return step.value;
}

void MapScheduler::observe(std::span<const double> now, std::span<const double> prev) {
  const bool unchanged = now.size() == prev.size() && std::equal(now.begin(), now.end(), prev.begin());
  if (!unchanged) {
    counter_ = 0;
    return;
  }
  if (++counter_ >= window_) {
    active_ ^= 1U;
    counter_ = 0;
    ++switches_;
  }
}

RunResult run(const EngineConfig& config, const SearchSpace& space, const Objective& objective) {
  if (config.pop_size < 2) throw ParameterError("population size must be >= 2");
  if (config.max_iter < 1) throw ParameterError("max_iter must be >= 1");

  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = config.pop_size;
  const std::size_t T = config.max_iter;
  const std::size_t d = space.dim();
  const bool nlc = config.algorithm == Algorithm::NLCMFO;

  Rng rng(config.seed);
  std::optional<LevySampler> levy;
  std::optional<MapScheduler> maps;
  if (nlc) {
    levy = LevySampler::make(config.levy_alpha);
    maps.emplace(ChaoticMap::make(config.map_primary, config.map_initial_state),
                 ChaoticMap::make(config.map_secondary, config.map_initial_state),
                 config.stagnation_window);
  }

  RunResult result;
  result.convergence.reserve(T);
  result.mean_fitness.reserve(T);
  result.trajectory.reserve(T);

  Swarm swarm;
  swarm.positions = detail::initial_positions(space, n, config.initial_population, rng);
  swarm.fitness.resize(static_cast<Eigen::Index>(n));

  auto evaluate_swarm = [&] {
    for (Eigen::Index i = 0; i < swarm.positions.rows(); ++i)
      swarm.fitness[i] = detail::checked_eval(objective, row_span(swarm.positions, i));
    result.evaluations += n;
  };

  evaluate_swarm();
  FlameArchive flames = update_flames(FlameArchive{}, swarm);

  Matrix levy_rows;
  Vector prev_costs;
  for (std::size_t l = 1; l <= T; ++l) {
    const std::size_t flame_no = flame_count(n, l, T);
    const double a = convergence_constant(l, T);
    const double w = nlc ? nonlinear_weight(l, T) : 0.0;
    if (nlc) levy_rows = levy_matrix(n, d, *levy, rng);

    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto flame = row_span(flames.positions, static_cast<Eigen::Index>(assign_flame(i, flame_no)));
      auto moth = row_span(swarm.positions, ii);
      if (nlc) {
        const double t = t_nlcmfo(a, maps->next());
        spiral_step_nlcmfo(moth, flame, config.spiral_b, t, w, row_span(levy_rows, ii), moth);
      } else {
        const double t = t_mfo(a, rng.uniform());
        spiral_step_mfo(moth, flame, config.spiral_b, t, moth);
      }
      repair(moth, space);
    }

    evaluate_swarm();
    prev_costs = flames.fitness;
    flames = update_flames(flames, swarm);

    result.convergence.push_back(flames.fitness[0]);
    result.mean_fitness.push_back(swarm.fitness.mean());
    result.trajectory.push_back(swarm.positions(0, 0));
    if (config.record_history) result.history.push_back(swarm.positions);

    if (nlc)
      maps->observe({flames.fitness.data(), n}, {prev_costs.data(), n});
  }

  result.best_fitness = flames.fitness[0];
  result.best_position.assign(flames.positions.row(0).begin(), flames.positions.row(0).end());
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace mfo
