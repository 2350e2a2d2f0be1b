#include "mfo/baselines.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>

#include "mfo/engine.hpp"
#include "mfo/errors.hpp"
#include "mfo/rng.hpp"

namespace mfo {
namespace {

using Clock = std::chrono::steady_clock;

void check_sizes(std::size_t pop, std::size_t iters) {
  if (pop < 2) throw ParameterError("population size must be >= 2");
  if (iters < 1) throw ParameterError("max_iter must be >= 1");
}

void record(RunResult& r, double best, const Matrix& pos, const Vector& fit, bool history) {
  r.convergence.push_back(best);
  r.mean_fitness.push_back(fit.mean());
  r.trajectory.push_back(pos(0, 0));
  if (history) r.history.push_back(pos);
}

}  // namespace

RunResult run_pso(const PsoConfig& config, const SearchSpace& space, const Objective& objective) {
  check_sizes(config.pop_size, config.max_iter);
  const auto start = Clock::now();
  const auto n = static_cast<Eigen::Index>(config.pop_size);
  const auto d = static_cast<Eigen::Index>(space.dim());

  Rng rng(config.seed);
  RunResult result;
  Matrix x = detail::initial_positions(space, config.pop_size, config.initial_population, rng);
  Matrix v = Matrix::Zero(n, d);
  Vector vmax(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    vmax[j] = config.velocity_clamp * (space.upper(jj) - space.lower(jj));
  }

  Vector fit(n);
  for (Eigen::Index i = 0; i < n; ++i) fit[i] = detail::checked_eval(objective, row_span(x, i));
  result.evaluations += config.pop_size;

  Matrix pbest = x;
  Vector pbest_fit = fit;
  Eigen::Index g = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (pbest_fit[i] < pbest_fit[g]) g = i;
  Vector gbest = pbest.row(g).transpose();
  double gbest_fit = pbest_fit[g];

  for (std::size_t l = 1; l <= config.max_iter; ++l) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        double vij = config.inertia * v(i, j) + config.c1 * r1 * (pbest(i, j) - x(i, j)) +
                     config.c2 * r2 * (gbest[j] - x(i, j));
        vij = std::clamp(vij, -vmax[j], vmax[j]);
        v(i, j) = vij;
        x(i, j) += vij;
      }
      repair(row_span(x, i), space);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      fit[i] = detail::checked_eval(objective, row_span(x, i));
      if (fit[i] < pbest_fit[i]) {
        pbest_fit[i] = fit[i];
        pbest.row(i) = x.row(i);
        if (fit[i] < gbest_fit) {
          gbest_fit = fit[i];
          gbest = x.row(i).transpose();
        }
      }
    }
    result.evaluations += config.pop_size;
    record(result, gbest_fit, x, fit, config.record_history);
  }

  result.best_fitness = gbest_fit;
  result.best_position.assign(gbest.begin(), gbest.end());
  result.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

RunResult run_gwo(const GwoConfig& config, const SearchSpace& space, const Objective& objective) {
  check_sizes(config.pop_size, config.max_iter);
  const auto start = Clock::now();
  const auto n = static_cast<Eigen::Index>(config.pop_size);
  const auto d = static_cast<Eigen::Index>(space.dim());

  Rng rng(config.seed);
  RunResult result;
  Matrix x = detail::initial_positions(space, config.pop_size, config.initial_population, rng);
  Vector fit(n);

  // alpha, beta, delta: the three best positions seen so far.
  std::array<Vector, 3> leader{Vector::Zero(d), Vector::Zero(d), Vector::Zero(d)};
  std::array<double, 3> leader_fit{std::numeric_limits<double>::infinity(),
                                   std::numeric_limits<double>::infinity(),
                                   std::numeric_limits<double>::infinity()};

  auto evaluate_and_rank = [&] {
    for (Eigen::Index i = 0; i < n; ++i) {
      fit[i] = detail::checked_eval(objective, row_span(x, i));
      const double f = fit[i];
      if (f < leader_fit[0]) {
        leader_fit = {f, leader_fit[0], leader_fit[1]};
        leader = {x.row(i).transpose(), leader[0], leader[1]};
      } else if (f < leader_fit[1]) {
        leader_fit = {leader_fit[0], f, leader_fit[1]};
        leader = {leader[0], x.row(i).transpose(), leader[1]};
      } else if (f < leader_fit[2]) {
        leader_fit[2] = f;
        leader[2] = x.row(i).transpose();
      }
    }
    result.evaluations += config.pop_size;
  };

  evaluate_and_rank();
  const double T = static_cast<double>(config.max_iter);
  for (std::size_t l = 1; l <= config.max_iter; ++l) {
    const double a = config.a_start + (config.a_end - config.a_start) * static_cast<double>(l - 1) / T;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < leader.size(); ++k) {
          // With two wolves there is no delta yet; alpha stands in.
          const Vector& lead = std::isfinite(leader_fit[k]) ? leader[k] : leader[0];
          const double A = 2.0 * a * rng.uniform() - a;
          const double C = 2.0 * rng.uniform();
          const double dist = std::abs(C * lead[j] - x(i, j));
          sum += lead[j] - A * dist;
        }
        x(i, j) = sum / 3.0;
      }
      repair(row_span(x, i), space);
    }
    evaluate_and_rank();
    record(result, leader_fit[0], x, fit, config.record_history);
  }

  result.best_fitness = leader_fit[0];
  result.best_position.assign(leader[0].begin(), leader[0].end());
  result.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace mfo
