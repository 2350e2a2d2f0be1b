#include "mfo/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "mfo/errors.hpp"

namespace mfo::bench {
namespace {

using std::numbers::pi;
using X = std::span<const double>;

double sq(double v) { return v * v; }

// --- Unimodal ---------------------------------------------------------------

double f1(X x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double f2(X x) {
  double s = 0.0;
  double p = 1.0;
  for (double v : x) {
    s += std::abs(v);
    p *= std::abs(v);
  }
  return s + p;
}

double f3(X x) {
  double s = 0.0;
  double prefix = 0.0;
  for (double v : x) {
    prefix += v;
    s += prefix * prefix;
  }
  return s;
}

double f4(X x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double f5(X x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    s += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(x[i] - 1.0);
  return s;
}

double f6(X x) {
  double s = 0.0;
  for (double v : x) s += sq(std::floor(v + 0.5));
  return s;
}

double f7(X x, Rng* noise) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * sq(sq(x[i]));
  return s + (noise != nullptr ? noise->uniform() : 0.0);
}

// --- Multimodal -------------------------------------------------------------

double f8(X x) {
  double s = 0.0;
  for (double v : x) s += -v * std::sin(std::sqrt(std::abs(v)));
  return s;
}

double f9(X x) {
  double s = 0.0;
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * pi * v) + 10.0;
  return s;
}

double f10(X x) {
  const double n = static_cast<double>(x.size());
  double sq_sum = 0.0;
  double cos_sum = 0.0;
  for (double v : x) {
    sq_sum += v * v;
    cos_sum += std::cos(2.0 * pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq_sum / n)) - std::exp(cos_sum / n) + 20.0 +
         std::numbers::e;
}

double f11(X x) {
  double s = 0.0;
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] * x[i];
    p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return s / 4000.0 - p + 1.0;
}

double penalty_u(double x, double a, double k, double m) {
  if (x > a) return k * std::pow(x - a, m);
  if (x < -a) return k * std::pow(-x - a, m);
  return 0.0;
}

double f12(X x) {
  const std::size_t n = x.size();
  auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
  double s = 10.0 * sq(std::sin(pi * y(0)));
  for (std::size_t i = 0; i + 1 < n; ++i)
    s += sq(y(i) - 1.0) * (1.0 + 10.0 * sq(std::sin(pi * y(i + 1))));
  s += sq(y(n - 1) - 1.0);
  double pen = 0.0;
  for (double v : x) pen += penalty_u(v, 10.0, 100.0, 4.0);
  return pi / static_cast<double>(n) * s + pen;
}

double f13(X x) {
  const std::size_t n = x.size();
  double s = sq(std::sin(3.0 * pi * x[0]));
  for (std::size_t i = 0; i + 1 < n; ++i)
    s += sq(x[i] - 1.0) * (1.0 + sq(std::sin(3.0 * pi * x[i + 1])));
  s += sq(x[n - 1] - 1.0) * (1.0 + sq(std::sin(2.0 * pi * x[n - 1])));
  double pen = 0.0;
  for (double v : x) pen += penalty_u(v, 5.0, 100.0, 4.0);
  return 0.1 * s + pen;
}

// --- Fixed dimension --------------------------------------------------------

double f14(X x) {
  static constexpr std::array<double, 5> grid{-32.0, -16.0, 0.0, 16.0, 32.0};
  double s = 1.0 / 500.0;
  for (int j = 0; j < 25; ++j) {
    const double a1 = grid[static_cast<std::size_t>(j % 5)];
    const double a2 = grid[static_cast<std::size_t>(j / 5)];
    s += 1.0 / (j + 1 + std::pow(x[0] - a1, 6) + std::pow(x[1] - a2, 6));
  }
  return 1.0 / s;
}

double f15(X x) {
  static constexpr std::array<double, 11> a{0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                                            0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
  static constexpr std::array<double, 11> inv_b{0.25, 0.5, 1, 2, 4, 6, 8, 10, 12, 14, 16};
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double b = 1.0 / inv_b[i];
    s += sq(a[i] - x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]));
  }
  return s;
}

double f16(X x) {
  const double a = x[0];
  const double b = x[1];
  return 4.0 * a * a - 2.1 * std::pow(a, 4) + std::pow(a, 6) / 3.0 + a * b - 4.0 * b * b +
         4.0 * std::pow(b, 4);
}

double f17(X x) {
  return sq(x[1] - 5.1 / (4.0 * pi * pi) * x[0] * x[0] + 5.0 / pi * x[0] - 6.0) +
         10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(x[0]) + 10.0;
}

double f18(X x) {
  const double a = x[0];
  const double b = x[1];
  const double p = 1.0 + sq(a + b + 1.0) *
                             (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
  const double q = 30.0 + sq(2.0 * a - 3.0 * b) *
                              (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
  return p * q;
}

constexpr std::array<double, 4> kHartmannC{1.0, 1.2, 3.0, 3.2};

double f19(X x) {
  static constexpr double a[4][3] = {{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}};
  static constexpr double p[4][3] = {{0.3689, 0.1170, 0.2673},
                                     {0.4699, 0.4387, 0.7470},
                                     {0.1091, 0.8732, 0.5547},
                                     {0.03815, 0.5743, 0.8828}};
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    double e = 0.0;
    for (int j = 0; j < 3; ++j) e += a[i][j] * sq(x[static_cast<std::size_t>(j)] - p[i][j]);
    s += kHartmannC[static_cast<std::size_t>(i)] * std::exp(-e);
  }
  return -s;
}

double f20(X x) {
  static constexpr double a[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                     {0.05, 10, 17, 0.1, 8, 14},
                                     {3, 3.5, 1.7, 10, 17, 8},
                                     {17, 8, 0.05, 10, 0.1, 14}};
  static constexpr double p[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                     {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                     {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                     {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    double e = 0.0;
    for (int j = 0; j < 6; ++j) e += a[i][j] * sq(x[static_cast<std::size_t>(j)] - p[i][j]);
    s += kHartmannC[static_cast<std::size_t>(i)] * std::exp(-e);
  }
  return -s;
}

double shekel(X x, std::size_t m) {
  static constexpr double a[10][4] = {{4, 4, 4, 4}, {1, 1, 1, 1}, {8, 8, 8, 8}, {6, 6, 6, 6},
                                      {3, 7, 3, 7}, {2, 9, 2, 9}, {5, 5, 3, 3}, {8, 1, 8, 1},
                                      {6, 2, 6, 2}, {7, 3.6, 7, 3.6}};
  static constexpr std::array<double, 10> c{0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < 4; ++j) d2 += sq(x[j] - a[i][j]);
    s += 1.0 / (d2 + c[i]);
  }
  return -s;
}

// --- Table ----------------------------------------------------------------

Eval pure(double (*f)(X)) {
  return [f](X x, Rng*) { return f(x); };
}

std::function<std::vector<double>(std::size_t)> constant_point(double v) {
  return [v](std::size_t d) { return std::vector<double>(d, v); };
}

std::function<std::vector<double>(std::size_t)> fixed_point(std::vector<double> p) {
  return [p = std::move(p)](std::size_t) { return p; };
}

BenchmarkFunction scalable(std::string id, std::string name, Category cat, double lo, double hi,
                           double fmin, Eval eval, double minimizer_coord) {
  BenchmarkFunction f;
  f.id = std::move(id);
  f.name = std::move(name);
  f.category = cat;
  f.dim = 30;
  f.lower = lo;
  f.upper = hi;
  f.f_min = fmin;
  f.eval = std::move(eval);
  f.minimizer = constant_point(minimizer_coord);
  return f;
}

BenchmarkFunction fixed(std::string id, std::string name, std::size_t dim, double lo, double hi,
                        double fmin, double (*eval)(X), std::vector<double> minimizer) {
  BenchmarkFunction f;
  f.id = std::move(id);
  f.name = std::move(name);
  f.category = Category::FixedDimension;
  f.dim = dim;
  f.lower = lo;
  f.upper = hi;
  f.fixed_dim = true;
  f.f_min = fmin;
  f.eval = pure(eval);
  f.minimizer = fixed_point(std::move(minimizer));
  return f;
}

std::vector<BenchmarkFunction> builtin_functions() {
  using C = Category;
  std::vector<BenchmarkFunction> v;
  v.push_back(scalable("F1", "Sphere", C::Unimodal, -100, 100, 0.0, pure(f1), 0.0));
  v.push_back(scalable("F2", "Schwefel 2.22", C::Unimodal, -10, 10, 0.0, pure(f2), 0.0));
  v.push_back(scalable("F3", "Schwefel 1.2", C::Unimodal, -100, 100, 0.0, pure(f3), 0.0));
  v.push_back(scalable("F4", "Schwefel 2.21", C::Unimodal, -100, 100, 0.0, pure(f4), 0.0));
  v.push_back(scalable("F5", "Rosenbrock", C::Unimodal, -30, 30, 0.0, pure(f5), 1.0));
  v.push_back(scalable("F6", "Step", C::Unimodal, -100, 100, 0.0, pure(f6), 0.0));
  v.push_back(scalable("F7", "Quartic with noise", C::Unimodal, -1.28, 1.28, 0.0,
                       [](X x, Rng* noise) { return f7(x, noise); }, 0.0));

  auto schwefel = scalable("F8", "Schwefel 2.26", C::Multimodal, -500, 500, -418.9829, pure(f8),
                           420.96874603892866);
  schwefel.f_min_per_dim = true;
  v.push_back(std::move(schwefel));
  v.push_back(scalable("F9", "Rastrigin", C::Multimodal, -5.12, 5.12, 0.0, pure(f9), 0.0));
  v.push_back(scalable("F10", "Ackley", C::Multimodal, -32, 32, 0.0, pure(f10), 0.0));
  v.push_back(scalable("F11", "Griewank", C::Multimodal, -600, 600, 0.0, pure(f11), 0.0));
  v.push_back(scalable("F12", "Penalized 1", C::Multimodal, -50, 50, 0.0, pure(f12), -1.0));
  v.push_back(scalable("F13", "Penalized 2", C::Multimodal, -50, 50, 0.0, pure(f13), 1.0));

  v.push_back(fixed("F14", "Shekel foxholes", 2, -65, 65, 1.0, f14,
                    {-31.97833495762107, -31.978328496668112}));
  v.push_back(fixed("F15", "Kowalik", 4, -5, 5, 0.00030, f15,
                    {0.19283345304275123, 0.1908362402759693, 0.12311729907602714,
                     0.13576599033984196}));
  v.push_back(fixed("F16", "Six-hump camel back", 2, -5, 5, -1.0316, f16,
                    {0.08984201652927098, -0.7126564013807202}));
  v.push_back(fixed("F17", "Branin", 2, -5, 5, 0.398, f17, {pi, 2.275}));
  v.push_back(fixed("F18", "Goldstein-Price", 2, -2, 2, 3.0, f18, {0.0, -1.0}));
  // Hartmann 3 lives on [0, 1]^3; the optimum lies outside [1, 3]^3.
  v.push_back(fixed("F19", "Hartmann 3", 3, 0, 1, -3.86, f19,
                    {0.11461432786938144, 0.5556488498545934, 0.8525469529266695}));
  v.push_back(fixed("F20", "Hartmann 6", 6, 0, 1, -3.32, f20,
                    {0.2016895128922905, 0.15001069323742897, 0.4768739767611768,
                     0.2753324307839508, 0.31165161848739587, 0.6573005349989142}));
  v.push_back(fixed("F21", "Shekel 5", 4, 0, 10, -10.1532, [](X x) { return shekel(x, 5); },
                    {4.000037152376549, 4.000133278657566, 4.000037151057555, 4.000133277090425}));
  v.push_back(fixed("F22", "Shekel 7", 4, 0, 10, -10.4028, [](X x) { return shekel(x, 7); },
                    {4.000572914277084, 4.000689366040889, 3.9994897107938447, 3.9996061600067923}));
  v.push_back(fixed("F23", "Shekel 10", 4, 0, 10, -10.5363, [](X x) { return shekel(x, 10); },
                    {4.000746530253313, 4.000592936779709, 3.9996633957714787, 3.9995097993299975}));
  return v;
}

}  // namespace

std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::Unimodal:
      return "unimodal";
    case Category::Multimodal:
      return "multimodal";
    case Category::FixedDimension:
      return "fixed-dimension";
    case Category::Composite:
      return "composite";
  }
  return "unknown";
}

std::size_t BenchmarkFunction::resolve_dim(std::size_t requested) const {
  if (requested == 0 || fixed_dim) return dim;
  return requested;
}

SearchSpace BenchmarkFunction::space(std::size_t requested_dim) const {
  return SearchSpace::uniform(resolve_dim(requested_dim), lower, upper);
}

double BenchmarkFunction::optimum(std::size_t requested_dim) const {
  return f_min_per_dim ? f_min * static_cast<double>(resolve_dim(requested_dim)) : f_min;
}

std::optional<std::vector<double>> BenchmarkFunction::reference_point(std::size_t requested_dim) const {
  if (!minimizer) return std::nullopt;
  return minimizer(resolve_dim(requested_dim));
}

std::string canonical_id(std::string_view id) {
  std::string s(id);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

bool is_composite_slot(std::string_view id) {
  const std::string s = canonical_id(id);
  for (int k = 24; k <= 29; ++k)
    if (s == fmt::format("F{}", k)) return true;
  return false;
}

Registry Registry::with_builtins() {
  Registry r;
  r.functions_ = builtin_functions();
  return r;
}

bool Registry::contains(std::string_view id) const {
  const std::string key = canonical_id(id);
  return std::any_of(functions_.begin(), functions_.end(),
                     [&](const BenchmarkFunction& f) { return f.id == key; });
}

const BenchmarkFunction& Registry::lookup(std::string_view id) const {
  const std::string key = canonical_id(id);
  for (const auto& f : functions_)
    if (f.id == key) return f;
  if (is_composite_slot(key))
    throw LookupError(fmt::format("{}: composite pack not installed", key));
  throw LookupError(fmt::format("unknown benchmark function '{}'", id));
}

double Registry::evaluate(std::string_view id, std::span<const double> x, Rng* noise) const {
  const auto& f = lookup(id);
  if (x.empty()) throw ParameterError(fmt::format("{}: empty input", f.id));
  if (f.fixed_dim && x.size() != f.dim)
    throw ParameterError(fmt::format("{} is fixed at d={}, got {} values", f.id, f.dim, x.size()));
  return f.eval(x, noise);
}

void Registry::register_composite(std::vector<BenchmarkFunction> pack) {
  for (std::size_t i = 0; i < pack.size(); ++i) {
    pack[i].id = canonical_id(pack[i].id);
    if (contains(pack[i].id))
      throw LookupError(fmt::format("benchmark id collision: {} already registered", pack[i].id));
    for (std::size_t k = 0; k < i; ++k)
      if (pack[k].id == pack[i].id)
        throw LookupError(fmt::format("benchmark id collision: {} appears twice in pack", pack[i].id));
    if (!pack[i].eval) throw ParameterError(fmt::format("{}: composite has no evaluator", pack[i].id));
  }
  for (auto& f : pack) {
    f.category = Category::Composite;
    functions_.push_back(std::move(f));
  }
}

std::vector<std::string> Registry::ids() const {
  std::vector<std::string> out;
  out.reserve(functions_.size());
  for (const auto& f : functions_) out.push_back(f.id);
  return out;
}

Registry& default_registry() {
  static Registry registry = Registry::with_builtins();
  return registry;
}

Objective make_objective(const BenchmarkFunction& fn, std::uint64_t noise_seed) {
  auto noise = std::make_shared<Rng>(noise_seed);
  return [eval = fn.eval, noise](std::span<const double> x) { return eval(x, noise.get()); };
}

}  // namespace mfo::bench
