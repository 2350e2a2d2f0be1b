#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "mfo/benchmarks.hpp"
#include "mfo/composite.hpp"
#include "mfo/errors.hpp"

using namespace mfo;
using namespace mfo::bench;

namespace {

const Registry& reg() { return default_registry(); }

std::string fmt_id(int k) { return "F" + std::to_string(k); }

double eval_at(const std::string& id, const std::vector<double>& x) { return reg().evaluate(id, x); }

struct Optimum {
  const char* id;
  std::vector<double> x;
  double value;
};

// minimizers and values from an independent high-precision local solve
const std::vector<Optimum>& fixed_optima() {
  static const std::vector<Optimum> v{
      {"F14", {-31.97833495762107, -31.978328496668112}, 0.99800383779445},
      {"F15",
       {0.19283345304275123, 0.1908362402759693, 0.12311729907602714, 0.13576599033984196},
       0.00030748598780560557},
      {"F16", {0.08984201652927098, -0.7126564013807202}, -1.0316284534898776},
      {"F17", {std::numbers::pi, 2.275}, 0.39788735772973816},
      {"F18", {0.0, -1.0}, 3.0},
      {"F19", {0.11461432786938144, 0.5556488498545934, 0.8525469529266695}, -3.8627821478207554},
      {"F20",
       {0.2016895128922905, 0.15001069323742897, 0.4768739767611768, 0.2753324307839508,
        0.31165161848739587, 0.6573005349989142},
       -3.322368011415515},
      {"F21", {4.000037152376549, 4.000133278657566, 4.000037151057555, 4.000133277090425},
       -10.153199679058229},
      {"F22", {4.000572914277084, 4.000689366040889, 3.9994897107938447, 3.9996061600067923},
       -10.402940566818662},
      {"F23", {4.000746530253313, 4.000592936779709, 3.9996633957714787, 3.9995097993299975},
       -10.536409816692045},
  };
  return v;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mfo_bench_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Lookup, TableCharacteristics) {
  const auto& f1 = reg().lookup("F1");
  EXPECT_EQ(f1.dim, 30u);
  EXPECT_EQ(f1.lower, -100.0);
  EXPECT_EQ(f1.upper, 100.0);
  EXPECT_EQ(f1.f_min, 0.0);
  const auto& f16 = reg().lookup("f16");
  EXPECT_EQ(f16.dim, 2u);
  EXPECT_EQ(f16.lower, -5.0);
  EXPECT_EQ(f16.upper, 5.0);
  EXPECT_EQ(f16.f_min, -1.0316);
  EXPECT_EQ(reg().lookup("F15").f_min, 0.00030);
  EXPECT_EQ(reg().lookup("F21").f_min, -10.1532);
  EXPECT_NEAR(reg().lookup("F8").optimum(30), -418.9829 * 30, 1e-9);
}

TEST(Lookup, AllTwentyThreeBuiltins) {
  for (int k = 1; k <= 23; ++k) EXPECT_TRUE(reg().contains(fmt_id(k)));
  EXPECT_EQ(reg().ids().size(), 23u);
}

TEST(Lookup, CompositeSlotsNeedPack) {
  try {
    reg().lookup("F24");
    FAIL();
  } catch (const LookupError& e) {
    EXPECT_NE(std::string(e.what()).find("composite pack not installed"), std::string::npos);
  }
  EXPECT_THROW(reg().lookup("F30"), LookupError);
  EXPECT_THROW(reg().lookup("sphere"), LookupError);
}

TEST(Evaluate, OriginValues) {
  const std::vector<double> zero(30, 0.0);
  EXPECT_EQ(eval_at("F1", zero), 0.0);
  EXPECT_NEAR(eval_at("F10", zero), 0.0, 1e-15);
  EXPECT_EQ(eval_at("F11", zero), 0.0);
  EXPECT_EQ(eval_at("F7", zero), 0.0);  // noise draw forced to zero
  EXPECT_EQ(eval_at("F5", std::vector<double>(30, 1.0)), 0.0);
}

TEST(Evaluate, SchwefelAtTabulatedPoint) {
  EXPECT_NEAR(eval_at("F8", std::vector<double>(30, 420.9687)), -12569.487, 0.01);
  EXPECT_NEAR(eval_at("F8", std::vector<double>(30, 420.96874603892866)), -418.98288727243374 * 30, 1e-8);
}

TEST(Evaluate, CamelBackGridPoint) { EXPECT_NEAR(eval_at("F16", {0.08984, -0.71266}), -1.031628, 1e-5); }

TEST(Evaluate, ScalableMinimizersReachZero) {
  for (int k = 1; k <= 13; ++k) {
    if (k == 8) continue;
    const auto& f = reg().lookup(fmt_id(k));
    for (std::size_t d : {2u, 30u, 100u}) {
      const auto x = *f.reference_point(d);
      EXPECT_NEAR(f.eval(x, nullptr), 0.0, 1e-12) << f.id << " d=" << d;
    }
  }
}

TEST(Evaluate, FixedMinimizersMatchPreciseValues) {
  for (const auto& o : fixed_optima()) {
    EXPECT_NEAR(eval_at(o.id, o.x), o.value, 1e-9) << o.id;
    const auto ref = *reg().lookup(o.id).reference_point();
    for (std::size_t j = 0; j < o.x.size(); ++j) EXPECT_NEAR(ref[j], o.x[j], 1e-12) << o.id;
  }
}

TEST(Evaluate, StepAndPenaltyDetails) {
  EXPECT_EQ(eval_at("F6", {0.49, -0.5, 1.6}), 0.0 + 0.0 + 4.0);
  // F12 at x = -1 has y = 0 everywhere: (pi/n) [10 sin^2(0) + sum (0-1)^2 (1+0) + 1] = pi
  EXPECT_NEAR(eval_at("F12", std::vector<double>(3, -1.0 - 4.0 * 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(eval_at("F12", std::vector<double>(2, -5.0)), std::numbers::pi / 2 * (10 * 0 + 1 * 1 + 1), 1e-12);
  // outside |x| > a the penalty adds k (|x| - a)^m
  const double in = eval_at("F13", {1.0, 1.0});
  const double out = eval_at("F13", {6.0, 1.0});
  EXPECT_GT(out - in, 100.0 * 1.0);
}

TEST(Evaluate, FixedDimensionMismatch) {
  EXPECT_THROW(eval_at("F16", {0.0, 0.0, 0.0}), ParameterError);
  EXPECT_THROW(eval_at("F1", {}), ParameterError);
  EXPECT_NO_THROW(eval_at("F1", {1.0, 2.0, 3.0}));
}

TEST(Evaluate, NoiseIsReproducible) {
  const auto& f7 = reg().lookup("F7");
  const std::vector<double> x(30, 0.1);
  const auto a = make_objective(f7, 5);
  const auto b = make_objective(f7, 5);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(a(x), b(x));
  const double clean = f7.eval(x, nullptr);
  Rng r(1);
  const double noisy = f7.eval(x, &r);
  EXPECT_GE(noisy, clean);
  EXPECT_LT(noisy, clean + 1.0);
}

TEST(Property, NonNegativeFunctions) {
  Rng r(123);
  for (const char* id : {"F1", "F2", "F3", "F4", "F9", "F10", "F11"}) {
    const auto& f = reg().lookup(id);
    std::vector<double> x(30);
    for (int k = 0; k < 10000; ++k) {
      for (auto& v : x) v = r.uniform(f.lower, f.upper);
      ASSERT_GE(f.eval(x, nullptr), 0.0) << id;
    }
  }
}

TEST(Property, MinimizersAreLocalMinima) {
  Rng r(321);
  for (int k = 1; k <= 23; ++k) {
    const auto& f = reg().lookup(fmt_id(k));
    if (f.id == "F7") continue;  // noise-free part checked via F7's zero draw below
    const auto x0 = *f.reference_point(f.fixed_dim ? 0 : 10);
    const double f0 = f.eval(x0, nullptr);
    std::vector<double> x(x0.size());
    for (int trial = 0; trial < 1000; ++trial) {
      double norm = 0;
      std::vector<double> delta(x0.size());
      for (auto& v : delta) {
        v = r.normal();
        norm += v * v;
      }
      const double radius = 1e-3 * r.uniform();
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = x0[j] + delta[j] / std::sqrt(norm) * radius;
      ASSERT_LE(f0, f.eval(x, nullptr) + 1e-12) << f.id << " trial " << trial;
    }
  }
}

TEST(Property, ScalableAcrossDimensions) {
  for (int k = 1; k <= 13; ++k) {
    const auto& f = reg().lookup(fmt_id(k));
    for (std::size_t d : {30u, 100u, 1000u}) {
      const std::vector<double> x(d, 0.5 * (f.upper - f.lower) / 10.0);
      EXPECT_TRUE(std::isfinite(f.eval(x, nullptr))) << f.id << " d=" << d;
      EXPECT_EQ(f.space(d).dim(), d);
    }
  }
}

TEST(Property, FixedFunctionsIgnoreDimOverride) {
  const auto& f = reg().lookup("F19");
  EXPECT_EQ(f.space(30).dim(), 3u);
  EXPECT_EQ(f.resolve_dim(1000), 3u);
}

// ---- composites ----------------------------------------------------------------

TEST(Composite, StubRegistration) {
  Registry r = Registry::with_builtins();
  BenchmarkFunction stub;
  stub.id = "F24";
  stub.name = "constant";
  stub.category = Category::Composite;
  stub.dim = 30;
  stub.fixed_dim = true;
  stub.f_min = 2400;
  stub.eval = [](std::span<const double>, Rng*) { return 2400.0; };
  r.register_composite({stub});
  EXPECT_EQ(r.lookup("F24").id, "F24");
  EXPECT_EQ(r.evaluate("F24", std::vector<double>(30, 0.0)), 2400.0);
  EXPECT_THROW(r.register_composite({stub}), LookupError);
  EXPECT_THROW(reg().lookup("F24"), LookupError);  // other registries untouched
}

TEST(Composite, CollisionRegistersNothing) {
  Registry r = Registry::with_builtins();
  BenchmarkFunction a;
  a.id = "F25";
  a.eval = [](std::span<const double>, Rng*) { return 0.0; };
  BenchmarkFunction clash = a;
  clash.id = "F1";
  EXPECT_THROW(r.register_composite({a, clash}), LookupError);
  EXPECT_FALSE(r.contains("F25"));
}

TEST(Composite, FileRoundTrip) {
  const auto dir = temp_dir("pack");
  {
    std::ofstream out(dir / "f24.txt");
    out << "# two-component test composition\n"
           "id F24\nname TestComposite\ndim 2\nbounds -100 100\nf_min 2400\ncomponents 2\n"
           "component F1 sigma 10 lambda 1 bias 0 shift 1 2 rotation identity\n"
           "component F9 sigma 20 lambda 2 bias 100 shift -30 40 rotation matrix 0 1 1 0\n";
  }
  const auto spec = parse_composite_file(dir / "f24.txt");
  EXPECT_EQ(spec.id, "F24");
  EXPECT_EQ(spec.dim, 2u);
  ASSERT_EQ(spec.components.size(), 2u);
  EXPECT_EQ(spec.components[1].rotation(0, 1), 1.0);

  const auto pack = load_composite_pack(dir, reg());
  ASSERT_EQ(pack.size(), 1u);
  Registry r = Registry::with_builtins();
  r.register_composite(pack);
  // at the first shift the first component dominates exactly
  EXPECT_EQ(r.evaluate("F24", std::vector<double>{1, 2}), 2400.0);
  EXPECT_GT(r.evaluate("F24", std::vector<double>{0, 0}), 2400.0);
  EXPECT_THROW(r.evaluate("F24", std::vector<double>{0, 0, 0}), ParameterError);
  std::filesystem::remove_all(dir);
}

TEST(Composite, BadFilesNameTheProblem) {
  const auto dir = temp_dir("bad");
  {
    std::ofstream out(dir / "f25.txt");
    out << "id F25\nname X\ndim 2\nbounds -1 1\nf_min 0\ncomponents 1\n"
           "component F1 sigma 1 lambda 1 bias 0 shift 0 zero rotation identity\n";
  }
  try {
    parse_composite_file(dir / "f25.txt");
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("zero"), std::string::npos) << e.what();
  }
  {
    std::ofstream out(dir / "f25.txt");
    out << "id F25\nname X\ndim 2\nbounds -1 1\nf_min 0\ncomponents 1\n"
           "component F16 sigma 1 lambda 1 bias 0 shift 0 0 rotation identity\n";
  }
  EXPECT_THROW(load_composite_pack(dir, reg()), ParameterError);
  EXPECT_THROW(load_composite_pack(dir / "missing", reg()), ParameterError);
  std::filesystem::remove_all(dir);
}
