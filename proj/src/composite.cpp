#include "mfo/composite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "mfo/errors.hpp"

namespace mfo::bench {
namespace {

class TokenReader {
 public:
  explicit TokenReader(const std::filesystem::path& file) : path_(file) {
    std::ifstream in(file);
    if (!in) throw ParameterError(fmt::format("cannot open composite file {}", file.string()));
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens_.push_back(tok);
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }

  std::string word() {
    if (done()) fail("unexpected end of file");
    return tokens_[pos_++];
  }

  void expect(std::string_view key) {
    const std::string got = word();
    if (got != key) fail(fmt::format("expected '{}', found '{}'", key, got));
  }

  double number() {
    const std::string tok = word();
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      fail(fmt::format("expected a number, found '{}'", tok));
    }
  }

  std::size_t count() {
    const double v = number();
    if (v < 0 || v != std::floor(v)) fail(fmt::format("expected a count, found {}", v));
    return static_cast<std::size_t>(v);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParameterError(fmt::format("{}: {}", path_.string(), what));
  }

 private:
  std::filesystem::path path_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

CompositeSpec parse_composite_file(const std::filesystem::path& file) {
  TokenReader r(file);
  CompositeSpec spec;
  r.expect("id");
  spec.id = canonical_id(r.word());
  r.expect("name");
  spec.name = r.word();
  r.expect("dim");
  spec.dim = r.count();
  if (spec.dim == 0) r.fail("dim must be >= 1");
  r.expect("bounds");
  spec.lower = r.number();
  spec.upper = r.number();
  r.expect("f_min");
  spec.f_min = r.number();
  r.expect("components");
  const std::size_t k = r.count();
  if (k == 0) r.fail("need at least one component");

  const auto d = static_cast<Eigen::Index>(spec.dim);
  for (std::size_t c = 0; c < k; ++c) {
    CompositeComponent comp;
    r.expect("component");
    comp.base_id = canonical_id(r.word());
    r.expect("sigma");
    comp.sigma = r.number();
    r.expect("lambda");
    comp.lambda = r.number();
    r.expect("bias");
    comp.bias = r.number();
    r.expect("shift");
    comp.shift.resize(spec.dim);
    for (auto& v : comp.shift) v = r.number();
    r.expect("rotation");
    comp.rotation = Matrix::Identity(d, d);
    const std::string mode = r.word();
    if (mode == "matrix") {
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) comp.rotation(i, j) = r.number();
    } else if (mode != "identity") {
      r.fail(fmt::format("rotation must be 'identity' or 'matrix', found '{}'", mode));
    }
    spec.components.push_back(std::move(comp));
  }
  if (!r.done()) r.fail(fmt::format("trailing token '{}'", r.word()));
  return spec;
}

BenchmarkFunction make_composite(const CompositeSpec& spec, const Registry& base) {
  struct Part {
    Eval eval;
    CompositeComponent comp;
  };
  std::vector<Part> parts;
  for (const auto& comp : spec.components) {
    const auto& fn = base.lookup(comp.base_id);
    if (fn.fixed_dim || fn.category == Category::Composite)
      throw ParameterError(fmt::format("{}: component {} must be a scalable built-in", spec.id,
                                       comp.base_id));
    parts.push_back({fn.eval, comp});
  }

  BenchmarkFunction f;
  f.id = spec.id;
  f.name = spec.name;
  f.category = Category::Composite;
  f.dim = spec.dim;
  f.lower = spec.lower;
  f.upper = spec.upper;
  f.fixed_dim = true;
  f.f_min = spec.f_min;
  const double f_star = spec.f_min;
  const double dim = static_cast<double>(spec.dim);
  f.eval = [parts = std::move(parts), f_star, dim](std::span<const double> x, Rng* noise) {
    const Eigen::Map<const Vector> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    std::vector<double> weight(parts.size());
    std::vector<double> value(parts.size());
    std::size_t exact = parts.size();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& c = parts[i].comp;
      const Eigen::Map<const Vector> o(c.shift.data(), static_cast<Eigen::Index>(c.shift.size()));
      const Vector diff = xv - o;
      const Vector z = c.rotation * diff;
      value[i] = c.lambda * parts[i].eval({z.data(), static_cast<std::size_t>(z.size())}, noise) + c.bias;
      const double d2 = diff.squaredNorm();
      if (d2 == 0.0 && exact == parts.size()) exact = i;
      weight[i] = d2 == 0.0 ? 0.0 : std::exp(-d2 / (2.0 * dim * c.sigma * c.sigma)) / std::sqrt(d2);
    }
    if (exact != parts.size()) return value[exact] + f_star;
    double wsum = 0.0;
    for (double w : weight) wsum += w;
    double out = 0.0;
    if (wsum == 0.0) {
      for (double v : value) out += v / static_cast<double>(value.size());
    } else {
      for (std::size_t i = 0; i < parts.size(); ++i) out += weight[i] / wsum * value[i];
    }
    return out + f_star;
  };
  return f;
}

std::vector<BenchmarkFunction> load_composite_pack(const std::filesystem::path& dir,
                                                   const Registry& base) {
  if (!std::filesystem::is_directory(dir))
    throw ParameterError(fmt::format("composite pack directory {} not found", dir.string()));
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<BenchmarkFunction> pack;
  for (const auto& file : files) pack.push_back(make_composite(parse_composite_file(file), base));
  return pack;
}

}  // namespace mfo::bench
