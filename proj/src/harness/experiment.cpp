#include "mfo/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "mfo/baselines.hpp"
#include "mfo/composite.hpp"
#include "mfo/engine.hpp"
#include "mfo/errors.hpp"

namespace mfo::harness {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error(fmt::format("write failed for {}", path.string()));
}

struct Cell {
  std::string algorithm;
  const bench::BenchmarkFunction* fn;
  std::size_t dim;
};

std::vector<Cell> expand_grid(const ExperimentConfig& config, const bench::Registry& registry) {
  std::vector<Cell> cells;
  for (const auto& alg : config.algorithms) {
    for (const auto& id : config.functions) {
      const auto& fn = registry.lookup(id);
      std::vector<std::size_t> dims;
      if (fn.fixed_dim || config.dims.empty()) {
        dims.push_back(fn.dim);
      } else {
        dims = config.dims;
      }
      for (std::size_t d : dims) cells.push_back({alg, &fn, d});
    }
  }
  return cells;
}

std::string canonical_algorithm(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  return up;
}

std::string cell_dir_name(const Cell& c) {
  return fmt::format("{}_{}_d{}", c.algorithm, c.fn->id, c.dim);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double m) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

template <typename T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
  }
}

}  // namespace

std::string_view to_string(Telemetry t) noexcept {
  switch (t) {
    case Telemetry::Summary: return "summary";
    case Telemetry::Curves: return "curves";
    case Telemetry::FullHistory: return "full-history";
  }
  return "?";
}

Telemetry parse_telemetry(std::string_view text) {
  if (text == "summary") return Telemetry::Summary;
  if (text == "curves") return Telemetry::Curves;
  if (text == "full-history") return Telemetry::FullHistory;
  throw ConfigError(fmt::format("unknown telemetry level '{}' (summary|curves|full-history)", text));
}

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"MFO", "NLCMFO", "PSO", "GWO"};
  return names;
}

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> keys{"algorithms", "functions", "dims",      "runs",
                                             "pop",        "iters",     "base_seed", "output_dir",
                                             "telemetry",  "workers",   "composite_dir"};
  for (const auto& [key, _] : j.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(fmt::format("unknown config key '{}'", key));

  ExperimentConfig c;
  if (j.contains("algorithms")) c.algorithms = get_field<std::vector<std::string>>(j, "algorithms");
  if (j.contains("functions")) c.functions = get_field<std::vector<std::string>>(j, "functions");
  if (j.contains("dims")) c.dims = get_field<std::vector<std::size_t>>(j, "dims");
  if (j.contains("runs")) c.runs = get_field<std::size_t>(j, "runs");
  if (j.contains("pop")) c.pop = get_field<std::size_t>(j, "pop");
  if (j.contains("iters")) c.iters = get_field<std::size_t>(j, "iters");
  if (j.contains("base_seed")) c.base_seed = get_field<std::uint64_t>(j, "base_seed");
  if (j.contains("output_dir")) c.output_dir = get_field<std::string>(j, "output_dir");
  if (j.contains("telemetry")) c.telemetry = parse_telemetry(get_field<std::string>(j, "telemetry"));
  if (j.contains("workers")) c.workers = get_field<std::size_t>(j, "workers");
  if (j.contains("composite_dir") && !j.at("composite_dir").is_null())
    c.composite_dir = get_field<std::string>(j, "composite_dir");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file {}", path.string()));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::string dump_config(const ExperimentConfig& c) {
  json j;
  j["algorithms"] = c.algorithms;
  j["functions"] = c.functions;
  j["dims"] = c.dims;
  j["runs"] = c.runs;
  j["pop"] = c.pop;
  j["iters"] = c.iters;
  j["base_seed"] = c.base_seed;
  j["output_dir"] = c.output_dir.string();
  j["telemetry"] = std::string(to_string(c.telemetry));
  j["workers"] = c.workers;
  j["composite_dir"] = c.composite_dir ? json(c.composite_dir->string()) : json(nullptr);
  return j.dump(2);
}

void validate(const ExperimentConfig& c, const bench::Registry& registry) {
  if (c.algorithms.empty()) throw ConfigError("no algorithms requested");
  for (const auto& a : c.algorithms) {
    const auto& known = known_algorithms();
    if (std::find(known.begin(), known.end(), canonical_algorithm(a)) == known.end())
      throw ConfigError(fmt::format("unknown algorithm '{}' (MFO|NLCMFO|PSO|GWO)", a));
  }
  if (c.functions.empty()) throw ConfigError("no functions requested");
  for (const auto& f : c.functions) {
    try {
      registry.lookup(f);
    } catch (const LookupError& e) {
      throw ConfigError(e.what());
    }
  }
  for (std::size_t d : c.dims)
    if (d == 0) throw ConfigError("dims entries must be >= 1");
  if (c.runs < 1) throw ConfigError("runs must be >= 1");
  if (c.pop < 2) throw ConfigError("pop must be >= 2");
  if (c.iters < 1) throw ConfigError("iters must be >= 1");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
}

StatsRow summarize(const std::vector<double>& finals, const std::vector<double>& runtimes) {
  if (finals.empty()) throw ParameterError("summarize needs at least one value");
  if (finals.size() != runtimes.size())
    throw ParameterError(fmt::format("summarize: {} finals vs {} runtimes", finals.size(), runtimes.size()));
  StatsRow row;
  row.ave = mean(finals);
  row.std = sample_std(finals, row.ave);
  row.ave_runtime = mean(runtimes);
  row.std_runtime = sample_std(runtimes, row.ave_runtime);
  row.single_sample = finals.size() < 2;
  return row;
}

RunResult run_single(std::string_view algorithm, const bench::BenchmarkFunction& fn, std::size_t dim,
                     std::size_t pop, std::size_t iters, std::uint64_t seed, bool record_history) {
  const std::size_t d = fn.resolve_dim(dim);
  const SearchSpace space = fn.space(d);
  const Objective objective = bench::make_objective(fn, derive_seed(seed, 7));
  const std::string alg = canonical_algorithm(algorithm);
  if (alg == "MFO" || alg == "NLCMFO") {
    EngineConfig cfg;
    cfg.algorithm = alg == "MFO" ? Algorithm::MFO : Algorithm::NLCMFO;
    cfg.pop_size = pop;
    cfg.max_iter = iters;
    cfg.seed = seed;
    cfg.record_history = record_history;
    return run(cfg, space, objective);
  }
  if (alg == "PSO") {
    PsoConfig cfg;
    cfg.pop_size = pop;
    cfg.max_iter = iters;
    cfg.seed = seed;
    cfg.record_history = record_history;
    return run_pso(cfg, space, objective);
  }
  if (alg == "GWO") {
    GwoConfig cfg;
    cfg.pop_size = pop;
    cfg.max_iter = iters;
    cfg.seed = seed;
    cfg.record_history = record_history;
    return run_gwo(cfg, space, objective);
  }
  throw ConfigError(fmt::format("unknown algorithm '{}'", algorithm));
}

void export_curves(const RunResult& result, const std::filesystem::path& dir, Telemetry level) {
  if (level == Telemetry::Summary) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(fmt::format("cannot create {}: {}", dir.string(), ec.message()));

  auto series = [&](const char* file, const char* column, const std::vector<double>& values) {
    const auto path = dir / file;
    auto out = open_out(path);
    out << "iter," << column << '\n';
    for (std::size_t k = 0; k < values.size(); ++k) out << fmt::format("{},{}\n", k + 1, values[k]);
    close_out(out, path);
  };
  series("convergence.csv", "best", result.convergence);
  series("mean_fitness.csv", "mean", result.mean_fitness);
  series("trajectory.csv", "x0", result.trajectory);

  if (level == Telemetry::FullHistory) {
    const auto path = dir / "search_history.csv";
    auto out = open_out(path);
    out << "iter,moth,dim,value\n";
    for (std::size_t k = 0; k < result.history.size(); ++k) {
      const Matrix& m = result.history[k];
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << fmt::format("{},{},{},{}\n", k + 1, i, j, m(i, j));
    }
    close_out(out, path);
  }
}

std::size_t workers_from_env(std::size_t fallback) {
  const char* raw = std::getenv("MFO_WORKERS");
  if (raw == nullptr) return fallback;
  char* end = nullptr;
  const unsigned long v = std::strtoul(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return fallback;
  return static_cast<std::size_t>(v);
}

ExperimentResult run_experiment(const ExperimentConfig& config_in, const bench::Registry& base) {
  ExperimentConfig config = config_in;
  for (auto& a : config.algorithms) a = canonical_algorithm(a);

  bench::Registry registry = base;
  if (config.composite_dir) {
    try {
      registry.register_composite(bench::load_composite_pack(*config.composite_dir, base));
    } catch (const std::exception& e) {
      throw ConfigError(fmt::format("composite pack: {}", e.what()));
    }
  }
  validate(config, registry);

  const auto cells = expand_grid(config, registry);
  const std::size_t total = cells.size() * config.runs;
  std::vector<RunRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr fatal;

  // Runs are pure functions of (cell, seed); each writes only its own files,
  // so completion order cannot change any output.
  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const Cell& cell = cells[task / config.runs];
      RunRecord& rec = records[task];
      rec.algorithm = cell.algorithm;
      rec.function = cell.fn->id;
      rec.dim = cell.dim;
      rec.run = task % config.runs;
      rec.seed = config.base_seed + rec.run;
      try {
        const RunResult r = run_single(cell.algorithm, *cell.fn, cell.dim, config.pop, config.iters,
                                       rec.seed, config.telemetry == Telemetry::FullHistory);
        rec.final_best = r.best_fitness;
        rec.runtime = r.wall_time;
        rec.evaluations = r.evaluations;
        export_curves(r, config.output_dir / "curves" / cell_dir_name(cell) / fmt::format("run{}", rec.run),
                      config.telemetry);
      } catch (const ObjectiveError& e) {
        rec.aborted = true;
        rec.error = e.what();
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!fatal) fatal = std::current_exception();
        next = total;
      }
    }
  };

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec)
    throw std::runtime_error(fmt::format("cannot create {}: {}", config.output_dir.string(), ec.message()));

  const std::size_t n_workers = std::min(config.workers, std::max<std::size_t>(total, 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);

  ExperimentResult result;
  result.runs = records;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> finals, runtimes;
    std::size_t aborted = 0;
    for (std::size_t k = 0; k < config.runs; ++k) {
      const auto& rec = records[c * config.runs + k];
      if (rec.aborted) {
        ++aborted;
        continue;
      }
      finals.push_back(rec.final_best);
      runtimes.push_back(rec.runtime);
    }
    StatsRow row;
    if (!finals.empty()) {
      row = summarize(finals, runtimes);
    } else {
      row.ave = row.std = row.ave_runtime = row.std_runtime = std::nan("");
      row.single_sample = true;
    }
    row.algorithm = cells[c].algorithm;
    row.function = cells[c].fn->id;
    row.dim = cells[c].dim;
    row.aborted_runs = aborted;
    result.stats.push_back(row);
  }

  const auto stats_path = config.output_dir / "stats.csv";
  const auto full_path = config.output_dir / "stats_full.csv";
  auto stats = open_out(stats_path);
  auto full = open_out(full_path);
  stats << "algorithm,function,dim,ave,std,ave_runtime_s,std_runtime_s,aborted_runs\n";
  full << "algorithm,function,dim,ave,std,ave_runtime_s,std_runtime_s,aborted_runs,single_sample\n";
  for (const auto& r : result.stats) {
    stats << fmt::format("{},{},{},{:.6g},{:.6g},{:.6g},{:.6g},{}\n", r.algorithm, r.function, r.dim, r.ave,
                         r.std, r.ave_runtime, r.std_runtime, r.aborted_runs);
    full << fmt::format("{},{},{},{},{},{},{},{},{}\n", r.algorithm, r.function, r.dim, r.ave, r.std,
                        r.ave_runtime, r.std_runtime, r.aborted_runs, r.single_sample ? 1 : 0);
  }
  close_out(stats, stats_path);
  close_out(full, full_path);

  const auto finals_path = config.output_dir / "finals.csv";
  const auto runtimes_path = config.output_dir / "runtimes.csv";
  auto finals = open_out(finals_path);
  auto runtimes = open_out(runtimes_path);
  finals << "algorithm,function,dim,run,seed,final_best,evaluations,status\n";
  runtimes << "algorithm,function,dim,run,runtime_s\n";
  for (const auto& r : records) {
    finals << fmt::format("{},{},{},{},{},{},{},{}\n", r.algorithm, r.function, r.dim, r.run, r.seed,
                          r.aborted ? std::nan("") : r.final_best, r.evaluations, r.aborted ? "aborted" : "ok");
    runtimes << fmt::format("{},{},{},{},{}\n", r.algorithm, r.function, r.dim, r.run, r.runtime);
  }
  close_out(finals, finals_path);
  close_out(runtimes, runtimes_path);
  return result;
}

}  // namespace mfo::harness
