// mfo: command-line front end for the optimizer library.
//   mfo bench  [--config FILE] [grid flags]   run an experiment grid
//   mfo tune   [--seed N] ...                  hyperparameter tuning demo
//   mfo eval   ID X1 X2 ...                    evaluate one benchmark point
//   mfo diag   --algorithm A --function F      per-run telemetry for one run
// Exit codes: 0 ok, 1 configuration error, 2 runtime abort.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "mfo/benchmarks.hpp"
#include "mfo/composite.hpp"
#include "mfo/errors.hpp"
#include "mfo/harness/experiment.hpp"
#include "mfo/tune/metrics.hpp"
#include "mfo/tune/tuner.hpp"

namespace fs = std::filesystem;
using namespace mfo;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeAbort = 2;

// "0" -> "0.0" so integral results still read as reals.
std::string real_text(double v) {
  std::string s = fmt::format("{}", v);
  if (s.find_first_of(".eni") == std::string::npos) s += ".0";
  return s;
}

void load_pack(bench::Registry& registry, const std::optional<std::string>& dir) {
  if (!dir) return;
  try {
    registry.register_composite(bench::load_composite_pack(*dir, registry));
  } catch (const std::exception& e) {
    throw ConfigError(fmt::format("composite pack: {}", e.what()));
  }
}

struct BenchArgs {
  std::optional<std::string> config;
  std::vector<std::string> algorithms, functions;
  std::vector<std::size_t> dims;
  std::optional<std::size_t> runs, pop, iters, workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir, telemetry, composite_dir;
};

int cmd_bench(const BenchArgs& a) {
  harness::ExperimentConfig cfg = a.config ? harness::load_config(*a.config) : harness::ExperimentConfig{};
  cfg.workers = harness::workers_from_env(cfg.workers);
  if (!a.algorithms.empty()) cfg.algorithms = a.algorithms;
  if (!a.functions.empty()) cfg.functions = a.functions;
  if (!a.dims.empty()) cfg.dims = a.dims;
  if (a.runs) cfg.runs = *a.runs;
  if (a.pop) cfg.pop = *a.pop;
  if (a.iters) cfg.iters = *a.iters;
  if (a.workers) cfg.workers = *a.workers;
  if (a.seed) cfg.base_seed = *a.seed;
  if (a.output_dir) cfg.output_dir = *a.output_dir;
  if (a.telemetry) cfg.telemetry = harness::parse_telemetry(*a.telemetry);
  if (a.composite_dir) cfg.composite_dir = fs::path(*a.composite_dir);

  const auto result = harness::run_experiment(cfg, bench::default_registry());
  fmt::print("{:<8} {:<5} {:>5} {:>14} {:>14} {:>12} {:>8}\n", "alg", "fn", "dim", "ave", "std", "ave_time_s",
             "aborted");
  for (const auto& r : result.stats)
    fmt::print("{:<8} {:<5} {:>5} {:>14.6g} {:>14.6g} {:>12.4g} {:>8}{}\n", r.algorithm, r.function, r.dim,
               r.ave, r.std, r.ave_runtime, r.aborted_runs, r.single_sample ? "  (single sample)" : "");
  fmt::print("results written to {}\n", cfg.output_dir.string());
  std::size_t aborted = 0;
  for (const auto& r : result.stats) aborted += r.aborted_runs;
  return aborted > 0 ? kRuntimeAbort : kOk;
}

struct TuneArgs {
  std::uint64_t seed = 7;
  std::size_t samples = 1000;
  std::size_t features = 2;
  double separation = 1.0;
  std::size_t pop = 30;
  std::size_t iters = 20;
  int positive = 1;
  std::optional<std::string> dataset;
  std::string output_dir = "tune_out";
};

int cmd_tune(const TuneArgs& a) {
  const tune::ToyDataset data = a.dataset ? tune::read_dataset_csv(*a.dataset, a.seed)
                                          : tune::make_toy_dataset(a.samples, a.features, a.seed, a.separation);
  if (a.pop < 2 || a.iters < 1) throw ConfigError("tune needs --pop >= 2 and --iters >= 1");
  EngineConfig engine = tune::default_tune_config(a.seed);
  engine.pop_size = a.pop;
  engine.max_iter = a.iters;

  const auto result = tune::tune(engine, data, a.seed);
  const auto model = tune::train_toy_model(result.best, data, a.seed);
  const auto preds = tune::predict_labels(model, data, data.test);
  const auto scores = tune::predict_scores(model, data, data.test);
  std::vector<int> truth;
  for (std::size_t r : data.test) truth.push_back(data.labels[r]);
  const auto counts = tune::confusion(preds, truth, a.positive);
  auto report = tune::metrics(counts);

  std::vector<int> positive_truth;
  std::vector<double> positive_scores;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    positive_truth.push_back(truth[k] == a.positive ? 1 : 0);
    positive_scores.push_back(a.positive == 1 ? scores[k] : 1.0 - scores[k]);
  }
  report.roc = tune::roc_points(positive_scores, positive_truth);

  const fs::path out = a.output_dir;
  fs::create_directories(out);
  {
    std::ofstream f(out / "confusion.csv");
    f << "tp,fn,fp,tn\n" << fmt::format("{},{},{},{}\n", counts.tp, counts.fn, counts.fp, counts.tn);
  }
  {
    std::ofstream f(out / "roc.csv");
    f << "fpr,tpr\n";
    for (const auto& [fpr, tpr] : report.roc) f << fmt::format("{},{}\n", fpr, tpr);
  }
  {
    std::ofstream f(out / "candidates.csv");
    f << "index,momentum,learning_rate,epochs,l2,error_rate\n";
    for (std::size_t k = 0; k < result.candidates.size(); ++k) {
      const auto& c = result.candidates[k];
      f << fmt::format("{},{},{},{},{},{}\n", k, c.hp.momentum, c.hp.learning_rate, c.hp.epochs, c.hp.l2,
                       c.error_rate);
    }
  }
  {
    std::ofstream f(out / "convergence.csv");
    f << "iter,best\n";
    for (std::size_t k = 0; k < result.run.convergence.size(); ++k)
      f << fmt::format("{},{}\n", k + 1, result.run.convergence[k]);
  }
  tune::write_model(out / "model.txt", model);

  fmt::print("trainings:      {}\n", result.candidates.size());
  fmt::print("best L_D:       {}\n", result.best_error_rate);
  fmt::print("momentum:       {}\n", result.best.momentum);
  fmt::print("learning_rate:  {}\n", result.best.learning_rate);
  fmt::print("epochs:         {}\n", result.best.epochs);
  fmt::print("l2:             {}\n", result.best.l2);
  fmt::print("confusion:      tp={} fn={} fp={} tn={}\n", counts.tp, counts.fn, counts.fp, counts.tn);
  fmt::print("accuracy:       {:.4f}\n", report.accuracy);
  fmt::print("sensitivity:    {:.4f}\n", report.sensitivity);
  fmt::print("specificity:    {:.4f}\n", report.specificity);
  fmt::print("precision:      {:.4f}\n", report.precision);
  fmt::print("f1:             {:.4f}\n", report.f1);
  fmt::print("auc:            {:.4f}\n", tune::auc(report.roc));
  fmt::print("outputs in {}\n", out.string());
  return kOk;
}

int cmd_eval(const std::string& id, const std::vector<double>& x, const std::optional<std::string>& pack) {
  bench::Registry registry = bench::default_registry();
  load_pack(registry, pack);
  fmt::print("{}\n", real_text(registry.evaluate(id, x)));
  return kOk;
}

struct DiagArgs {
  std::string algorithm = "NLCMFO";
  std::string function = "F1";
  std::size_t dim = 0;
  std::size_t pop = 30;
  std::size_t iters = 500;
  std::uint64_t seed = 1;
  bool history = false;
  std::string output_dir = "diag_out";
  std::optional<std::string> composite_dir;
};

int cmd_diag(const DiagArgs& a) {
  bench::Registry registry = bench::default_registry();
  load_pack(registry, a.composite_dir);
  harness::ExperimentConfig probe;
  probe.algorithms = {a.algorithm};
  probe.functions = {a.function};
  probe.pop = a.pop;
  probe.iters = a.iters;
  harness::validate(probe, registry);
  const auto& fn = registry.lookup(a.function);
  const auto r = harness::run_single(a.algorithm, fn, a.dim, a.pop, a.iters, a.seed, a.history);
  const auto level = a.history ? harness::Telemetry::FullHistory : harness::Telemetry::Curves;
  harness::export_curves(r, a.output_dir, level);
  fmt::print("{} on {} (d={}): best {} after {} evaluations, {:.3f} s\n", a.algorithm, fn.id,
             fn.resolve_dim(a.dim), r.best_fitness, r.evaluations, r.wall_time);
  fmt::print("telemetry in {}\n", a.output_dir);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moth-flame optimization toolkit"};
  app.require_subcommand(1);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "run an experiment grid and write CSV results");
  bench->add_option("--config", bench_args.config, "JSON config (keys = ExperimentConfig fields)");
  bench->add_option("--algorithms", bench_args.algorithms, "MFO NLCMFO PSO GWO");
  bench->add_option("--functions", bench_args.functions, "benchmark ids, e.g. F1 F9");
  bench->add_option("--dims", bench_args.dims, "dimension overrides for scalable functions");
  bench->add_option("--runs", bench_args.runs);
  bench->add_option("--pop", bench_args.pop);
  bench->add_option("--iters", bench_args.iters);
  bench->add_option("--seed", bench_args.seed, "base seed; run k uses seed + k");
  bench->add_option("--output-dir", bench_args.output_dir);
  bench->add_option("--telemetry", bench_args.telemetry, "summary | curves | full-history");
  bench->add_option("--workers", bench_args.workers, "parallel runs (default: MFO_WORKERS or 1)");
  bench->add_option("--composite-dir", bench_args.composite_dir, "directory of composite definitions");

  TuneArgs tune_args;
  auto* tune = app.add_subcommand("tune", "tune toy-classifier hyperparameters with NLCMFO");
  tune->add_option("--seed", tune_args.seed)->capture_default_str();
  tune->add_option("--samples", tune_args.samples, "toy dataset rows")->capture_default_str();
  tune->add_option("--features", tune_args.features, "toy dataset columns")->capture_default_str();
  tune->add_option("--separation", tune_args.separation, "blob centre offset")->capture_default_str();
  tune->add_option("--pop", tune_args.pop)->capture_default_str();
  tune->add_option("--iters", tune_args.iters)->capture_default_str();
  tune->add_option("--positive-class", tune_args.positive, "label treated as positive")->capture_default_str();
  tune->add_option("--dataset", tune_args.dataset, "CSV x0..,label instead of the toy data");
  tune->add_option("--output-dir", tune_args.output_dir)->capture_default_str();

  std::string eval_id;
  std::vector<double> eval_x;
  std::optional<std::string> eval_pack;
  auto* eval = app.add_subcommand("eval", "evaluate a benchmark at a point");
  eval->add_option("function", eval_id)->required();
  eval->add_option("x", eval_x, "coordinates")->required();
  eval->add_option("--composite-dir", eval_pack);

  DiagArgs diag_args;
  auto* diag = app.add_subcommand("diag", "single-run telemetry (curves, trajectory, history)");
  diag->add_option("--algorithm", diag_args.algorithm)->capture_default_str();
  diag->add_option("--function", diag_args.function)->capture_default_str();
  diag->add_option("--dim", diag_args.dim, "0 = table dimension");
  diag->add_option("--pop", diag_args.pop)->capture_default_str();
  diag->add_option("--iters", diag_args.iters)->capture_default_str();
  diag->add_option("--seed", diag_args.seed)->capture_default_str();
  diag->add_flag("--history", diag_args.history, "also write search_history.csv");
  diag->add_option("--output-dir", diag_args.output_dir)->capture_default_str();
  diag->add_option("--composite-dir", diag_args.composite_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*bench) return cmd_bench(bench_args);
    if (*tune) return cmd_tune(tune_args);
    if (*eval) return cmd_eval(eval_id, eval_x, eval_pack);
    if (*diag) return cmd_diag(diag_args);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const LookupError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const ParameterError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "aborted: {}\n", e.what());
    return kRuntimeAbort;
  }
  return kOk;
}
