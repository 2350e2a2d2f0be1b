#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfo/benchmarks.hpp"
#include "mfo/types.hpp"

namespace mfo::harness {

enum class Telemetry { Summary, Curves, FullHistory };

std::string_view to_string(Telemetry t) noexcept;
/// "summary", "curves" or "full-history"; throws ConfigError otherwise.
Telemetry parse_telemetry(std::string_view text);

/// Optimizers the harness can drive: MFO, NLCMFO, PSO, GWO.
const std::vector<std::string>& known_algorithms();

/**
 * One experiment grid. Run k of every cell uses seed base_seed + k.
 * An empty `dims` means each function's table dimension; otherwise every
 * scalable function runs once per listed dimension and fixed-dimension
 * functions run at their own size.
 */
struct ExperimentConfig {
  std::vector<std::string> algorithms{"MFO", "NLCMFO"};
  std::vector<std::string> functions{"F1"};
  std::vector<std::size_t> dims;
  std::size_t runs = 30;
  std::size_t pop = 30;
  std::size_t iters = 500;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir = "results";
  Telemetry telemetry = Telemetry::Curves;
  std::size_t workers = 1;
  std::optional<std::filesystem::path> composite_dir;
};

/// JSON object whose keys are exactly the ExperimentConfig field names; any
/// other key, or a value of the wrong type, is a ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string dump_config(const ExperimentConfig& config);

/// Checks algorithms, function ids, dims and counts against `registry`.
/// Throws ConfigError describing the first problem.
void validate(const ExperimentConfig& config, const bench::Registry& registry);

struct StatsRow {
  std::string algorithm;
  std::string function;
  std::size_t dim = 0;
  double ave = 0.0;
  double std = 0.0;
  double ave_runtime = 0.0;
  double std_runtime = 0.0;
  std::size_t aborted_runs = 0;
  /// Fewer than two completed runs: std is reported as 0.
  bool single_sample = false;
};

/// Mean and n-1 sample deviation of both vectors. Throws ParameterError on
/// empty or unequal input.
StatsRow summarize(const std::vector<double>& finals, const std::vector<double>& runtimes);

struct RunRecord {
  std::string algorithm;
  std::string function;
  std::size_t dim = 0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double final_best = 0.0;
  double runtime = 0.0;
  std::size_t evaluations = 0;
  bool aborted = false;
  std::string error;
};

struct ExperimentResult {
  std::vector<StatsRow> stats;
  std::vector<RunRecord> runs;
};

/// One optimizer run on one benchmark, the shared entry point for the CLI.
RunResult run_single(std::string_view algorithm, const bench::BenchmarkFunction& fn, std::size_t dim,
                     std::size_t pop, std::size_t iters, std::uint64_t seed, bool record_history);

/**
 * Runs the grid and writes under output_dir:
 *   stats.csv        algorithm,function,dim,ave,std,ave_runtime_s,std_runtime_s,aborted_runs
 *                    (6 significant digits)
 *   stats_full.csv   same columns at round-trip precision plus single_sample
 *   finals.csv       algorithm,function,dim,run,seed,final_best,evaluations,status
 *   runtimes.csv     algorithm,function,dim,run,runtime_s
 *   curves/<alg>_<fn>_d<dim>/run<k>/...   when telemetry >= curves
 * Everything except the runtime columns is byte-identical across repeats.
 * Validation happens before any run.
 */
ExperimentResult run_experiment(const ExperimentConfig& config, const bench::Registry& registry);

/// convergence.csv, mean_fitness.csv, trajectory.csv and (full-history)
/// search_history.csv for one run. I/O failures name the path.
void export_curves(const RunResult& result, const std::filesystem::path& dir, Telemetry level);

/// Worker count from MFO_WORKERS, or `fallback` when unset/invalid.
std::size_t workers_from_env(std::size_t fallback);

}  // namespace mfo::harness
