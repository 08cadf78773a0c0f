#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdis/estimator.hpp"
#include "hdis/linalg.hpp"

namespace hdis {

/// Covariance choices compared by the benchmark. opt and empirical are the
/// two benchmarks (true Sigma* and its plain estimate); the four projected
/// variants combine the direction source (leading ell-ordered eigendirections
/// vs the mean direction) with whether that source is known exactly or
/// estimated from the g* sample.
enum class Strategy {
  Opt,
  Empirical,
  ProjDTrue,
  ProjDHat,
  ProjMTrue,
  ProjMHat,
};

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);
std::vector<Strategy> all_strategies();

struct ExperimentConfig {
  std::string problem;
  std::vector<int> dims;
  std::vector<Strategy> strategies = all_strategies();
  std::size_t gstar_m = 500;  // M, size of the g* sample per replication
  std::size_t is_n = 2000;    // N, importance-sampling sample size
  int reps = 50;
  std::uint64_t seed = 1;
  std::size_t pool = 0;  // SIR pool size; 0 means max(100000, 200*M)
  std::uint64_t oracle_samples = 10000000ull;
  std::size_t fixed_k = 0;   // 0 selects k by the largest ell-gap
  bool reuse_gstar = false;  // reuse one g* sample across replications

  std::size_t effective_pool() const;
};

struct ReferenceInfo {
  double value = 0.0;
  double standard_error = 0.0;  // 0 for analytic references
  std::string provenance;       // "analytic" or "oracle(...)"
};

struct CellResult {
  int dim = 0;
  Strategy strategy = Strategy::Opt;
  bool failed = false;
  std::string error;
  RunStatistics stats;
  std::vector<std::size_t> ks;       // chosen k per replication
  std::uint64_t proposals_used = 0;  // total phi evaluations for the cell
  int no_gap_count = 0;  // replications where every ell-increment was ~0
  double wall_seconds = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::pair<int, ReferenceInfo>> references;  // per dimension
  std::vector<CellResult> cells;
  std::vector<std::string> notes;
};

// Runs the full comparison: per replication, draw a g* sample, estimate
// (m^*, Sigma^*), build the strategy covariance, evaluate its partial KL
// against Sigma*, and run the importance-sampling estimate with the estimated
// mean. Failures (budget exhaustion, degenerate covariances) mark the cell
// failed instead of aborting the report. Substreams are keyed by
// (seed, problem, dim, strategy, rep), so cells are independent of which
// other cells run.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct SweepRow {
  int dim = 0;
  double d_prime_star = 0.0;
  double d_prime_empirical_mean = 0.0;
  double d_prime_projected_mean = 0.0;
};

// Partial-KL-versus-dimension data behind the comparison figures: D'(Sigma*),
// mean D'(Sigma*_hat) and mean D'(projected Sigma*_hat) per dimension.
std::vector<SweepRow> run_dimension_sweep(const ExperimentConfig& cfg);

struct SpectrumPoint {
  int index = 0;  // 1-based ell-order rank
  double eigenvalue = 0.0;
  double ell_value = 0.0;
};

struct SpectrumPlotData {
  std::vector<SpectrumPoint> reference;  // spectrum of Sigma*
  std::vector<SpectrumPoint> estimated;  // spectrum of Sigma*_hat
};

SpectrumPlotData spectrum_plot_data(const ExperimentConfig& cfg, int dim);

enum class ReportFormat { Csv, Markdown };
ReportFormat report_format_from_string(const std::string& name);

// CSV: one row per (problem, dim, strategy), numbers with 17 significant
// digits; markdown mirrors the per-dimension table layout and carries the
// metadata (config echo, references, wall times, failures).
std::string render_report(const ExperimentReport& report, ReportFormat fmt);

std::string render_sweep_csv(const std::vector<SweepRow>& rows);
std::string render_spectrum_csv(const SpectrumPlotData& data);

// Oracle cache directory: $HDIS_CACHE_DIR, or ".hdis-cache" when unset.
std::string oracle_cache_dir();

}  // namespace hdis
