#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvkm/io.hpp"
#include "mvkm/metrics.hpp"
#include "mvkm/solver.hpp"
#include "mvkm/types.hpp"

namespace mvkm {

// Multi-restart experiment harness. Restart r runs fit() with
// seed = base_seed + r, so a spec pins every trajectory; restarts may run on
// a worker pool and the merged result is identical to serial execution.

struct ExperimentSpec {
  std::string dataset_ref;  // manifest path or synthetic:... token, for the report
  SolverConfig config;      // per-restart seed is overwritten
  int restarts = 50;
  std::uint64_t base_seed = 0;
  int threads = 0;  // 0 = hardware concurrency, 1 = serial
};

struct RestartRecord {
  int restart = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  bool converged = false;
  double objective = 0;
  std::optional<MetricReport> metrics;
  double wall_ms = 0;  // report.json only; never part of restarts.csv
};

struct MetricAggregate {
  double min = 0;
  double avg = 0;
  double max = 0;
};

struct RunReport {
  std::string dataset_ref;
  SolverConfig config;
  int restarts = 0;
  std::uint64_t base_seed = 0;
  bool has_metrics = false;
  std::vector<RestartRecord> rows;
  std::map<std::string, MetricAggregate> aggregates;
  double total_wall_ms = 0;
};

/// min/avg/max per metric plus objective and iterations, computed in row
/// order (deterministic, re-derivable from the rows).
std::map<std::string, MetricAggregate> aggregate_rows(const std::vector<RestartRecord>& rows);

RunReport run_experiment(const MultiViewDataset& ds, const ExperimentSpec& spec);

/// Deterministic per-restart CSV (no timing columns).
std::string restart_csv(const RunReport& report);

nlohmann::json run_report_json(const RunReport& report);

/// Writes restarts.csv and report.json under `directory`.
void write_run_report(const RunReport& report, const std::filesystem::path& directory);

/// Summary of one stored run, as needed by the report renderer.
struct RunSummary {
  std::string label;
  std::string dataset_ref;
  int restarts = 0;
  bool has_metrics = false;
  std::map<std::string, MetricAggregate> aggregates;
};

RunSummary summarize(const RunReport& report);
RunSummary load_run_summary(const std::filesystem::path& directory);

/// Aligned text table, one row per run, min/avg/max triples per metric; the
/// best average in each column is starred.
std::string render_report_table(const std::vector<RunSummary>& runs);
std::string report_table_csv(const std::vector<RunSummary>& runs);

/// CLI-facing label for a beta policy ("eq10", "fixed:0.5,2", ...).
std::string beta_policy_label(const BetaPolicy& policy);

struct SweepSpec {
  std::vector<double> alphas;
  std::vector<double> stabilizers;       // applied to gkmvkm only
  std::vector<BetaPolicy> beta_policies; // applied to kernel algorithms only
};

struct SweepCell {
  double alpha = 0;
  double stabilizer = 0;
  std::string beta_label;
  RunReport report;
};

/// Cartesian grid over the sweep axes; every cell reuses the base spec.
std::vector<SweepCell> run_sweep(const MultiViewDataset& ds, const ExperimentSpec& base,
                                 const SweepSpec& sweep);

/// One row per cell, sorted by average ARI (descending; stable) when metrics
/// exist, otherwise by average objective (ascending).
std::string sweep_summary_csv(const std::vector<SweepCell>& cells);

}  // namespace mvkm
