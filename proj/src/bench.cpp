#include "mvkm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace mvkm {

namespace fs = std::filesystem;

namespace {

const char* kMetricKeys[] = {"nmi", "ari", "acc", "recall", "precision", "f_score"};

double metric_value(const MetricReport& m, const std::string& key) {
  if (key == "nmi") return m.nmi;
  if (key == "ari") return m.ari;
  if (key == "acc") return m.acc;
  if (key == "recall") return m.recall;
  if (key == "precision") return m.precision;
  return m.f_score;
}

MetricAggregate aggregate_values(const std::vector<double>& values) {
  MetricAggregate agg;
  agg.min = values.front();
  agg.max = values.front();
  double sum = 0;
  for (double v : values) {
    agg.min = std::min(agg.min, v);
    agg.max = std::max(agg.max, v);
    sum += v;
  }
  agg.avg = sum / static_cast<double>(values.size());
  return agg;
}

std::string format_triple(const MetricAggregate& agg) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f/%.4f/%.4f", agg.min, agg.avg, agg.max);
  return buf;
}

}  // namespace

std::map<std::string, MetricAggregate> aggregate_rows(const std::vector<RestartRecord>& rows) {
  std::map<std::string, MetricAggregate> out;
  if (rows.empty()) return out;
  std::vector<double> values;
  values.reserve(rows.size());
  if (rows.front().metrics) {
    for (const char* key : kMetricKeys) {
      values.clear();
      for (const auto& row : rows) values.push_back(metric_value(*row.metrics, key));
      out[key] = aggregate_values(values);
    }
  }
  values.clear();
  for (const auto& row : rows) values.push_back(row.objective);
  out["objective"] = aggregate_values(values);
  values.clear();
  for (const auto& row : rows) values.push_back(static_cast<double>(row.iterations));
  out["iterations"] = aggregate_values(values);
  return out;
}

RunReport run_experiment(const MultiViewDataset& ds, const ExperimentSpec& spec) {
  if (spec.restarts < 1) throw std::invalid_argument("experiment: restarts must be >= 1");
  require_valid(ds);

  RunReport report;
  report.dataset_ref = spec.dataset_ref;
  report.config = spec.config;
  report.restarts = spec.restarts;
  report.base_seed = spec.base_seed;
  report.has_metrics = ds.labels.has_value();
  report.rows.resize(static_cast<std::size_t>(spec.restarts));

  const auto run_one = [&](int r) {
    SolverConfig cfg = spec.config;
    cfg.seed = spec.base_seed + static_cast<std::uint64_t>(r);
    const auto start = std::chrono::steady_clock::now();
    const FitResult fit_result = fit(ds, cfg);
    const auto stop = std::chrono::steady_clock::now();

    RestartRecord row;
    row.restart = r;
    row.seed = cfg.seed;
    row.iterations = fit_result.iterations;
    row.converged = fit_result.converged;
    row.objective = fit_result.objective_trace.empty() ? 0.0 : fit_result.objective_trace.back();
    row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (ds.labels) row.metrics = score_partition(fit_result.memberships.assign, *ds.labels);
    report.rows[static_cast<std::size_t>(r)] = std::move(row);
  };

  unsigned workers = spec.threads == 0 ? std::thread::hardware_concurrency()
                                       : static_cast<unsigned>(spec.threads);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(spec.restarts)));

  if (workers <= 1) {
    for (int r = 0; r < spec.restarts; ++r) run_one(r);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < spec.restarts; r = next.fetch_add(1)) {
          try {
            run_one(r);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  report.aggregates = aggregate_rows(report.rows);
  for (const auto& row : report.rows) report.total_wall_ms += row.wall_ms;
  return report;
}

std::string restart_csv(const RunReport& report) {
  std::string out = "restart,seed,iterations,converged,objective";
  if (report.has_metrics) out += "," + metric_csv_header();
  out += '\n';
  for (const auto& row : report.rows) {
    out += std::to_string(row.restart) + ',' + std::to_string(row.seed) + ',' +
           std::to_string(row.iterations) + ',' + (row.converged ? "1" : "0") + ',' +
           format_double(row.objective);
    if (report.has_metrics) out += ',' + metric_csv_row(*row.metrics);
    out += '\n';
  }
  return out;
}

namespace {

nlohmann::json config_json(const SolverConfig& cfg) {
  nlohmann::json j;
  j["algorithm"] = algorithm_name(cfg.algorithm);
  j["c"] = cfg.cluster_count;
  j["alpha"] = cfg.alpha;
  if (cfg.algorithm == Algorithm::Gkmvkm) {
    j["p"] = cfg.stabilizer.kind == StabilizerPolicy::Kind::MountainEstimated
                 ? nlohmann::json("mountain")
                 : nlohmann::json(cfg.stabilizer.value);
  }
  j["beta"] = beta_policy_label(cfg.beta_policy);
  j["epsilon"] = cfg.epsilon;
  j["max_iter"] = cfg.max_iter;
  j["init"] = cfg.init == InitMode::RandomDistinctPoints ? "random" : "svkm";
  return j;
}

nlohmann::json aggregates_json(const std::map<std::string, MetricAggregate>& aggregates) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, agg] : aggregates)
    j[key] = {{"min", agg.min}, {"avg", agg.avg}, {"max", agg.max}};
  return j;
}

}  // namespace

nlohmann::json run_report_json(const RunReport& report) {
  nlohmann::json j;
  j["dataset"] = report.dataset_ref;
  j["config"] = config_json(report.config);
  j["restarts"] = report.restarts;
  j["base_seed"] = report.base_seed;
  j["has_metrics"] = report.has_metrics;
  j["aggregates"] = aggregates_json(report.aggregates);
  std::vector<double> wall;
  wall.reserve(report.rows.size());
  for (const auto& row : report.rows) wall.push_back(row.wall_ms);
  j["wall_ms"] = wall;
  j["total_wall_ms"] = report.total_wall_ms;
  return j;
}

void write_run_report(const RunReport& report, const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw DataError("cannot create directory " + directory.string() + ": " + ec.message());
  write_text_file(directory / "restarts.csv", restart_csv(report));
  write_text_file(directory / "report.json", run_report_json(report).dump(2) + "\n");
}

RunSummary summarize(const RunReport& report) {
  RunSummary summary;
  summary.label = algorithm_name(report.config.algorithm);
  summary.dataset_ref = report.dataset_ref;
  summary.restarts = report.restarts;
  summary.has_metrics = report.has_metrics;
  summary.aggregates = report.aggregates;
  return summary;
}

RunSummary load_run_summary(const fs::path& directory) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(directory / "report.json"));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("corrupt run report in " + directory.string() + ": " + e.what());
  }
  RunSummary summary;
  try {
    summary.label = j.at("config").at("algorithm").get<std::string>();
    summary.dataset_ref = j.value("dataset", std::string{});
    summary.restarts = j.at("restarts").get<int>();
    summary.has_metrics = j.at("has_metrics").get<bool>();
    for (const auto& [key, agg] : j.at("aggregates").items())
      summary.aggregates[key] = {agg.at("min").get<double>(), agg.at("avg").get<double>(),
                                 agg.at("max").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw DataError("corrupt run report in " + directory.string() + ": " + e.what());
  }
  return summary;
}

std::string render_report_table(const std::vector<RunSummary>& runs) {
  const std::vector<std::string> columns(std::begin(kMetricKeys), std::end(kMetricKeys));

  // Best average per column, for the star marker.
  std::map<std::string, double> best;
  for (const auto& run : runs)
    for (const auto& col : columns) {
      const auto it = run.aggregates.find(col);
      if (it == run.aggregates.end()) continue;
      const auto bit = best.find(col);
      if (bit == best.end() || it->second.avg > bit->second) best[col] = it->second.avg;
    }

  std::size_t label_width = 4;
  for (const auto& run : runs) label_width = std::max(label_width, run.label.size());

  std::ostringstream out;
  out << std::string(label_width, ' ');
  for (const auto& col : columns) out << "  " << col << std::string(23 - col.size(), ' ');
  out << '\n';
  for (const auto& run : runs) {
    out << run.label << std::string(label_width - run.label.size(), ' ');
    for (const auto& col : columns) {
      std::string cell = "-";
      const auto it = run.aggregates.find(col);
      if (it != run.aggregates.end()) {
        cell = format_triple(it->second);
        if (best.count(col) && it->second.avg == best[col]) cell += '*';
      }
      out << "  " << cell << std::string(cell.size() < 23 ? 23 - cell.size() : 1, ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string report_table_csv(const std::vector<RunSummary>& runs) {
  std::string out = "run,restarts";
  for (const char* key : kMetricKeys)
    out += std::string(",") + key + "_min," + key + "_avg," + key + "_max";
  out += '\n';
  for (const auto& run : runs) {
    out += run.label + ',' + std::to_string(run.restarts);
    for (const char* key : kMetricKeys) {
      const auto it = run.aggregates.find(key);
      if (it == run.aggregates.end()) {
        out += ",,,";
      } else {
        out += ',' + format_double(it->second.min) + ',' + format_double(it->second.avg) + ',' +
               format_double(it->second.max);
      }
    }
    out += '\n';
  }
  return out;
}

std::string beta_policy_label(const BetaPolicy& policy) {
  switch (policy.kind) {
    case BetaKind::AlgorithmDefault:
      return "default";
    case BetaKind::Fixed: {
      std::string out = "fixed:";
      for (Index h = 0; h < policy.fixed_values.size(); ++h) {
        if (h > 0) out += ',';
        out += format_double(policy.fixed_values[h]);
      }
      return out;
    }
    case BetaKind::MeanCenterScaled:
      return policy.scale_count == 1 ? "eq9" : "eq9:" + std::to_string(policy.scale_count);
    case BetaKind::MeanAbsoluteDeviation:
      return "eq10";
    case BetaKind::CenterSpread:
      return "eq11";
    case BetaKind::InverseVariance:
      return "invvar";
  }
  return "?";
}

std::vector<SweepCell> run_sweep(const MultiViewDataset& ds, const ExperimentSpec& base,
                                 const SweepSpec& sweep) {
  if (sweep.alphas.empty() || sweep.stabilizers.empty() || sweep.beta_policies.empty())
    throw std::invalid_argument("sweep: empty grid");
  std::vector<SweepCell> cells;
  for (const double alpha : sweep.alphas)
    for (const double p : sweep.stabilizers)
      for (const auto& beta : sweep.beta_policies) {
        ExperimentSpec spec = base;
        spec.config.alpha = alpha;
        spec.config.stabilizer = {StabilizerPolicy::Kind::UserFixed, p};
        spec.config.beta_policy = beta;
        SweepCell cell;
        cell.alpha = alpha;
        cell.stabilizer = p;
        cell.beta_label = beta_policy_label(beta);
        cell.report = run_experiment(ds, spec);
        cells.push_back(std::move(cell));
      }
  return cells;
}

std::string sweep_summary_csv(const std::vector<SweepCell>& cells) {
  std::vector<std::size_t> order(cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const bool by_ari = !cells.empty() && cells.front().report.has_metrics;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (by_ari)
      return cells[a].report.aggregates.at("ari").avg > cells[b].report.aggregates.at("ari").avg;
    return cells[a].report.aggregates.at("objective").avg <
           cells[b].report.aggregates.at("objective").avg;
  });

  std::string out = "algorithm,alpha,p,beta,restarts";
  for (const char* key : kMetricKeys) out += std::string(",") + key + "_min," + key + "_avg," + key + "_max";
  out += ",objective_avg\n";
  for (const std::size_t idx : order) {
    const auto& cell = cells[idx];
    out += std::string(algorithm_name(cell.report.config.algorithm)) + ',' +
           format_double(cell.alpha) + ',' + format_double(cell.stabilizer) + ',' +
           cell.beta_label + ',' + std::to_string(cell.report.restarts);
    for (const char* key : kMetricKeys) {
      const auto it = cell.report.aggregates.find(key);
      if (it == cell.report.aggregates.end()) {
        out += ",,,";
      } else {
        out += ',' + format_double(it->second.min) + ',' + format_double(it->second.avg) + ',' +
               format_double(it->second.max);
      }
    }
    out += ',' + format_double(cell.report.aggregates.at("objective").avg) + '\n';
  }
  return out;
}

}  // namespace mvkm
