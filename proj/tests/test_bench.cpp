#include <doctest.h>

#include <filesystem>

#include "mvkm/bench.hpp"
#include "mvkm/synthetic.hpp"
#include "oracles.hpp"

using namespace mvkm;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path dir =
      fs::temp_directory_path() / ("mvkm_bench_" + tag + "_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

MultiViewDataset small_benchmark(Index n, std::uint64_t seed) {
  SyntheticSpec spec = SyntheticSpec::benchmark_defaults();
  spec.n = n;
  spec.seed = seed;
  return generate_synthetic(spec);
}

ExperimentSpec small_spec(Algorithm algo, int restarts) {
  ExperimentSpec spec;
  spec.dataset_ref = "synthetic:test";
  spec.config.algorithm = algo;
  spec.config.cluster_count = 4;
  spec.config.alpha = algo == Algorithm::MvkmEd ? 4.0 : 2.0;
  spec.restarts = restarts;
  spec.base_seed = 11;
  return spec;
}

}  // namespace

TEST_CASE("restart seeds fan out from the base seed") {
  const auto ds = small_benchmark(120, 1);
  const auto report = run_experiment(ds, small_spec(Algorithm::Mvkmc, 5));
  REQUIRE(report.rows.size() == 5);
  for (int r = 0; r < 5; ++r) {
    CHECK(report.rows[static_cast<std::size_t>(r)].restart == r);
    CHECK(report.rows[static_cast<std::size_t>(r)].seed == 11 + static_cast<std::uint64_t>(r));
  }
}

TEST_CASE("aggregates are ordered and recomputable from the rows") {
  const auto ds = small_benchmark(150, 2);
  const auto report = run_experiment(ds, small_spec(Algorithm::Mvkmc, 8));
  REQUIRE(report.has_metrics);
  for (const auto& [key, agg] : report.aggregates) {
    CHECK(agg.min <= agg.avg);
    CHECK(agg.avg <= agg.max);
  }
  const auto recomputed = aggregate_rows(report.rows);
  REQUIRE(recomputed.size() == report.aggregates.size());
  for (const auto& [key, agg] : report.aggregates) {
    CHECK(recomputed.at(key).min == agg.min);
    CHECK(recomputed.at(key).avg == agg.avg);
    CHECK(recomputed.at(key).max == agg.max);
  }
}

TEST_CASE("identical specs produce byte-identical restart CSVs") {
  const auto ds = small_benchmark(150, 3);
  const auto spec = small_spec(Algorithm::MvkmEd, 6);
  const auto a = run_experiment(ds, spec);
  const auto b = run_experiment(ds, spec);
  CHECK(restart_csv(a) == restart_csv(b));
}

TEST_CASE("serial and concurrent execution merge to identical reports") {
  const auto ds = small_benchmark(150, 4);
  auto spec = small_spec(Algorithm::Gkmvkm, 7);
  spec.config.stabilizer.value = 2.0;
  spec.threads = 1;
  const auto serial = run_experiment(ds, spec);
  spec.threads = 0;
  const auto parallel = run_experiment(ds, spec);
  CHECK(restart_csv(serial) == restart_csv(parallel));
  for (const auto& [key, agg] : serial.aggregates) {
    CHECK(parallel.aggregates.at(key).min == agg.min);
    CHECK(parallel.aggregates.at(key).avg == agg.avg);
    CHECK(parallel.aggregates.at(key).max == agg.max);
  }
}

TEST_CASE("metrics are omitted when the dataset has no labels") {
  auto ds = small_benchmark(100, 5);
  ds.labels.reset();
  const auto report = run_experiment(ds, small_spec(Algorithm::Mvkmc, 3));
  CHECK_FALSE(report.has_metrics);
  CHECK_FALSE(report.rows.front().metrics.has_value());
  CHECK(report.aggregates.count("ari") == 0);
  CHECK(report.aggregates.count("objective") == 1);
  CHECK(restart_csv(report).rfind("restart,seed,iterations,converged,objective\n", 0) == 0);
}

TEST_CASE("run reports write and reload") {
  const auto ds = small_benchmark(120, 6);
  const auto report = run_experiment(ds, small_spec(Algorithm::MvkmEd, 4));
  const auto dir = fresh_dir("roundtrip");
  write_run_report(report, dir);
  CHECK(fs::exists(dir / "restarts.csv"));
  CHECK(fs::exists(dir / "report.json"));

  const auto summary = load_run_summary(dir);
  CHECK(summary.label == "mvkm-ed");
  CHECK(summary.restarts == 4);
  CHECK(summary.has_metrics);
  CHECK(summary.aggregates.at("ari").avg == report.aggregates.at("ari").avg);

  CHECK_THROWS_AS(load_run_summary(dir / "missing"), DataError);
}

TEST_CASE("single-restart aggregates collapse to one value") {
  const auto ds = small_benchmark(100, 7);
  const auto report = run_experiment(ds, small_spec(Algorithm::Mvkmc, 1));
  for (const auto& [key, agg] : report.aggregates) {
    CHECK(agg.min == agg.avg);
    CHECK(agg.avg == agg.max);
  }
}

TEST_CASE("report table renders one row per run and stars the best averages") {
  const auto ds = small_benchmark(130, 8);
  const auto a = summarize(run_experiment(ds, small_spec(Algorithm::Mvkmc, 3)));
  const auto b = summarize(run_experiment(ds, small_spec(Algorithm::MvkmEd, 3)));

  const auto single = render_report_table({a});
  CHECK(single.find("mvkmc") != std::string::npos);
  CHECK(std::count(single.begin(), single.end(), '/') == 12);  // 6 triples

  const auto table = render_report_table({a, b});
  CHECK(table.find("mvkm-ed") != std::string::npos);
  CHECK(table.find('*') != std::string::npos);

  const auto csv = report_table_csv({a, b});
  CHECK(csv.rfind("run,restarts", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("sweep covers the full grid and its summary is deterministic") {
  const auto ds = small_benchmark(100, 9);
  auto base = small_spec(Algorithm::Gkmvkm, 2);
  SweepSpec grid;
  grid.alphas = {2.0, 3.0};
  grid.stabilizers = {1.0, 2.0};
  grid.beta_policies = {BetaPolicy{}};

  const auto cells = run_sweep(ds, base, grid);
  CHECK(cells.size() == 4);
  const auto summary = sweep_summary_csv(cells);
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 5);

  const auto cells2 = run_sweep(ds, base, grid);
  CHECK(sweep_summary_csv(cells2) == summary);

  SUBCASE("empty grid is rejected") {
    grid.alphas.clear();
    CHECK_THROWS_AS(run_sweep(ds, base, grid), std::invalid_argument);
  }
}

TEST_CASE("beta policy labels round-trip the CLI tokens") {
  BetaPolicy policy;
  CHECK(beta_policy_label(policy) == "default");
  policy.kind = BetaKind::MeanCenterScaled;
  CHECK(beta_policy_label(policy) == "eq9");
  policy.scale_count = 3;
  CHECK(beta_policy_label(policy) == "eq9:3");
  policy.kind = BetaKind::MeanAbsoluteDeviation;
  CHECK(beta_policy_label(policy) == "eq10");
  policy.kind = BetaKind::CenterSpread;
  CHECK(beta_policy_label(policy) == "eq11");
  policy.kind = BetaKind::InverseVariance;
  CHECK(beta_policy_label(policy) == "invvar");
  policy.kind = BetaKind::Fixed;
  policy.fixed_values = Eigen::Vector2d(0.5, 2.0);
  CHECK(beta_policy_label(policy) == "fixed:0.5,2");
}

TEST_CASE("gkmvkm stays near-perfect across a small stabilizer grid") {
  const auto ds = small_benchmark(2000, 12);
  auto base = small_spec(Algorithm::Gkmvkm, 3);
  base.config.alpha = 4.0;
  base.config.beta_policy.kind = BetaKind::InverseVariance;
  SweepSpec grid;
  grid.alphas = {4.0};
  grid.stabilizers = {1.0, 2.0, 3.0};
  grid.beta_policies = {base.config.beta_policy};
  const auto cells = run_sweep(ds, base, grid);
  REQUIRE(cells.size() == 3);
  for (const auto& cell : cells)
    CHECK(cell.report.aggregates.at("ari").avg >= 0.99);
}

TEST_CASE("gkmvkm with p one matches mvkm-ed restart for restart") {
  const auto ds = small_benchmark(140, 10);
  auto ed = small_spec(Algorithm::MvkmEd, 5);
  auto gk = small_spec(Algorithm::Gkmvkm, 5);
  ed.config.alpha = gk.config.alpha = 3.0;
  ed.config.beta_policy.kind = gk.config.beta_policy.kind = BetaKind::InverseVariance;
  gk.config.stabilizer.value = 1.0;
  const auto res_ed = run_experiment(ds, ed);
  const auto res_gk = run_experiment(ds, gk);
  for (std::size_t r = 0; r < 5; ++r)
    CHECK(res_ed.rows[r].objective == res_gk.rows[r].objective);
}
