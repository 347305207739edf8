// mvkm: generate benchmark data, run multi-restart clustering experiments,
// sweep hyperparameter grids, and render stored run reports.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <charconv>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvkm/bench.hpp"
#include "mvkm/io.hpp"
#include "mvkm/synthetic.hpp"

namespace fs = std::filesystem;
using namespace mvkm;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  double value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw UsageError("expected a number for " + what + ", got '" + text + "'");
  return value;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_number(part, what));
  return values;
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "kmeans") return Algorithm::KMeans;
  if (name == "mvkmc") return Algorithm::Mvkmc;
  if (name == "mvkm-ed") return Algorithm::MvkmEd;
  if (name == "gkmvkm") return Algorithm::Gkmvkm;
  throw UsageError("unknown algorithm '" + name + "' (expected kmeans|mvkmc|mvkm-ed|gkmvkm)");
}

InitMode parse_init(const std::string& name) {
  if (name == "random") return InitMode::RandomDistinctPoints;
  if (name == "svkm") return InitMode::SingleViewKMeans;
  throw UsageError("unknown init mode '" + name + "' (expected random|svkm)");
}

BetaPolicy parse_beta(const std::string& token) {
  BetaPolicy policy;
  if (token == "default") return policy;
  if (token == "eq10") {
    policy.kind = BetaKind::MeanAbsoluteDeviation;
  } else if (token == "eq11") {
    policy.kind = BetaKind::CenterSpread;
  } else if (token == "invvar") {
    policy.kind = BetaKind::InverseVariance;
  } else if (token == "eq9" || token.rfind("eq9:", 0) == 0) {
    policy.kind = BetaKind::MeanCenterScaled;
    if (token.size() > 4) {
      const double t = parse_number(token.substr(4), "--beta eq9 scale count");
      if (t < 1 || t != static_cast<int>(t))
        throw UsageError("--beta eq9 scale count must be a positive integer");
      policy.scale_count = static_cast<int>(t);
    }
  } else if (token.rfind("fixed:", 0) == 0) {
    policy.kind = BetaKind::Fixed;
    const auto values = parse_number_list(token.substr(6), "--beta fixed values");
    policy.fixed_values = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                            static_cast<Index>(values.size()));
  } else {
    throw UsageError("unknown beta policy '" + token +
                     "' (expected fixed:<v,..>|eq9[:t]|eq10|eq11|invvar)");
  }
  return policy;
}

StabilizerPolicy parse_stabilizer(const std::string& token) {
  if (token == "mountain")
    return {StabilizerPolicy::Kind::MountainEstimated, 2.0};
  return {StabilizerPolicy::Kind::UserFixed, parse_number(token, "--p")};
}

/// --data accepts a manifest path or a synthetic:... token
/// (synthetic[:n=<N>][:seed=<S>] with the built-in benchmark parameters).
MultiViewDataset resolve_dataset(const std::string& ref) {
  if (ref.rfind("synthetic", 0) == 0 &&
      (ref.size() == 9 || ref[9] == ':')) {
    SyntheticSpec spec = SyntheticSpec::benchmark_defaults();
    for (const auto& part : split(ref, ':')) {
      if (part == "synthetic" || part.empty()) continue;
      const auto eq = part.find('=');
      if (eq == std::string::npos)
        throw UsageError("bad synthetic token segment '" + part + "' (expected key=value)");
      const std::string key = part.substr(0, eq);
      const std::string value = part.substr(eq + 1);
      if (key == "n")
        spec.n = static_cast<Index>(parse_number(value, "synthetic n"));
      else if (key == "seed")
        spec.seed = static_cast<std::uint64_t>(parse_number(value, "synthetic seed"));
      else
        throw UsageError("unknown synthetic token key '" + key + "' (expected n or seed)");
    }
    return generate_synthetic(spec);
  }
  return load_dataset(ref);
}

Index default_cluster_count(const MultiViewDataset& ds) {
  if (!ds.labels) throw UsageError("--c is required when the dataset has no labels");
  std::vector<int> seen(ds.labels->data(), ds.labels->data() + ds.labels->size());
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  return static_cast<Index>(seen.size());
}

void print_validation(const ValidationReport& report, const std::string& format) {
  if (format == "json") {
    std::cout << to_json(report).dump(2) << '\n';
    return;
  }
  std::cout << "ok: " << (report.ok ? "true" : "false") << "\n"
            << "samples: " << report.n << "\nviews: " << report.s << "\ndims:";
  for (const Index d : report.dims) std::cout << ' ' << d;
  std::cout << "\nlabels: " << (report.has_labels ? "present" : "absent") << '\n';
  for (const auto& issue : report.issues) {
    std::cout << "issue: " << issue.what;
    if (issue.view >= 0) std::cout << " (view " << issue.view;
    if (issue.row >= 0) std::cout << ", row " << issue.row << ", col " << issue.col;
    if (issue.view >= 0) std::cout << ")";
    std::cout << '\n';
  }
}

std::string sanitized(std::string label) {
  for (char& ch : label)
    if (ch == ':' || ch == ',' || ch == '/' || ch == '.') ch = '-';
  return label;
}

struct FitArgs {
  std::string data;
  std::string algo = "mvkmc";
  Index c = -1;
  std::string alpha = "2";
  std::string p = "2";
  std::string beta = "default";
  double epsilon = 1e-6;
  int max_iter = 100;
  std::string init = "svkm";
  int restarts = 50;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  int threads = 0;
};

void add_fit_options(CLI::App& cmd, FitArgs& args, bool grids) {
  cmd.add_option("--data", args.data, "dataset manifest path or synthetic[:n=..][:seed=..]")
      ->required();
  cmd.add_option("--algo", args.algo, "kmeans|mvkmc|mvkm-ed|gkmvkm");
  cmd.add_option("--c", args.c, "number of clusters (default: distinct label count)");
  cmd.add_option("--alpha", args.alpha,
                 grids ? "view-weight exponent grid, comma separated" : "view-weight exponent (> 1)");
  cmd.add_option("--p", args.p,
                 grids ? "stabilizer exponent grid, comma separated"
                       : "stabilizer exponent (>= 1) or 'mountain'");
  cmd.add_option("--beta", args.beta,
                 std::string("kernel coefficient policy: fixed:<v,..>|eq9[:t]|eq10|eq11|invvar") +
                     (grids ? " (semicolon-separated list of tokens)" : ""));
  cmd.add_option("--epsilon", args.epsilon, "relative objective-change tolerance");
  cmd.add_option("--max-iter", args.max_iter, "iteration cap");
  cmd.add_option("--init", args.init, "random|svkm");
  cmd.add_option("--restarts", args.restarts, "independent restarts (seed = base seed + index)");
  cmd.add_option("--seed", args.seed, "base seed");
  cmd.add_option("--out", args.out, "output directory")->required();
  cmd.add_option("--format", args.format, "stdout format: json|csv");
  cmd.add_option("--threads", args.threads, "worker threads (0 = auto, 1 = serial)");
}

ExperimentSpec build_spec(const FitArgs& args, const MultiViewDataset& ds) {
  ExperimentSpec spec;
  spec.dataset_ref = args.data;
  spec.restarts = args.restarts;
  spec.base_seed = args.seed;
  spec.threads = args.threads;
  spec.config.algorithm = parse_algorithm(args.algo);
  spec.config.cluster_count = args.c > 0 ? args.c : default_cluster_count(ds);
  spec.config.alpha = parse_number(args.alpha, "--alpha");
  spec.config.stabilizer = parse_stabilizer(args.p);
  spec.config.beta_policy = parse_beta(args.beta);
  spec.config.epsilon = args.epsilon;
  spec.config.max_iter = args.max_iter;
  spec.config.init = parse_init(args.init);
  return spec;
}

int run_synth(const std::string& out, std::uint64_t seed, Index n, const std::string& mixing,
              const std::string& scales, const std::string& means_file, const std::string& name,
              bool plot_data, const std::string& format) {
  SyntheticSpec spec = SyntheticSpec::benchmark_defaults();
  spec.seed = seed;
  spec.n = n;
  if (!mixing.empty()) {
    const auto values = parse_number_list(mixing, "--mixing");
    for (const double v : values)
      if (!(v > 0)) throw UsageError("--mixing proportions must be strictly positive");
    spec.mixing = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                    static_cast<Index>(values.size()));
  }
  if (!scales.empty()) {
    const auto values = parse_number_list(scales, "--scales");
    spec.covariance_scales = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                               static_cast<Index>(values.size()));
  }
  if (!means_file.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text_file(means_file));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("malformed means file " + means_file + ": " + e.what());
    }
    spec.means.clear();
    for (const auto& view : j) {
      MatrixX<double> m(static_cast<Index>(view.size()), 2);
      Index k = 0;
      for (const auto& mean : view) {
        if (!mean.is_array() || mean.size() != 2)
          throw DataError("means file: each mean must be a 2-element array");
        m(k, 0) = mean[0].get<double>();
        m(k, 1) = mean[1].get<double>();
        ++k;
      }
      spec.means.push_back(std::move(m));
    }
  }

  try {
    validate_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  MultiViewDataset ds = generate_synthetic(spec);
  if (!name.empty()) ds.name = name;
  const fs::path manifest = save_dataset(ds, out);
  if (plot_data) write_scatter_csv(ds, fs::path(out) / "points.csv");
  std::cerr << "wrote " << manifest.string() << '\n';
  print_validation(validate(ds), format);
  return 0;
}

int run_fit(const FitArgs& args) {
  const MultiViewDataset ds = resolve_dataset(args.data);
  const ExperimentSpec spec = build_spec(args, ds);
  if (!ds.labels)
    std::cerr << "warning: dataset has no labels; metric columns are omitted\n";
  const RunReport report = run_experiment(ds, spec);
  write_run_report(report, args.out);

  // Full solver output (assignments, centers, trace, ...) of the best
  // restart: highest ARI with labels, lowest objective otherwise.
  std::size_t best = 0;
  for (std::size_t r = 1; r < report.rows.size(); ++r) {
    if (report.has_metrics
            ? report.rows[r].metrics->ari > report.rows[best].metrics->ari
            : report.rows[r].objective < report.rows[best].objective)
      best = r;
  }
  SolverConfig best_cfg = spec.config;
  best_cfg.seed = report.rows[best].seed;
  nlohmann::json best_json = to_json(fit(ds, best_cfg));
  best_json["restart"] = report.rows[best].restart;
  best_json["seed"] = report.rows[best].seed;
  write_text_file(fs::path(args.out) / "best_fit.json", best_json.dump(2) + "\n");

  if (args.format == "csv")
    std::cout << restart_csv(report);
  else
    std::cout << run_report_json(report).dump(2) << '\n';
  return 0;
}

int run_sweep_cmd(const FitArgs& args) {
  const MultiViewDataset ds = resolve_dataset(args.data);

  SweepSpec sweep;
  sweep.alphas = parse_number_list(args.alpha, "--alpha");
  for (const auto& token : split(args.p, ','))
    sweep.stabilizers.push_back(parse_number(token, "--p"));
  for (const auto& token : split(args.beta, ';'))  // ';' so fixed:<v,..> stays intact
    sweep.beta_policies.push_back(parse_beta(token));
  if (sweep.alphas.empty() || sweep.stabilizers.empty() || sweep.beta_policies.empty())
    throw UsageError("sweep: empty grid");

  FitArgs first = args;  // base spec from the first grid cell
  first.alpha = format_double(sweep.alphas.front());
  first.p = format_double(sweep.stabilizers.front());
  first.beta = beta_policy_label(sweep.beta_policies.front());
  ExperimentSpec base = build_spec(first, ds);

  const auto cells = run_sweep(ds, base, sweep);
  fs::create_directories(args.out);
  int index = 0;
  for (const auto& cell : cells) {
    char tag[64];
    std::snprintf(tag, sizeof(tag), "cell_%03d_a%s_p%s_%s", index++,
                  sanitized(format_double(cell.alpha)).c_str(),
                  sanitized(format_double(cell.stabilizer)).c_str(),
                  sanitized(cell.beta_label).c_str());
    write_run_report(cell.report, fs::path(args.out) / tag);
  }
  const std::string summary = sweep_summary_csv(cells);
  write_text_file(fs::path(args.out) / "summary.csv", summary);
  std::cout << summary;
  return 0;
}

int run_report_cmd(const std::vector<std::string>& dirs, const std::string& format,
                   const std::string& out) {
  std::vector<RunSummary> summaries;
  for (const auto& dir : dirs) summaries.push_back(load_run_summary(dir));
  const std::string csv = report_table_csv(summaries);
  if (!out.empty()) write_text_file(out, csv);
  if (format == "csv")
    std::cout << csv;
  else
    std::cout << render_report_table(summaries);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-view k-means clustering toolkit"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate the synthetic benchmark dataset");
  std::string synth_out, synth_mixing, synth_scales, synth_means, synth_name, synth_format = "text";
  std::uint64_t synth_seed = 0;
  Index synth_n = 10000;
  bool synth_plot = false, synth_defaults = false;
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--n", synth_n, "sample count");
  synth->add_option("--mixing", synth_mixing, "cluster proportions, comma separated (must be > 0)");
  synth->add_option("--scales", synth_scales, "per-cluster covariance scales, comma separated");
  synth->add_option("--means", synth_means, "JSON file: per view, one [x,y] mean per cluster");
  synth->add_option("--name", synth_name, "dataset name in the manifest");
  synth->add_flag("--defaults", synth_defaults, "use the built-in benchmark parameters (default)");
  synth->add_flag("--plot-data", synth_plot, "also write tidy scatter rows to points.csv");
  synth->add_option("--format", synth_format, "validation report format: text|json");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "run a multi-restart experiment");
  FitArgs fit_args;
  add_fit_options(*fit_cmd, fit_args, false);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "grid over alpha, p, and beta policies");
  FitArgs sweep_args;
  add_fit_options(*sweep_cmd, sweep_args, true);

  // report
  auto* report_cmd = app.add_subcommand("report", "render stored run reports");
  std::vector<std::string> report_dirs;
  std::string report_format = "text", report_out;
  report_cmd->add_option("dirs", report_dirs, "run directories")->required();
  report_cmd->add_option("--format", report_format, "text|csv");
  report_cmd->add_option("--out", report_out, "also write the CSV table here");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "load and validate a dataset");
  std::string validate_data, validate_format = "text";
  validate_cmd->add_option("--data", validate_data, "dataset manifest path or synthetic token")
      ->required();
  validate_cmd->add_option("--format", validate_format, "text|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*synth)
      return run_synth(synth_out, synth_seed, synth_n, synth_mixing, synth_scales, synth_means,
                       synth_name, synth_plot, synth_format);
    if (*fit_cmd) return run_fit(fit_args);
    if (*sweep_cmd) return run_sweep_cmd(sweep_args);
    if (*report_cmd) return run_report_cmd(report_dirs, report_format, report_out);
    if (*validate_cmd) {
      const MultiViewDataset ds = resolve_dataset(validate_data);
      print_validation(validate(ds), validate_format);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
