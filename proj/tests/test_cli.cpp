#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "mvkm/io.hpp"

// End-to-end checks of the installed command-line surface: exit codes and
// byte-level determinism of the emitted files.

namespace fs = std::filesystem;

namespace {

const std::string kCli = MVKM_CLI_PATH;

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  const fs::path dir =
      fs::temp_directory_path() / ("mvkm_cli_" + tag + "_" + std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const int status = std::system(("\"" + kCli + "\" " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("synth is byte-deterministic and validates its arguments") {
  const auto a = fresh_dir("synth_a");
  const auto b = fresh_dir("synth_b");
  CHECK(run("synth --n 100 --seed 7 --out " + a.string()) == 0);
  CHECK(run("synth --n 100 --seed 7 --out " + b.string()) == 0);
  for (const char* file : {"manifest.json", "view1.csv", "view2.csv", "view3.csv", "labels.csv"})
    CHECK(mvkm::read_text_file(a / file) == mvkm::read_text_file(b / file));

  SUBCASE("zero mixing proportions are a usage error") {
    CHECK(run("synth --mixing 0.5,0.5,0,0 --out " + fresh_dir("synth_bad").string()) == 1);
  }
  SUBCASE("defaults flag is accepted") {
    CHECK(run("synth --defaults --n 60 --out " + fresh_dir("synth_def").string()) == 0);
  }
}

TEST_CASE("exit codes distinguish usage, data, and numerical errors") {
  const auto out = fresh_dir("codes");
  // usage: unknown flag, unknown algorithm, missing subcommand
  CHECK(run("frobnicate") == 1);
  CHECK(run("fit --algo nosuch --data synthetic:n=50 --c 4 --out " + out.string()) == 1);
  CHECK(run("fit --alpha 0.5 --data synthetic:n=50 --c 4 --out " + out.string()) == 1);
  // data: manifest that does not exist
  CHECK(run("fit --data /nonexistent/manifest.json --c 4 --out " + out.string()) == 2);
  CHECK(run("validate --data /nonexistent/manifest.json") == 2);
  // numerical: magnitudes whose squared distances overflow
  const auto huge = fresh_dir("huge");
  std::ofstream(huge / "v.csv") << "1e200\n-1e200\n";
  std::ofstream(huge / "manifest.json") << R"({"views":["v.csv"]})";
  CHECK(run("fit --algo mvkmc --c 1 --restarts 1 --data " + (huge / "manifest.json").string() +
            " --out " + out.string()) == 3);
  // success paths
  CHECK(run("validate --data synthetic:n=50:seed=2") == 0);
  CHECK(run("--help") == 0);
}

TEST_CASE("synth accepts a means override file") {
  const auto dir = fresh_dir("means");
  std::ofstream(dir / "means.json") << "[[[0,0],[9,9]],[[5,-5],[-5,5]]]";
  REQUIRE(run("synth --n 40 --seed 2 --mixing 0.5,0.5 --scales 1,1 --means " +
              (dir / "means.json").string() + " --out " + (dir / "ds").string()) == 0);
  const auto ds = mvkm::load_dataset(dir / "ds" / "manifest.json");
  CHECK(ds.view_count() == 2);
  CHECK(ds.sample_count() == 40);

  // cluster count mismatch between mixing and means is a usage error
  CHECK(run("synth --n 40 --mixing 0.3,0.3,0.4 --scales 1,1,1 --means " +
            (dir / "means.json").string() + " --out " + (dir / "bad").string()) == 1);
}

TEST_CASE("fit emits restart csv, aggregate json, and the best fit result") {
  const auto out = fresh_dir("fit_files");
  REQUIRE(run("fit --algo mvkmc --data synthetic:n=150:seed=4 --restarts 3 --seed 5 --out " +
              out.string()) == 0);
  CHECK(fs::exists(out / "restarts.csv"));
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "best_fit.json"));

  const auto best = nlohmann::json::parse(mvkm::read_text_file(out / "best_fit.json"));
  CHECK(best.at("assignments").size() == 150);
  CHECK(best.at("weights").size() == 3);
  CHECK(best.at("centers").size() == 3);
  CHECK(best.at("objective_trace").size() >= 1);
  CHECK(best.contains("iterations"));
  CHECK(best.contains("converged"));
  CHECK(best.at("empty_clusters").size() == 4);
}

TEST_CASE("sweep and report subcommands run end to end") {
  const auto sweep_out = fresh_dir("sweep");
  REQUIRE(run("sweep --algo gkmvkm --alpha 2,3 --p 1,2 --beta invvar "
              "--data synthetic:n=120:seed=6 --restarts 2 --seed 3 --out " +
              sweep_out.string()) == 0);
  CHECK(fs::exists(sweep_out / "summary.csv"));
  const auto summary = mvkm::read_text_file(sweep_out / "summary.csv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 5);  // header + 4 cells

  const auto fit_out = fresh_dir("report_src");
  REQUIRE(run("fit --algo mvkmc --data synthetic:n=120:seed=6 --restarts 2 --seed 3 --out " +
              fit_out.string()) == 0);
  CHECK(run("report " + fit_out.string()) == 0);
  CHECK(run("report " + fit_out.string() + " --format csv") == 0);
  CHECK(run("report " + fresh_dir("report_empty").string()) == 2);  // corrupt/missing run

  SUBCASE("empty sweep grid is a usage error") {
    CHECK(run("sweep --algo gkmvkm --alpha '' --data synthetic:n=120:seed=6 --out " +
              fresh_dir("sweep_bad").string()) == 1);
  }
}
