#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcone/commands.hpp"
#include "pcone/io.hpp"

using namespace pcone;
namespace fs = std::filesystem;

namespace {

std::string write_config(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "pcone_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << body;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSolve2d = R"({
  "schema_version": 1,
  "cone": {"rays": [[1,0],[0,1]]},
  "density": {"q": 1.5, "psi": "constant"},
  "target": {
    "directions": [[-0.70710678118654752, -0.70710678118654752]],
    "masses": [1.0]
  },
  "seed": 42
})";

const char* kEval2d = R"({
  "cone": {"rays": [[1,0],[0,1]]},
  "density": {"q": 1.5},
  "target": {
    "directions": [[-0.70710678118654752, -0.70710678118654752]],
    "masses": [1.0]
  },
  "support_magnitudes": [1.0],
  "seed": 7
})";

}  // namespace

TEST_CASE("cmd_solve writes a convergent report") {
  const std::string cfg = write_config("solve2d.json", kSolve2d);
  CommandOptions opts;
  opts.out_dir = (fs::temp_directory_path() / "pcone_cli_tests/out_solve").string();
  REQUIRE(cmd_solve(cfg, opts) == 0);

  const auto j = nlohmann::json::parse(slurp(opts.out_dir + "/solve_report.json"));
  CHECK(j["schema_version"] == 1);
  CHECK(j["status"] == "converged");
  CHECK(j["residual"].get<double>() <= 1e-8);
  CHECK(j["atoms"].size() == 1);
  // closed form (mu/(2A))^2 with mu = 1, A the frozen facet integral
  const double expect = std::pow(1.0 / (2.0 * 1.66179243236187), 2.0);
  CHECK(j["atoms"][0]["hbar"].get<double>() ==
        doctest::Approx(expect).epsilon(1e-5));
  CHECK(fs::exists(opts.out_dir + "/solve_trace.csv"));
}

TEST_CASE("cmd_solve determinism: byte-identical reruns") {
  const std::string cfg = write_config("solve2d.json", kSolve2d);
  CommandOptions a, b;
  a.out_dir = (fs::temp_directory_path() / "pcone_cli_tests/det_a").string();
  b.out_dir = (fs::temp_directory_path() / "pcone_cli_tests/det_b").string();
  REQUIRE(cmd_solve(cfg, a) == 0);
  REQUIRE(cmd_solve(cfg, b) == 0);
  CHECK(slurp(a.out_dir + "/solve_report.json") ==
        slurp(b.out_dir + "/solve_report.json"));
  CHECK(slurp(a.out_dir + "/solve_trace.csv") ==
        slurp(b.out_dir + "/solve_trace.csv"));
}

TEST_CASE("cmd_solve rejects q = n with the documented message") {
  std::string bad = kSolve2d;
  const auto pos = bad.find("1.5");
  bad.replace(pos, 3, "2.0");
  const std::string cfg = write_config("badq.json", bad);
  CommandOptions opts;
  opts.out_dir = (fs::temp_directory_path() / "pcone_cli_tests/badq").string();
  CHECK(cmd_solve(cfg, opts) == 1);
}

TEST_CASE("cmd_evaluate report and schema round-trip") {
  const std::string cfg = write_config("eval2d.json", kEval2d);
  CommandOptions opts;
  opts.out_dir = (fs::temp_directory_path() / "pcone_cli_tests/out_eval").string();
  opts.route_radial = true;
  opts.route_mc = true;
  REQUIRE(cmd_evaluate(cfg, opts) == 0);

  const auto j = nlohmann::json::parse(slurp(opts.out_dir + "/evaluate_report.json"));
  CHECK(j["atoms"][0]["active"] == true);
  CHECK(j["atoms"][0]["surface"].get<double>() == doctest::Approx(2.0));
  CHECK(j["atoms"][0]["cone_volume"].get<double>() == doctest::Approx(1.0));
  CHECK(j["totals"]["covolume_theta"].get<double>() ==
        doctest::Approx(3.32358486472375).epsilon(1e-8));
  CHECK(j["routes"].contains("radial"));
  CHECK(j["routes"].contains("mc"));
}

TEST_CASE("cmd_bounds pass and sweep") {
  const std::string cfg = write_config("eval2d.json", kEval2d);
  CommandOptions opts;
  opts.out_dir = (fs::temp_directory_path() / "pcone_cli_tests/out_bounds").string();
  opts.sweep = true;
  REQUIRE(cmd_bounds(cfg, opts) == 0);
  const auto j = nlohmann::json::parse(slurp(opts.out_dir + "/bounds_report.json"));
  CHECK(j["pass"] == true);
  CHECK(j["measured_cone_volume"].get<double>() == doctest::Approx(1.0));
  CHECK(fs::exists(opts.out_dir + "/bounds_sweep.csv"));

  CommandOptions bad = opts;
  bad.omega = {5};
  CHECK(cmd_bounds(cfg, bad) == 1);

  CommandOptions empty_omega = opts;
  empty_omega.omega_given = true;
  CHECK(cmd_bounds(cfg, empty_omega) == 1);
}

TEST_CASE("cmd_evaluate lists inactive constraints with zeros") {
  const char* cfgtext = R"({
    "cone": {"rays": [[1,0],[0,1]]},
    "density": {"q": 1.5},
    "target": {
      "directions": [[-0.70710678118654752, -0.70710678118654752],
                     [-0.92387953251128674, -0.38268343236508977]],
      "masses": [1.0, 1.0]
    },
    "support_magnitudes": [1.0, 0.5],
    "seed": 7
  })";
  const std::string cfg = write_config("eval_inactive.json", cfgtext);
  CommandOptions opts;
  opts.out_dir =
      (fs::temp_directory_path() / "pcone_cli_tests/out_inactive").string();
  REQUIRE(cmd_evaluate(cfg, opts) == 0);
  const auto j =
      nlohmann::json::parse(slurp(opts.out_dir + "/evaluate_report.json"));
  REQUIRE(j["atoms"].size() == 2);
  CHECK(j["atoms"][1]["active"] == false);
  CHECK(j["atoms"][1]["surface_theta"].get<double>() == 0.0);
  CHECK(j["atoms"][1]["cone_volume_theta"].get<double>() == 0.0);
  CHECK(j["atoms"][1]["surface"].get<double>() == 0.0);
}

TEST_CASE("cmd_convergence level validation") {
  std::string cfgtext = R"({
    "cone": {"rays": [[1,0],[0,1]]},
    "density": {"q": 1.5},
    "target": {
      "directions": [[-0.70710678118654752, -0.70710678118654752],
                     [-0.92387953251128674, -0.38268343236508977]],
      "masses": [1.0, 0.5]
    },
    "convergence": {"nest": [[0],[0,1]]},
    "seed": 3
  })";
  const std::string cfg = write_config("conv2d.json", cfgtext);
  CommandOptions opts;
  opts.out_dir = (fs::temp_directory_path() / "pcone_cli_tests/out_conv").string();
  REQUIRE(cmd_convergence(cfg, opts) == 0);
  CHECK(fs::exists(opts.out_dir + "/convergence_levels.csv"));

  CommandOptions bad = opts;
  bad.nest = {{0, 1}, {1}};
  CHECK(cmd_convergence(cfg, bad) == 1);
}

TEST_CASE("solve report feeds back into evaluate consistently") {
  // full circle through the 12-digit serialization: solve, read the
  // reported support magnitudes, evaluate them, and recover the target
  const char* solve_text = R"({
    "cone": {"rays": [[1,0],[0,1]]},
    "density": {"q": 1.5},
    "target": {
      "directions": [[-0.70710678118654752, -0.70710678118654752],
                     [-0.92387953251128674, -0.38268343236508977],
                     [-0.38268343236508977, -0.92387953251128674]],
      "masses": [1.0, 0.5, 0.25]
    },
    "seed": 21
  })";
  const std::string solve_cfg = write_config("roundtrip_solve.json", solve_text);
  CommandOptions so;
  so.out_dir =
      (fs::temp_directory_path() / "pcone_cli_tests/out_roundtrip_s").string();
  REQUIRE(cmd_solve(solve_cfg, so) == 0);
  const auto rep =
      nlohmann::json::parse(slurp(so.out_dir + "/solve_report.json"));

  nlohmann::ordered_json eval_cfg = nlohmann::ordered_json::parse(solve_text);
  nlohmann::ordered_json hbar = nlohmann::ordered_json::array();
  for (const auto& atom : rep["atoms"]) hbar.push_back(atom["hbar"]);
  eval_cfg["support_magnitudes"] = hbar;
  const std::string eval_path =
      write_config("roundtrip_eval.json", eval_cfg.dump());

  CommandOptions eo;
  eo.out_dir =
      (fs::temp_directory_path() / "pcone_cli_tests/out_roundtrip_e").string();
  REQUIRE(cmd_evaluate(eval_path, eo) == 0);
  const auto ev =
      nlohmann::json::parse(slurp(eo.out_dir + "/evaluate_report.json"));
  const std::vector<double> masses{1.0, 0.5, 0.25};
  for (int i = 0; i < 3; ++i) {
    const double got = ev["atoms"][i]["cone_volume_theta"].get<double>();
    CHECK(got == doctest::Approx(masses[i]).epsilon(1e-6));
  }
}

TEST_CASE("non-unit target directions are rejected on load") {
  const char* cfgtext = R"({
    "cone": {"rays": [[1,0],[0,1]]},
    "density": {"q": 1.5},
    "target": {"directions": [[-0.7, -0.7]], "masses": [1.0]},
    "support_magnitudes": [1.0]
  })";
  const std::string cfg = write_config("nonunit.json", cfgtext);
  CommandOptions opts;
  opts.out_dir =
      (fs::temp_directory_path() / "pcone_cli_tests/out_nonunit").string();
  CHECK(cmd_evaluate(cfg, opts) == 1);
}

TEST_CASE("malformed config exits 1") {
  const std::string cfg = write_config("broken.json", "{ not json");
  CommandOptions opts;
  opts.out_dir = (fs::temp_directory_path() / "pcone_cli_tests/out_broken").string();
  CHECK(cmd_solve(cfg, opts) == 1);
  CHECK(cmd_evaluate(cfg, opts) == 1);
  CHECK(cmd_bounds(cfg, opts) == 1);
  CHECK(cmd_convergence(cfg, opts) == 1);
}
