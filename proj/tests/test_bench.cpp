#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "daqgo/bench.hpp"
#include "daqgo/cli.hpp"
#include "daqgo/rng.hpp"
#include "oracles.hpp"

using namespace daqgo;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string capture_stdout(std::vector<std::string> args, int* rc) {
  std::ostringstream sink;
  std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
  *rc = cli_dispatch(std::move(args));
  std::cout.rdbuf(old);
  return sink.str();
}

}  // namespace

TEST_CASE("instance sets are reproducible and per-index seeded") {
  std::vector<IsingInstance> a = build_instances(3, 4, 9);
  std::vector<IsingInstance> b = build_instances(3, 4, 9);
  REQUIRE(a.size() == 4);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].n() == 3);
    CHECK(a[k].couplings() == b[k].couplings());
    CHECK(a[k].fields() == b[k].fields());
    IsingInstance direct = random_instance(3, derive_seed(9, k));
    CHECK(a[k].couplings() == direct.couplings());
    CHECK(a[k].fields() == direct.fields());
  }
  CHECK(a[0].fields() != a[1].fields());
}

TEST_CASE("per-variant simulation time defaults") {
  CHECK(default_t_sim(Algorithm::Daqgo1) == 0.5);
  CHECK(default_t_sim(Algorithm::Daqgo2) == 0.05);
  CHECK(default_t_sim(Algorithm::Daqgo3) == 0.05);
  CHECK(default_t_sim(Algorithm::Daqgo4) == 0.0);
  CHECK(default_t_sim(Algorithm::Qgo) == 0.0);
}

TEST_CASE("solve configs inherit the experiment grid point") {
  ExperimentConfig cfg;
  cfg.h_diff = 0.005;
  SolveConfig sc = make_solve_config(Algorithm::Daqgo2, cfg, 0.7, 1.25, 1.75);
  CHECK(sc.measure.kind == MeasureKind::Daqgo2);
  CHECK(sc.measure.t_sim == 0.05);
  CHECK(sc.tau == 0.7);
  CHECK(sc.b_opt == 1.25);
  CHECK(sc.c_opt_abs == 1.75);
  CHECK(sc.h_diff == 0.005);

  cfg.t_sim = 0.4;
  SolveConfig pinned = make_solve_config(Algorithm::Daqgo2, cfg, 0.7, 1.0, 1.5);
  CHECK(pinned.measure.t_sim == 0.4);
}

TEST_CASE("experiment config validation") {
  ExperimentConfig ok;
  CHECK_NOTHROW(validate_config(ok));

  ExperimentConfig bad = ok;
  bad.algorithms.clear();
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = ok;
  bad.n_list = {1};
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = ok;
  bad.tau_list = {0.0};
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = ok;
  bad.instance_count = 0;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = ok;
  bad.c_opt_abs = 0.0;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad.auto_calibrate = true;  // calibration supplies the parameters instead
  CHECK_NOTHROW(validate_config(bad));
}

TEST_CASE("annealing success rises toward the adiabatic limit") {
  ExperimentConfig cfg;
  cfg.algorithms = {Algorithm::Qa};
  cfg.n_list = {2};
  cfg.tau_list = {0.1, 5.0, 50.0};
  cfg.instance_count = 5;
  cfg.rng_seed = 1;
  std::vector<ResultRow> rows = run_tau_sweep(cfg);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].success < rows[1].success);
  CHECK(rows[1].success < rows[2].success);
  CHECK(rows[2].success > 0.9);
  for (const ResultRow& r : rows) {
    CHECK(r.algorithm == "qa");
    CHECK(r.n == 2);
    CHECK(r.instances == 5);
    REQUIRE(r.per_instance.size() == 5);
    double mean = 0.0;
    for (const InstanceOutcome& o : r.per_instance) mean += o.success;
    mean /= 5.0;
    CHECK(r.success == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("the greedy solver saturates small tuned instances") {
  ExperimentConfig cfg;
  cfg.algorithms = {Algorithm::Qgo};
  cfg.n_list = {2};
  cfg.tau_list = {1.0};
  cfg.instance_count = 10;
  cfg.rng_seed = 1;
  cfg.h_diff = 0.005;
  std::vector<ResultRow> rows = run_tau_sweep(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].success >= 0.9);
  for (const InstanceOutcome& o : rows[0].per_instance)
    CHECK((o.success == 0.0 || o.success == 1.0));
}

TEST_CASE("csv serialization is deterministic and schema stable") {
  ExperimentConfig cfg;
  cfg.algorithms = {Algorithm::Qa};
  cfg.n_list = {2};
  cfg.tau_list = {0.1, 1.0};
  cfg.instance_count = 3;
  std::string first = rows_to_csv(run_tau_sweep(cfg), false);
  std::string second = rows_to_csv(run_tau_sweep(cfg), false);
  CHECK(first == second);
  CHECK(first.rfind("algorithm,n,tau,success,instances,seconds\n", 0) == 0);

  ExperimentConfig size_cfg = cfg;
  size_cfg.n_list = {2, 3};
  size_cfg.tau_list = {0.1};
  std::string size_csv = rows_to_csv(run_size_sweep(size_cfg), false);
  CHECK(size_csv.substr(0, size_csv.find('\n')) == first.substr(0, first.find('\n')));
}

TEST_CASE("the seconds column is fixed unless timing is requested") {
  ResultRow row;
  row.algorithm = "qa";
  row.n = 2;
  row.tau = 0.5;
  row.success = 0.25;
  row.instances = 4;
  row.seconds = 1.234;
  std::string plain = rows_to_csv({row}, false);
  CHECK(plain.find(",0.000\n") != std::string::npos);
  CHECK(plain.find("1.234") == std::string::npos);
  std::string timed = rows_to_csv({row}, true);
  CHECK(timed.find("1.234") != std::string::npos);
}

TEST_CASE("detail records reproduce every aggregate") {
  ExperimentConfig cfg;
  cfg.algorithms = {Algorithm::Qa};
  cfg.n_list = {2};
  cfg.tau_list = {0.3, 2.0};
  cfg.instance_count = 4;
  cfg.rng_seed = 77;
  std::vector<ResultRow> rows = run_tau_sweep(cfg);
  nlohmann::json doc = nlohmann::json::parse(rows_to_detail_json(rows));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == rows.size());
  for (const auto& rec : doc) {
    double mean = 0.0;
    REQUIRE(rec.at("per_instance").size() == 4);
    for (std::size_t k = 0; k < rec.at("per_instance").size(); ++k) {
      const auto& o = rec.at("per_instance")[k];
      mean += o.at("success").get<double>();
      CHECK(o.at("seed").get<std::uint64_t>() == derive_seed(77, k));
    }
    mean /= 4.0;
    CHECK(rec.at("success").get<double>() == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("diabatic annealing success decays with system size") {
  ExperimentConfig cfg;
  cfg.algorithms = {Algorithm::Qa};
  cfg.n_list = {2, 3, 4, 5, 6};
  cfg.tau_list = {0.1};
  cfg.instance_count = 10;
  cfg.rng_seed = 1;
  std::vector<ResultRow> rows = run_size_sweep(cfg);
  REQUIRE(rows.size() == 5);
  std::vector<double> sizes, successes;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].n == static_cast<int>(k) + 2);
    sizes.push_back(rows[k].n);
    successes.push_back(rows[k].success);
  }
  CHECK(oracle::spearman_rho(sizes, successes) < -0.9);
}

TEST_CASE("shot report medians favor the energy estimator") {
  ExperimentConfig cfg;
  cfg.algorithms = {Algorithm::Qgo, Algorithm::Daqgo1, Algorithm::Daqgo2,
                    Algorithm::Daqgo3, Algorithm::Daqgo4};
  cfg.n_list = {3};
  cfg.tau_list = {0.1};
  cfg.instance_count = 10;
  cfg.rng_seed = 1;
  std::vector<ShotReportRow> rows = run_shot_report(cfg);
  REQUIRE(rows.size() == 5);
  REQUIRE(rows[0].algorithm == "qgo");
  for (const ShotReportRow& r : rows) {
    CHECK(r.n == 3);
    CHECK(r.degenerate == 0);
    CHECK(r.sel_shots > 0);
    CHECK(r.sign_shots > 0);
    CHECK(r.total > 0);
  }
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[0].total < rows[k].total);

  std::string csv = shot_rows_to_csv(rows);
  CHECK(csv.rfind("algorithm,n,sel_shots,sign_shots,total,degenerate\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  std::istringstream fields(line);
  std::string algo, ncol, sel;
  std::getline(fields, algo, ',');
  std::getline(fields, ncol, ',');
  std::getline(fields, sel, ',');
  CHECK(algo == "qgo");
  CHECK(std::stol(sel) == rows[0].sel_shots);
}

TEST_CASE("command dispatch covers usage errors and one-shot runs") {
  int rc = 0;
  capture_stdout({}, &rc);
  CHECK(rc == 2);
  capture_stdout({"bogus-subcommand"}, &rc);
  CHECK(rc == 2);
  capture_stdout({"bench-tau", "--no-such-flag"}, &rc);
  CHECK(rc == 2);

  std::string wald = capture_stdout(
      {"wald-mc", "--p", "0.5", "--d", "0.05", "--z", "2.58", "--trials", "2000"}, &rc);
  CHECK(rc == 0);
  CHECK(wald.find("N=942\n") != std::string::npos);
  CHECK(wald.find("success_rate=0.9") != std::string::npos);

  std::string solved = capture_stdout(
      {"solve", "--algo", "qgo", "--n", "2", "--tau", "0.5", "--seed", "7"}, &rc);
  CHECK(rc == 0);
  CHECK(solved.find("solution:") != std::string::npos);
  CHECK(solved.find("ground_match:") != std::string::npos);
  CHECK(solved.find("evaluations: 3\n") != std::string::npos);
  CHECK(solved.find("round 1:") != std::string::npos);
}

TEST_CASE("benchmark files are byte identical across runs") {
  const std::string out_a = "/tmp/daqgo_bench_a.csv";
  const std::string out_b = "/tmp/daqgo_bench_b.csv";
  std::vector<std::string> args{"bench-tau", "--algo", "qa,qgo", "--n", "2",
                                "--tau",     "0.1,1",  "--instances", "3",
                                "--seed",    "5",      "--out"};
  int rc = 0;
  std::vector<std::string> run_a = args;
  run_a.push_back(out_a);
  capture_stdout(run_a, &rc);
  REQUIRE(rc == 0);
  std::vector<std::string> run_b = args;
  run_b.push_back(out_b);
  capture_stdout(run_b, &rc);
  REQUIRE(rc == 0);
  std::string text_a = read_file(out_a);
  CHECK(!text_a.empty());
  CHECK(text_a == read_file(out_b));
  // The detail companion keeps real wall times, so strip those before
  // comparing the physics payload.
  nlohmann::json da = nlohmann::json::parse(read_file(out_a + ".detail.json"));
  nlohmann::json db = nlohmann::json::parse(read_file(out_b + ".detail.json"));
  for (auto& rec : da) rec["seconds"] = 0.0;
  for (auto& rec : db) rec["seconds"] = 0.0;
  CHECK(da == db);
  std::remove(out_a.c_str());
  std::remove(out_b.c_str());
  std::remove((out_a + ".detail.json").c_str());
  std::remove((out_b + ".detail.json").c_str());
}
