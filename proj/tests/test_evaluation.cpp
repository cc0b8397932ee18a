#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include "aircomp/error.hpp"
#include "aircomp/evaluation.hpp"

using namespace aircomp;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.trials = 6000;
  c.noise_var = 1e-14;
  c.pilot_noise_var = 1e-14;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  c.zeta = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.policies = {Policy::kBenchmark, Policy::kBenchmark};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.targets = {TargetSelector::custom({1.0}, {})};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.beta_budget = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("dBm and dB helpers") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(-70.0) == doctest::Approx(1e-10));
  CHECK(to_db(10.0, 1.0) == doctest::Approx(10.0));
  CHECK_THROWS(to_db(0.0, 1.0));
}

TEST_CASE("custom target resolution") {
  CHECK(TargetSelector::from_preset(2).name() == "config-2");
  CHECK(TargetSelector::custom({1, 2}, {1, 3}).name() == "custom");
  CHECK(TargetSelector::custom({1, 2}, {1, 3}).resolve(2).exponents == std::vector<int>{1, 3});
  CHECK_THROWS_AS(TargetSelector::custom({1, 2}, {1, 3}).resolve(3), ConfigError);
}

TEST_CASE("trial seeds are deterministic and distinct") {
  CHECK(trial_seed(1, 0) == trial_seed(1, 0));
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
  const ExperimentConfig c = small_config();
  CHECK(run_trial(c, Policy::kBenchmark, 99) == run_trial(c, Policy::kBenchmark, 99));
}

TEST_CASE("cell results do not depend on the thread count") {
  const ExperimentConfig c = small_config();
  const CellResult a = estimate_cell(c, c.targets[0], {1});
  const CellResult b = estimate_cell(c, c.targets[0], {3});
  CHECK(a.mean == b.mean);
  CHECK(a.std_err == b.std_err);
  CHECK(a.trials_used == b.trials_used);
  CHECK(a.trials_used + a.rejected == c.trials);
}

TEST_CASE("common random numbers shrink the gap standard error") {
  const ExperimentConfig c = small_config();
  const CellResult cell = estimate_cell(c, c.targets[0]);
  const std::size_t h = cell.index_of(Policy::kHeuristic);
  const std::size_t e = cell.index_of(Policy::kHeuristicEqual);
  const std::size_t p = cell.policies.size();
  CHECK(cell.covariance[h * p + e] > 0.0);
  const double paired = cell.covariance[h * p + h] + cell.covariance[e * p + e] -
                        2.0 * cell.covariance[h * p + e];
  const double independent = cell.covariance[h * p + h] + cell.covariance[e * p + e];
  CHECK(paired < 0.5 * independent);
}

TEST_CASE("standard error scales as one over root trials") {
  ExperimentConfig c = small_config();
  c.policies = {Policy::kBenchmark};
  c.trials = 4000;
  const MseEstimate a = estimate_mse(c, Policy::kBenchmark);
  c.trials = 16000;
  const MseEstimate b = estimate_mse(c, Policy::kBenchmark);
  CHECK(b.std_err / a.std_err == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("vanishing coefficients give the target second moment") {
  ExperimentConfig c = small_config();
  c.policies = {Policy::kBenchmark};
  c.beta_budget = 1e-300;
  c.trials = 20000;
  const MseEstimate m = estimate_mse(c, Policy::kBenchmark);
  // E[(sum of 20 N(1, 1))^2] = 20 + 400
  CHECK(std::abs(m.mean - 420.0) < 3.0 * m.std_err);
}

TEST_CASE("benchmark recovers a single sensor below a single stop") {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "aircomp_eval_test";
  std::filesystem::create_directories(dir);
  Layout layout;
  layout.field.coverage_radius = 10.0;
  layout.field.positions = {{0.0, 0.0}};
  layout.field.reflection = {0.99};
  layout.field.data_mean = {2.0};
  layout.field.data_var = {0.0};
  layout.trajectory = {50.0, {{0.0, 0.0}}};
  save_layout((dir / "one.txt").string(), layout);
  ExperimentConfig c;
  c.layout = (dir / "one.txt").string();
  c.noise_var = 0.0;
  c.pilot_noise_var = 0.0;
  c.policies = {Policy::kBenchmark};
  c.trials = 50;
  const MseEstimate m = estimate_mse(c, Policy::kBenchmark);
  CHECK(m.mean < 1e-20);
}

TEST_CASE("every trial rejected is an error") {
  ExperimentConfig c = small_config();
  c.pilot_noise_var = 1.0;
  c.policies = {Policy::kHeuristic};
  c.k = 30;
  c.trials = 3;
  CHECK_THROWS_AS(estimate_mse(c, Policy::kHeuristic), NumericError);
}

TEST_CASE("gap estimate is consistent with the means") {
  const ExperimentConfig c = small_config();
  const CellResult cell = estimate_cell(c, c.targets[0]);
  const GapEstimate g = cell.db_gap(Policy::kHeuristic, Policy::kBenchmark);
  CHECK(g.db == doctest::Approx(cell.mse_db(Policy::kHeuristic) - cell.mse_db(Policy::kBenchmark)));
  CHECK(g.std_err > 0.0);
  CHECK_THROWS(cell.index_of(Policy::kGridOracle));
}

TEST_CASE("sweep and csv") {
  ExperimentConfig c = small_config();
  c.trials = 500;
  c.targets = {TargetSelector::from_preset(1), TargetSelector::from_preset(2)};
  const std::vector<std::size_t> ks{1, 3};
  const ExperimentResult r = sweep(c, SweepAxis::kK, ks);
  REQUIRE(r.cells.size() == 4);
  CHECK(r.cells[0].axis_value == 1.0);
  CHECK(r.cells[1].target == "config-2");
  CHECK(r.cells[3].axis_value == 3.0);
  std::ostringstream csv;
  write_results_csv(csv, r);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "k,target,policy,mse,std_err,mse_db,trials_used");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 12);
  const std::vector<std::size_t> bad{3, 2};
  CHECK_THROWS_AS(sweep(c, SweepAxis::kK, bad), ConfigError);
  const std::vector<std::size_t> zero{0};
  CHECK_THROWS_AS(sweep(c, SweepAxis::kN, zero), ConfigError);
  CHECK(parse_axis("n") == SweepAxis::kN);
  CHECK_THROWS_AS(parse_axis("x"), ConfigError);
}

TEST_CASE("closed-form and grid-oracle policies run") {
  ExperimentConfig c = small_config();
  c.trials = 300;
  c.oracle_trials = 500;
  c.policies = {Policy::kClosedFormEqual, Policy::kGridOracle, Policy::kBenchmark};
  const CellResult cell = estimate_cell(c, c.targets[0]);
  CHECK(cell.trials_used == 300);
  for (double m : cell.mean) CHECK(std::isfinite(m));
}
