#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "marscolony/experiments.h"

using namespace marscolony;

namespace {

StabilityVerdict verdict(int n, bool stable) {
  StabilityVerdict v;
  v.initial_population = n;
  v.aggregate = stable;
  return v;
}

// Synthetic population series: holds at n, or collapses below 10 for good.
std::vector<int> series(int n, bool survives) {
  std::vector<int> s(1456, n);
  if (!survives) std::fill(s.begin() + 300, s.end(), 6);
  return s;
}

}  // namespace

TEST_CASE("stability classifier") {
  CHECK(classify_stability(std::vector<int>(500, 20)));

  std::vector<int> long_dip(500, 20);
  std::fill(long_dip.begin() + 100, long_dip.begin() + 200, 8);
  CHECK_FALSE(classify_stability(long_dip));

  std::vector<int> bounce(500, 20);
  std::fill(bounce.begin() + 100, bounce.begin() + 184, 9);
  std::fill(bounce.begin() + 184, bounce.end(), 12);
  CHECK(classify_stability(bounce));

  std::vector<int> ends_low(500, 20);
  std::fill(ends_low.end() - 10, ends_low.end(), 9);
  CHECK_FALSE(classify_stability(ends_low));

  CHECK_FALSE(classify_stability(std::vector<int>{}));
}

TEST_CASE("classifier is monotone in the population") {
  Rng gen(606);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> s(static_cast<std::size_t>(gen.uniform_int(1, 400)));
    int level = gen.uniform_int(0, 30);
    for (int& v : s) {
      level = std::max(0, level + gen.uniform_int(-3, 3));
      v = level;
    }
    std::vector<int> raised = s;
    for (int& v : raised) v += gen.uniform_int(0, 4);
    if (classify_stability(s)) REQUIRE(classify_stability(raised));
  }
}

TEST_CASE("the reference verdict pattern gives 22") {
  const std::set<int> unstable{10, 14, 18, 26, 38};
  std::vector<StabilityVerdict> verdicts;
  for (int n = 10; n <= 50; n += 4) {
    StabilityVerdict v = verdict(n, false);
    for (int r = 0; r < 5; ++r) {
      ReplicateOutcome o;
      o.population = series(n, !unstable.count(n));
      o.stable = classify_stability(o.population);
      v.replicates.push_back(o);
    }
    v.aggregate = majority(v.votes());
    verdicts.push_back(v);
  }
  CHECK(min_stable_population(verdicts) == 22);
}

TEST_CASE("minimum stable population edge cases") {
  std::vector<StabilityVerdict> all{verdict(10, true), verdict(14, true)};
  CHECK(min_stable_population(all) == 10);
  std::vector<StabilityVerdict> none{verdict(10, false), verdict(14, false)};
  CHECK_FALSE(min_stable_population(none).has_value());
}

TEST_CASE("majority is strict and order-free") {
  CHECK(majority({true, true, true, false, false}));
  CHECK_FALSE(majority({true, true, false, false}));
  CHECK_FALSE(majority({}));
  std::vector<bool> v{true, false, true, false, true};
  std::sort(v.begin(), v.end());
  do {
    CHECK(majority(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

TEST_CASE("population lists") {
  CHECK(parse_population_list("10:50:4").size() == 11u);
  CHECK(parse_population_list("10:170:10").back() == 170);
  CHECK(parse_population_list("20") == std::vector<int>{20});
  CHECK(parse_population_list("8,12, 16") == std::vector<int>{8, 12, 16});
  CHECK_THROWS(parse_population_list("10:50"));
  CHECK_THROWS(parse_population_list("10:50:0"));
  CHECK_THROWS(parse_population_list("ten"));
}

TEST_CASE("sweep: one cell equals one classified run") {
  SweepSpec spec;
  spec.populations = {16};
  spec.replicates = 1;
  spec.base_seed = 9;
  spec.base.ticks = 500;
  const auto v = run_sweep(spec);
  REQUIRE(v.size() == 1u);
  SimConfig c = spec.base;
  c.initial_population = 16;
  CHECK(v[0].aggregate == classify_stability(run(c, 9).population_series()));
}

TEST_CASE("sweep results do not depend on the worker count") {
  SweepSpec spec;
  spec.populations = {8, 20, 32};
  spec.replicates = 3;
  spec.base.ticks = 300;
  spec.jobs = 1;
  const auto serial = run_sweep(spec);
  spec.jobs = 4;
  const auto parallel = run_sweep(spec);
  REQUIRE(serial.size() == parallel.size());
  std::ostringstream a, b;
  write_summary_csv(a, serial);
  write_summary_csv(b, parallel);
  CHECK(a.str() == b.str());
  for (std::size_t i = 0; i < serial.size(); ++i)
    for (std::size_t r = 0; r < 3; ++r)
      CHECK(serial[i].replicates[r].population == parallel[i].replicates[r].population);
}

TEST_CASE("a bad cell is reported without stopping the sweep") {
  SweepSpec spec;
  spec.populations = {2, 12};
  spec.replicates = 2;
  spec.base.ticks = 50;
  const auto v = run_sweep(spec);
  REQUIRE(v.size() == 2u);
  CHECK_FALSE(v[0].error.empty());
  CHECK_FALSE(v[0].aggregate);
  CHECK(v[1].error.empty());
  std::ostringstream out;
  write_summary_csv(out, v);
  CHECK(out.str().find("error") != std::string::npos);
}

TEST_CASE("summary table shape") {
  SweepSpec spec;
  spec.populations = parse_population_list("10:50:4");
  spec.replicates = 5;
  spec.base.ticks = 20;
  const auto v = run_sweep(spec);
  CHECK(v.size() == 11u);
  std::ostringstream out;
  write_summary_csv(out, v);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "initial_population,run_1,run_2,run_3,run_4,run_5,aggregate");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.find("Bounce Back") != std::string::npos);
  }
  CHECK(rows == 11);
}

TEST_CASE("plots and per-run files") {
  const auto dir = std::filesystem::temp_directory_path() / "marscolony_sweep_test";
  std::filesystem::remove_all(dir);
  SweepSpec spec;
  spec.populations = {12};
  spec.replicates = 2;
  spec.base.ticks = 30;
  spec.out_dir = dir;
  spec.emit_plots = true;
  run_sweep(spec);
  CHECK(std::filesystem::exists(dir / "population_12.svg"));
  int csvs = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) csvs += e.path().extension() == ".csv";
  CHECK(csvs == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("knob grids") {
  const auto grid = knob_grid_from_json(nlohmann::json::parse(R"({"p_arrival":[0.1,0.2],"sleep_regen":[1,2,3]})"));
  CHECK(grid.size() == 6u);
  std::set<std::pair<double, double>> seen;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto p = grid.point(i);
    REQUIRE(p.size() == 2u);
    seen.insert({p[0].second, p[1].second});
  }
  CHECK(seen.size() == 6u);
  CHECK(knob_grid_from_json(nlohmann::json::parse(R"({"p_arrival":[]})")).size() == 0u);
  CHECK_THROWS_AS(knob_grid_from_json(nlohmann::json::parse(R"({"p_arrival":"x"})")), ConfigError);
}

TEST_CASE("calibration ranking") {
  EvidencePlan plan;
  plan.small_populations = {12};
  plan.large_populations = {20};
  plan.replicates = 1;
  plan.ordering_replicates = 2;
  SimConfig base;
  base.ticks = 60;

  SUBCASE("empty grid is rejected") {
    CHECK_THROWS_AS(calibrate(base, KnobGrid{}, default_targets(), plan), std::invalid_argument);
  }
  SUBCASE("single point") {
    KnobGrid grid;
    grid.axes.push_back({"p_arrival", {0.2}});
    const auto ranked = calibrate(base, grid, default_targets(), plan);
    REQUIRE(ranked.size() == 1u);
    CHECK(ranked[0].config.p_arrival == 0.2);
    CHECK(ranked[0].passed.size() == default_targets().size());
  }
  SUBCASE("a dominating point ranks first") {
    // Certain random death wipes the colony out; none keeps everyone alive.
    KnobGrid grid;
    grid.axes.push_back({"p_random_death", {1.0, 0.0}});
    const std::vector<CalibrationTarget> targets{
        {"large_stable", [](const CalibrationEvidence& e) { return e.large_stable_fraction >= 0.9; }},
        {"has_min", [](const CalibrationEvidence& e) { return e.min_stable.has_value(); }},
    };
    const auto ranked = calibrate(base, grid, targets, plan);
    REQUIRE(ranked.size() == 2u);
    CHECK(ranked[0].config.p_random_death == 0.0);
    CHECK(ranked[0].score == 2);
    CHECK(ranked[1].score == 0);
    std::ostringstream out;
    write_calibration_csv(out, ranked, targets);
    CHECK(out.str().find("large_stable") != std::string::npos);
  }
}

TEST_CASE("shipped defaults satisfy every calibration target") {
  KnobGrid grid;
  grid.axes.push_back({"p_arrival", {SimConfig{}.p_arrival}});
  const auto targets = default_targets();
  const auto ranked = calibrate(SimConfig{}, grid, targets, EvidencePlan{});
  REQUIRE(ranked.size() == 1u);
  CHECK(ranked[0].config == SimConfig{});
  for (std::size_t i = 0; i < targets.size(); ++i) {
    INFO(targets[i].name);
    CHECK(ranked[0].passed[i]);
  }
}
