#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "marscolony/cli.h"
#include "marscolony/config.h"

using namespace marscolony;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code = 0;
  std::string out, err;
};

Invocation cli(std::vector<std::string> args) {
  args.insert(args.begin(), "marscolony");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Invocation r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path only_file(const fs::path& dir, const std::string& suffix) {
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0 &&
        (suffix != ".csv" || name.find("_events") == std::string::npos))
      return e.path();
  }
  return {};
}

}  // namespace

TEST_CASE("run with defaults") {
  const auto dir = fresh_dir("marscolony_cli_run");
  const auto r = cli({"run", "--ticks", "60", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("final population") != std::string::npos);
  CHECK(fs::exists(dir / ("run_" + config_hash([] {
                      SimConfig c;
                      c.ticks = 60;
                      return c;
                    }()) + "_1.csv")));
  fs::remove_all(dir);
}

TEST_CASE("malformed config exits nonzero and names the field") {
  const auto dir = fresh_dir("marscolony_cli_bad");
  std::ofstream(dir / "c.json") << R"({"p_arrival": "often"})";
  const auto r = cli({"run", "--config", (dir / "c.json").string(), "--out", dir.string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("p_arrival") != std::string::npos);

  std::ofstream(dir / "d.json") << R"({"initial_population": 2})";
  const auto v = cli({"run", "--config", (dir / "d.json").string(), "--out", dir.string()});
  CHECK(v.code != 0);
  CHECK(v.err.find("initial_population") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("same invocation twice gives byte-identical files") {
  const auto a = fresh_dir("marscolony_cli_a"), b = fresh_dir("marscolony_cli_b");
  const std::vector<std::string> common{"run", "--ticks", "200", "--population", "16", "--seed", "77"};
  auto args_a = common, args_b = common;
  args_a.insert(args_a.end(), {"--out", a.string()});
  args_b.insert(args_b.end(), {"--out", b.string()});
  REQUIRE(cli(args_a).code == 0);
  REQUIRE(cli(args_b).code == 0);
  CHECK(slurp(only_file(a, ".csv")) == slurp(only_file(b, ".csv")));
  CHECK(slurp(only_file(a, "_events.csv")) == slurp(only_file(b, "_events.csv")));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("flags beat the config file, which beats defaults") {
  const auto dir = fresh_dir("marscolony_cli_prec");
  std::ofstream(dir / "c.json") << R"({"ticks": 30, "initial_population": 8, "p_arrival": 0.9})";
  REQUIRE(cli({"run", "--config", (dir / "c.json").string(), "--ticks", "12", "--out", dir.string()})
              .code == 0);
  SimConfig expect;
  expect.ticks = 12;              // flag
  expect.initial_population = 8;  // file
  expect.p_arrival = 0.9;         // file
  const auto csv = dir / ("run_" + config_hash(expect) + "_1.csv");
  REQUIRE(fs::exists(csv));
  std::istringstream rows(slurp(csv));
  std::string line;
  int n = -1;
  while (std::getline(rows, line)) ++n;
  CHECK(n == 12);

  REQUIRE(cli({"run", "--config", (dir / "c.json").string(), "--population", "12", "--no-production",
               "--out", dir.string()})
              .code == 0);
  expect.ticks = 30;
  expect.initial_population = 12;
  expect.production_enabled = false;
  CHECK(fs::exists(dir / ("run_" + config_hash(expect) + "_1.csv")));
  fs::remove_all(dir);
}

TEST_CASE("sweep writes a summary with one row per population") {
  const auto dir = fresh_dir("marscolony_cli_sweep");
  auto r = cli({"sweep", "--populations", "10:50:4", "--replicates", "2", "--ticks", "40", "--out",
                dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("min stable population") != std::string::npos);
  const auto first = slurp(dir / "summary.csv");
  CHECK(std::count(first.begin(), first.end(), '\n') == 12);

  r = cli({"sweep", "--populations", "10:50:4", "--replicates", "2", "--ticks", "40", "--jobs", "3",
           "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "summary.csv") == first);

  r = cli({"sweep", "--populations", "20", "--replicates", "1", "--ticks", "40", "--emit-plots",
           "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto single = slurp(dir / "summary.csv");
  CHECK(std::count(single.begin(), single.end(), '\n') == 2);
  CHECK(fs::exists(dir / "population_20.svg"));
  fs::remove_all(dir);
}

TEST_CASE("calibrate writes a ranking") {
  const auto dir = fresh_dir("marscolony_cli_cal");
  std::ofstream(dir / "grid.json") << R"({"p_arrival": [0.1, 0.2]})";
  const auto r = cli({"calibrate", "--grid", (dir / "grid.json").string(), "--populations", "12",
                      "--replicates", "1", "--ordering-replicates", "1", "--ticks", "30", "--out",
                      dir.string()});
  CHECK(r.code == 0);
  const auto csv = slurp(dir / "calibration.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  fs::remove_all(dir);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code != 0);
  CHECK(cli({"run", "--seed", "xyz"}).code != 0);
  CHECK(cli({"launch"}).code != 0);
}
