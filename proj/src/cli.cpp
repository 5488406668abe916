#include "marscolony/cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "marscolony/config.h"
#include "marscolony/engine.h"
#include "marscolony/experiments.h"

namespace marscolony {
namespace {

struct CommonOptions {
  std::string config_path;
  std::string seed = "1";
  std::optional<int> ticks;
  std::string out_dir = "out";
  int jobs = 0;
  bool no_production = false;
  bool emit_plots = false;
};

void add_common(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--config", o.config_path, "JSON config file (missing keys use defaults)");
  cmd.add_option("--seed", o.seed, "Seed (or base seed for sweeps); 'auto' draws one");
  cmd.add_option("--ticks", o.ticks, "Weeks to simulate");
  cmd.add_option("--out", o.out_dir, "Output directory");
  cmd.add_option("--jobs", o.jobs, "Concurrent runs (0 = all cores)");
  cmd.add_flag("--no-production", o.no_production, "Disable local production of food, water and air");
  cmd.add_flag("--emit-plots", o.emit_plots, "Write population SVG plots");
}

std::uint64_t resolve_seed(const std::string& text) {
  if (text == "auto") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) | rd();
  }
  std::size_t used = 0;
  const auto value = std::stoull(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad --seed '" + text + "'");
  return value;
}

// defaults < config file < flags
SimConfig resolve_config(const CommonOptions& o) {
  SimConfig config = o.config_path.empty() ? SimConfig{} : load_config(o.config_path);
  if (o.ticks) config.ticks = *o.ticks;
  if (o.no_production) config.production_enabled = false;
  return config;
}

void print_summary(std::ostream& out, const TickReport& f) {
  out << "final population " << f.population << " (neurotic " << f.count(ResilienceCategory::Neurotic)
      << ", reactive " << f.count(ResilienceCategory::Reactive) << ", social "
      << f.count(ResilienceCategory::Social) << ", agreeable "
      << f.count(ResilienceCategory::Agreeable) << "); shipments " << f.counters.shipments_received
      << ", disasters " << f.counters.shipping_disasters << ", accidents "
      << f.counters.habitat_accidents << ", births " << f.counters.births << ", deaths "
      << f.counters.deaths << '\n';
}

int cmd_run(const CommonOptions& o, std::optional<int> population, std::ostream& out) {
  SimConfig config = resolve_config(o);
  if (population) config.initial_population = *population;
  validate(config);
  const RunResult result = run(config, resolve_seed(o.seed));
  const RunFiles files = write_run_files(result, o.out_dir);
  print_summary(out, result.final_report());
  out << "wrote " << files.reports.string() << " and " << files.events.string() << '\n';
  return 0;
}

int cmd_sweep(const CommonOptions& o, const std::string& populations, int replicates,
              std::ostream& out) {
  SweepSpec spec;
  spec.base = resolve_config(o);
  spec.populations = parse_population_list(populations);
  spec.replicates = replicates;
  spec.base_seed = resolve_seed(o.seed);
  spec.jobs = o.jobs;
  spec.out_dir = std::filesystem::path(o.out_dir);
  spec.emit_plots = o.emit_plots;

  const auto verdicts = run_sweep(spec);
  const auto summary_path = std::filesystem::path(o.out_dir) / "summary.csv";
  std::ofstream summary(summary_path, std::ios::binary);
  if (!summary) throw std::runtime_error("cannot write " + summary_path.string());
  write_summary_csv(summary, verdicts);

  for (const auto& v : verdicts) {
    out << v.initial_population << ": "
        << (!v.error.empty() ? "error (" + v.error + ")"
                             : v.aggregate ? "Successful Bounce Back" : "No Bounce Back")
        << '\n';
  }
  const auto min_stable = min_stable_population(verdicts);
  out << "min stable population: " << (min_stable ? std::to_string(*min_stable) : "none") << '\n';
  out << "wrote " << summary_path.string() << '\n';
  return 0;
}

// Neighbourhood of the shipped defaults over the main calibration knobs.
KnobGrid default_grid(const SimConfig& base) {
  auto around = [&](const char* key, double lo_factor, double hi_factor) {
    const double v = get_knob(base, key);
    return std::pair<std::string, std::vector<double>>{key, {v * lo_factor, v, v * hi_factor}};
  };
  KnobGrid grid;
  grid.axes.push_back(around("sleep_regen", 0.5, 1.5));
  grid.axes.push_back(around("p_arrival", 0.5, 1.5));
  grid.axes.push_back(around("p_random_death", 0.5, 1.5));
  return grid;
}

int cmd_calibrate(const CommonOptions& o, const std::string& grid_path, const std::string& populations,
                  int replicates, int ordering_replicates, std::ostream& out) {
  const SimConfig base = resolve_config(o);
  validate(base);
  KnobGrid grid;
  if (grid_path.empty()) {
    grid = default_grid(base);
  } else {
    std::ifstream in(grid_path);
    if (!in) throw ConfigError("", "cannot open grid file '" + grid_path + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("", std::string("malformed grid JSON: ") + e.what());
    }
    grid = knob_grid_from_json(doc);
  }

  EvidencePlan plan;
  plan.small_populations = parse_population_list(populations);
  plan.replicates = replicates;
  plan.ordering_replicates = ordering_replicates;
  plan.base_seed = resolve_seed(o.seed);
  plan.jobs = o.jobs;

  const auto targets = default_targets();
  const auto ranked = calibrate(base, grid, targets, plan);
  std::filesystem::create_directories(o.out_dir);
  const auto path = std::filesystem::path(o.out_dir) / "calibration.csv";
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + path.string());
  write_calibration_csv(csv, ranked, targets);

  const auto& best = ranked.front();
  out << "best grid point " << best.grid_index << " satisfies " << best.score << "/" << targets.size()
      << " targets:";
  for (const auto& [key, value] : best.knobs) out << ' ' << key << '=' << value;
  out << "\nwrote " << path.string() << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mars colony agent-based model"};
  app.require_subcommand(1);

  CommonOptions run_opts, sweep_opts, cal_opts;
  std::optional<int> run_population;
  std::string sweep_populations = "10:50:4";
  int sweep_replicates = 5;
  std::string grid_path;
  std::string cal_populations = "10:50:4";
  int cal_replicates = 5;
  int cal_ordering_replicates = 30;

  auto* run_cmd = app.add_subcommand("run", "Simulate one colony");
  add_common(*run_cmd, run_opts);
  run_cmd->add_option("--population", run_population, "Initial number of settlers");

  auto* sweep_cmd = app.add_subcommand("sweep", "Replicated runs over initial populations");
  add_common(*sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--population,--populations", sweep_populations,
                        "N, a,b,c or start:stop:step");
  sweep_cmd->add_option("--replicates", sweep_replicates, "Runs per population")
      ->check(CLI::PositiveNumber);

  auto* cal_cmd = app.add_subcommand("calibrate", "Grid search over calibration knobs");
  add_common(*cal_cmd, cal_opts);
  cal_cmd->add_option("--grid", grid_path, "JSON object mapping knob names to value lists");
  cal_cmd->add_option("--population,--populations", cal_populations, "Small-colony sweep range");
  cal_cmd->add_option("--replicates", cal_replicates, "Runs per population")
      ->check(CLI::PositiveNumber);
  cal_cmd->add_option("--ordering-replicates", cal_ordering_replicates,
                      "Runs for the survival-ordering target")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out, cli_err;
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_opts, run_population, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, sweep_populations, sweep_replicates, out);
    if (cal_cmd->parsed()) {
      return cmd_calibrate(cal_opts, grid_path, cal_populations, cal_replicates,
                           cal_ordering_replicates, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace marscolony
