#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "marscolony/config.h"
#include "marscolony/engine.h"

namespace marscolony {

// A population may sit below `threshold` for at most `window` consecutive
// ticks, and must end at or above it.
bool classify_stability(std::span<const int> population_series, int threshold = 10,
                        int window = 84);

// Strictly more than half.
bool majority(const std::vector<bool>& votes);

// Parses "start:stop:step" (inclusive stop), "a,b,c" or a single integer.
std::vector<int> parse_population_list(const std::string& text);

struct SweepSpec {
  std::vector<int> populations;
  int replicates = 5;
  std::uint64_t base_seed = 1;  // replicate r runs with base_seed + r
  SimConfig base;               // initial_population is overridden per cell
  int jobs = 0;                 // 0: one worker per hardware thread
  std::optional<std::filesystem::path> out_dir;  // per-run CSVs when set
  bool emit_plots = false;                       // SVG per population, needs out_dir
};

struct ReplicateOutcome {
  std::uint64_t seed = 0;
  bool stable = false;
  std::string error;  // non-empty when the run could not be configured
  TickReport final_report;
  std::vector<int> population;
};

struct StabilityVerdict {
  int initial_population = 0;
  std::vector<ReplicateOutcome> replicates;
  bool aggregate = false;
  std::string error;

  std::vector<bool> votes() const;
};

// Runs the population x replicate grid. Each cell owns its state and seed, so
// the verdicts are identical for any worker count. Configuration errors are
// recorded on the affected cell and the sweep carries on.
std::vector<StabilityVerdict> run_sweep(const SweepSpec& spec);

// Smallest population whose aggregate verdict is stable.
std::optional<int> min_stable_population(std::span<const StabilityVerdict> verdicts);

// Summary table: initial_population, run_1..run_k, aggregate.
void write_summary_csv(std::ostream& out, std::span<const StabilityVerdict> verdicts);

// Population-vs-tick lines, one per replicate, with the stability threshold.
void write_population_svg(std::ostream& out, const StabilityVerdict& verdict, int threshold);

// Runs `count` independent jobs on up to `workers` threads. job(i) must only
// touch slot i of any shared output.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& job);

// ---------------------------------------------------------------------------
// Calibration

// Which sweeps a calibration point is judged on.
struct EvidencePlan {
  std::vector<int> small_populations = parse_population_list("10:50:4");
  std::vector<int> large_populations = parse_population_list("50:170:10");
  int replicates = 5;
  int ordering_population = 40;
  int ordering_replicates = 30;
  std::uint64_t base_seed = 1;
  int jobs = 0;
};

struct CalibrationEvidence {
  std::vector<StabilityVerdict> small_sweep;
  std::vector<StabilityVerdict> large_sweep;
  std::optional<int> min_stable;
  double large_stable_fraction = 0.0;       // replicate-level
  double agreeable_outlives_fraction = 0.0;  // final agreeable > final neurotic
};

CalibrationEvidence gather_evidence(const SimConfig& config, const EvidencePlan& plan);

struct CalibrationTarget {
  std::string name;
  std::function<bool(const CalibrationEvidence&)> satisfied;
};

// Large colonies stay stable, agreeable settlers outlive neurotic ones, and
// the minimum stable population lands in [18, 34].
std::vector<CalibrationTarget> default_targets();

// Cartesian grid over named knobs (see set_knob for key syntax).
struct KnobGrid {
  std::vector<std::pair<std::string, std::vector<double>>> axes;

  std::size_t size() const;
  std::vector<std::pair<std::string, double>> point(std::size_t index) const;
};

KnobGrid knob_grid_from_json(const nlohmann::json& doc);

struct ScoredConfig {
  std::size_t grid_index = 0;
  std::vector<std::pair<std::string, double>> knobs;
  SimConfig config;
  std::vector<bool> passed;  // one per target
  int score = 0;
  std::string error;
  double large_stable_fraction = 0.0;
  double agreeable_outlives_fraction = 0.0;
  std::optional<int> min_stable;
};

// Scores every grid point by the number of targets its sweeps satisfy and
// ranks best first (ties keep grid order). Throws std::invalid_argument for
// an empty grid.
std::vector<ScoredConfig> calibrate(const SimConfig& base, const KnobGrid& grid,
                                    std::span<const CalibrationTarget> targets,
                                    const EvidencePlan& plan);

void write_calibration_csv(std::ostream& out, std::span<const ScoredConfig> ranked,
                           std::span<const CalibrationTarget> targets);

}  // namespace marscolony
