#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "marscolony/core.h"
#include "marscolony/events.h"

namespace marscolony {

// End-of-week census and settlement snapshot.
struct TickReport {
  int tick = 0;
  int population = 0;
  std::array<int, 4> by_category{};  // indexed by ResilienceCategory
  double coping_mean = 0.0;
  double coping_min = 0.0;
  double coping_max = 0.0;
  double health_mean = 0.0;
  Stores stores;
  double technology = 0.0;
  int active_stressors = 0;
  Counters counters;

  int count(ResilienceCategory c) const { return by_category[index_of(c)]; }

  friend bool operator==(const TickReport&, const TickReport&) = default;
};

TickReport observe(const SimState& state);

// Advances one week through the fixed phase order:
//   restore patches, move, sleep, pair+produce (food, water, air),
//   waste removal, consume, socialize, shipment+arrivals, habitat accident,
//   stressor pressure and lifecycle, minerals to technology, mortality.
// The returned report is the census after mortality, stamped with the tick
// that was simulated; state.tick advances afterwards.
TickReport step(SimState& state, EventLog& log);

struct RunResult {
  SimConfig config;
  std::uint64_t seed = 0;
  TickReport initial;               // census before the first step
  std::vector<TickReport> reports;  // one per simulated tick
  EventLog events;

  // End-of-tick populations, one per report.
  std::vector<int> population_series() const;
  const TickReport& final_report() const { return reports.empty() ? initial : reports.back(); }

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

// init_state followed by config.ticks steps. Stops early only when
// halt_on_extinction is set and the colony is empty.
RunResult run(const SimConfig& config, std::uint64_t seed);

// One header row, then one row per simulated tick.
void write_reports_csv(std::ostream& out, const RunResult& result);
void write_events_csv(std::ostream& out, const RunResult& result);

std::string run_file_stem(const RunResult& result);  // run_<confighash>_<seed>

struct RunFiles {
  std::filesystem::path reports;
  std::filesystem::path events;
};

// Writes <stem>.csv and <stem>_events.csv under `dir` (created if missing).
RunFiles write_run_files(const RunResult& result, const std::filesystem::path& dir);

}  // namespace marscolony
