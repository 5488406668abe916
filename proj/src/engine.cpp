#include "marscolony/engine.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "marscolony/agent.h"
#include "marscolony/psychosocial.h"
#include "marscolony/tasking.h"

namespace marscolony {
namespace {

// Shortest round-trip representation, independent of stream locale.
std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void restore_patches(SettlementState& settlement, const SimConfig& cfg) {
  std::fill(settlement.patches.begin(), settlement.patches.end(),
            Patch{cfg.p_food, cfg.p_air, cfg.p_water});
}

}  // namespace

TickReport observe(const SimState& state) {
  TickReport r;
  r.tick = state.tick;
  r.population = static_cast<int>(state.martians.size());
  if (!state.martians.empty()) {
    double coping_sum = 0.0;
    double health_sum = 0.0;
    r.coping_min = std::numeric_limits<double>::infinity();
    r.coping_max = -std::numeric_limits<double>::infinity();
    for (const Martian& m : state.martians) {
      ++r.by_category[index_of(m.category)];
      coping_sum += m.coping;
      health_sum += m.health;
      r.coping_min = std::min(r.coping_min, m.coping);
      r.coping_max = std::max(r.coping_max, m.coping);
    }
    r.coping_mean = coping_sum / r.population;
    r.health_mean = health_sum / r.population;
  }
  r.stores = state.settlement.stores;
  r.technology = state.settlement.technology;
  r.active_stressors = state.active_stressor_count();
  r.counters = state.counters;
  return r;
}

TickReport step(SimState& s, EventLog& log) {
  const SimConfig& cfg = s.config;
  auto& settlement = s.settlement;

  restore_patches(settlement, cfg);
  for (Martian& m : s.martians) {
    m.partner.reset();
    m.taskmates = {};
    m.produced_this_tick = {};
  }

  for (Martian& m : s.martians) move_agent(m, settlement.grid_size, s.rng.movement);
  for (Martian& m : s.martians) sleep(m, cfg.sleep_regen);

  for (Task task : {Task::Food, Task::Water, Task::Air}) {
    const auto pairing = form_pairs(s.martians, task, s.thresholds[task], s.rng.pairing);
    assign_taskmates(s, pairing.pairs);
    produce(s, pairing.pairs, task);
  }

  const auto waste_pairs = form_pairs(s.martians, Task::Waste, s.thresholds[Task::Waste], s.rng.pairing);
  assign_taskmates(s, waste_pairs.pairs);
  remove_waste(waste_pairs.pairs.size(), settlement.stores, cfg.waste_removal_rate);

  for (Martian& m : s.martians) consume(m, settlement.stores, cfg);

  run_social_phase(s);

  const ShipmentOutcome shipment = shipment_event(s, log);
  maybe_arrivals(s, shipment, log);

  maybe_habitat_accident(s, log);

  apply_stressor_pressure(s);
  update_stressors(s, log);

  if (shipment.on_cycle) consume_minerals_for_tech(s, log);

  apply_mortality(s);

  TickReport report = observe(s);
  ++s.tick;
  return report;
}

std::vector<int> RunResult::population_series() const {
  std::vector<int> out;
  out.reserve(reports.size());
  for (const TickReport& r : reports) out.push_back(r.population);
  return out;
}

RunResult run(const SimConfig& config, std::uint64_t seed) {
  SimState state = init_state(config, seed);
  RunResult result;
  result.config = config;
  result.seed = seed;
  result.initial = observe(state);
  result.reports.reserve(static_cast<std::size_t>(config.ticks));
  for (int t = 0; t < config.ticks; ++t) {
    result.reports.push_back(step(state, result.events));
    if (config.halt_on_extinction && state.martians.empty()) break;
  }
  return result;
}

void write_reports_csv(std::ostream& out, const RunResult& result) {
  out << "tick,population,neurotic,reactive,social,agreeable,coping_mean,coping_min,coping_max,"
         "health_mean,food,water,air,waste,minerals,technology,active_stressors,shipments,"
         "disasters,accidents,births,deaths\n";
  auto row = [&out](const TickReport& r) {
    out << r.tick << ',' << r.population;
    for (int n : r.by_category) out << ',' << n;
    for (double v : {r.coping_mean, r.coping_min, r.coping_max, r.health_mean, r.stores.food,
                     r.stores.water, r.stores.air, r.stores.waste, r.stores.minerals, r.technology}) {
      out << ',' << fmt_double(v);
    }
    const Counters& c = r.counters;
    out << ',' << r.active_stressors << ',' << c.shipments_received << ',' << c.shipping_disasters
        << ',' << c.habitat_accidents << ',' << c.births << ',' << c.deaths << '\n';
  };
  for (const TickReport& r : result.reports) row(r);
}

void write_events_csv(std::ostream& out, const RunResult& result) {
  out << "tick,type,target,magnitude\n";
  for (const Event& e : result.events) {
    out << e.tick << ',' << to_string(e.type) << ',' << e.target << ',' << fmt_double(e.magnitude)
        << '\n';
  }
}

std::string run_file_stem(const RunResult& result) {
  return "run_" + config_hash(result.config) + "_" + std::to_string(result.seed);
}

RunFiles write_run_files(const RunResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string stem = run_file_stem(result);
  RunFiles files{dir / (stem + ".csv"), dir / (stem + "_events.csv")};

  std::ofstream reports(files.reports, std::ios::binary);
  if (!reports) throw std::runtime_error("cannot write " + files.reports.string());
  write_reports_csv(reports, result);

  std::ofstream events(files.events, std::ios::binary);
  if (!events) throw std::runtime_error("cannot write " + files.events.string());
  write_events_csv(events, result);
  return files;
}

}  // namespace marscolony
