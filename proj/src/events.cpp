#include "marscolony/events.h"

#include <algorithm>
#include <cassert>

#include "marscolony/tasking.h"

namespace marscolony {

std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::ShipmentReceived: return "shipment_received";
    case EventType::ShippingDisaster: return "shipping_disaster";
    case EventType::Arrival: return "arrival";
    case EventType::HabitatAccident: return "habitat_accident";
    case EventType::StressorDrain: return "stressor_drain";
    case EventType::StressorRecovered: return "stressor_recovered";
    case EventType::StressorDissipated: return "stressor_dissipated";
    case EventType::TechnologyImproved: return "technology_improved";
  }
  return "?";
}

bool is_shipment_tick(const SimState& state) {
  return state.tick > 0 && state.tick % state.config.shipment_frequency == 0;
}

ShipmentOutcome shipment_event(SimState& state, EventLog& log) {
  ShipmentOutcome out;
  if (!is_shipment_tick(state)) return out;
  out.on_cycle = true;

  const SimConfig& cfg = state.config;
  if (state.rng.events.bernoulli(cfg.p_shipping_disaster)) {
    out.disaster = true;
    state.stressors.push_back(Stressor{StressorKind::Shipping, 0, std::nullopt, true});
    ++state.counters.shipping_disasters;
    log.push_back(Event{state.tick, EventType::ShippingDisaster, "shipping", 0.0});
    return out;
  }

  out.received = true;
  const double food = cfg.weekly_need_food * static_cast<double>(state.martians.size()) *
                      cfg.food_shipment_weeks;
  state.settlement.stores.food += food;
  state.settlement.stores.minerals += cfg.minerals_per_shipment;
  ++state.counters.shipments_received;
  log.push_back(Event{state.tick, EventType::ShipmentReceived, "food", food});
  log.push_back(Event{state.tick, EventType::ShipmentReceived, "minerals", cfg.minerals_per_shipment});
  return out;
}

int maybe_arrivals(SimState& state, const ShipmentOutcome& shipment, EventLog& log) {
  if (!shipment.on_cycle) return 0;
  const SimConfig& cfg = state.config;
  Rng& rng = state.rng.arrivals;
  const bool roll = rng.uniform() < cfg.p_arrival;
  if (!roll || !shipment.received || cfg.arrivals_per_event <= 0) return 0;

  for (int i = 0; i < cfg.arrivals_per_event; ++i) {
    const auto category = kAllCategories[rng.below(kAllCategories.size())];
    state.martians.push_back(make_martian(MartianId{state.next_id++}, category,
                                          state.settlement.grid_size, rng));
  }
  state.counters.births += cfg.arrivals_per_event;
  log.push_back(Event{state.tick, EventType::Arrival, "settlers",
                      static_cast<double>(cfg.arrivals_per_event)});
  return cfg.arrivals_per_event;
}

bool maybe_habitat_accident(SimState& state, EventLog& log) {
  Rng& rng = state.rng.events;
  if (!rng.bernoulli(state.config.p_habitat_accident)) return false;

  static constexpr std::array<Resource, 4> kTargets{Resource::Food, Resource::Water, Resource::Air,
                                                    Resource::Minerals};
  const Resource target = kTargets[rng.below(kTargets.size())];
  double& store = state.settlement.stores[target];
  const double lost = store * 0.5;
  store -= lost;
  state.stressors.push_back(Stressor{StressorKind::Habitat, 0, target, true});
  ++state.counters.habitat_accidents;
  log.push_back(Event{state.tick, EventType::HabitatAccident, std::string(to_string(target)), lost});
  return true;
}

void update_stressors(SimState& state, EventLog& log) {
  const SimConfig& cfg = state.config;
  bool any_habitat = false;
  for (Stressor& s : state.stressors) {
    if (!s.active) continue;
    if (s.kind == StressorKind::Habitat && s.target) {
      any_habitat = true;
      double& store = state.settlement.stores[*s.target];
      const double drained = store * cfg.stressor_drain_fraction;
      store = std::max(0.0, store - drained);
      log.push_back(Event{state.tick, EventType::StressorDrain, std::string(to_string(*s.target)),
                          drained});
    }
    ++s.age_ticks;
  }

  if (any_habitat) {
    const auto pairs = form_pairs(state.martians, Task::Accident,
                                  state.thresholds[Task::Accident], state.rng.pairing);
    assign_taskmates(state, pairs.pairs);
    std::size_t available = pairs.pairs.size();
    for (Stressor& s : state.stressors) {
      if (available == 0) break;
      if (!s.active || s.kind != StressorKind::Habitat) continue;
      s.active = false;
      --available;
      log.push_back(Event{state.tick, EventType::StressorRecovered, "habitat",
                          static_cast<double>(s.age_ticks)});
    }
  }

  for (Stressor& s : state.stressors) {
    if (s.active && s.age_ticks >= cfg.stressor_dissipation_ticks) {
      s.active = false;
      log.push_back(Event{state.tick, EventType::StressorDissipated,
                          std::string(to_string(s.kind)), static_cast<double>(s.age_ticks)});
    }
  }
  std::erase_if(state.stressors, [](const Stressor& s) { return !s.active; });
}

bool consume_minerals_for_tech(SimState& state, EventLog& log) {
  const SimConfig& cfg = state.config;
  auto& settlement = state.settlement;
  if (settlement.technology >= cfg.tech_cap) return false;
  if (settlement.stores.minerals < cfg.minerals_per_tech_step) return false;
  settlement.stores.minerals -= cfg.minerals_per_tech_step;
  const double before = settlement.technology;
  settlement.technology = std::min(cfg.tech_cap, before + cfg.tech_increment);
  log.push_back(Event{state.tick, EventType::TechnologyImproved, "technology",
                      settlement.technology - before});
  return true;
}

}  // namespace marscolony
