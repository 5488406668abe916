#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "marscolony/core.h"

namespace marscolony {

enum class EventType : std::uint8_t {
  ShipmentReceived,
  ShippingDisaster,
  Arrival,
  HabitatAccident,
  StressorDrain,
  StressorRecovered,
  StressorDissipated,
  TechnologyImproved,
};
std::string_view to_string(EventType t);

// One line of the run's event log. `magnitude` is the amount moved (kg, L,
// minerals, settlers, technology) and `target` the store or stressor kind it
// applies to, empty when there is none.
struct Event {
  int tick = 0;
  EventType type = EventType::ShipmentReceived;
  std::string target;
  double magnitude = 0.0;
  friend bool operator==(const Event&, const Event&) = default;
};

using EventLog = std::vector<Event>;

bool is_shipment_tick(const SimState& state);

struct ShipmentOutcome {
  bool on_cycle = false;
  bool received = false;
  bool disaster = false;
};

// Earth resupply on shipment ticks: either food and minerals arrive or the
// shipment is lost and a shipping stressor spawns. No-op off-cycle.
ShipmentOutcome shipment_event(SimState& state, EventLog& log);

// Settlers riding a received shipment. Draws once per shipment tick whether
// or not the shipment arrived. Returns the number added.
int maybe_arrivals(SimState& state, const ShipmentOutcome& shipment, EventLog& log);

// Rolls for an accident that halves a random store and spawns a habitat
// stressor. Returns whether one happened.
bool maybe_habitat_accident(SimState& state, EventLog& log);

// Drain, age, repair and dissipate. Active habitat stressors drain a fraction
// of their target store, then every active stressor ages one tick; habitat
// stressors are repaired by one accident-threshold pair each while pairs last;
// anything that reached the dissipation horizon goes inactive. Inactive
// stressors are dropped from the state.
void update_stressors(SimState& state, EventLog& log);

// One batch of minerals buys one technology increment, up to the cap. Nothing
// is spent once technology is capped. Returns whether a batch was consumed.
bool consume_minerals_for_tech(SimState& state, EventLog& log);

}  // namespace marscolony
