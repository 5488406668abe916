#include "marscolony/tasking.h"

#include <algorithm>
#include <stdexcept>

namespace marscolony {

PairingResult form_pairs(std::span<const Martian> agents, Task task, SkillThreshold threshold,
                         Rng& rng) {
  std::vector<const Martian*> order;
  order.reserve(agents.size());
  for (const Martian& m : agents) order.push_back(&m);
  std::sort(order.begin(), order.end(),
            [](const Martian* a, const Martian* b) { return a->id < b->id; });
  rng.shuffle(order);

  PairingResult result;
  std::vector<bool> taken(order.size(), false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (taken[i]) continue;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (taken[j] || !is_valid_pair(*order[i], *order[j], threshold)) continue;
      taken[i] = taken[j] = true;
      result.pairs.push_back(Pairing{task, order[i]->id, order[j]->id});
      break;
    }
    if (!taken[i]) result.unpaired.push_back(order[i]->id);
  }
  std::sort(result.unpaired.begin(), result.unpaired.end());
  return result;
}

ProductionResult produce(SimState& state, std::span<const Pairing> pairs, Task task) {
  ProductionResult result;
  if (task != Task::Food && task != Task::Water && task != Task::Air) return result;

  const SimConfig& cfg = state.config;
  auto& settlement = state.settlement;
  const double rate = task == Task::Food ? cfg.p_food : task == Task::Water ? cfg.p_water : cfg.p_air;

  auto harvest = [&](MartianId id) {
    Martian* m = state.find(id);
    if (m == nullptr) return;
    double amount = 0.0;
    if (cfg.production_enabled) {
      Patch& patch = settlement.patch_at(m->position);
      double& remaining = task == Task::Food ? patch.food : task == Task::Water ? patch.water : patch.air;
      amount = std::min(rate * settlement.technology, remaining);
      remaining -= amount;
      double& credit = task == Task::Food    ? m->produced_this_tick.food
                       : task == Task::Water ? m->produced_this_tick.water
                                             : m->produced_this_tick.air;
      credit += amount;
      if (amount > 0.0) {
        m->produced_this_tick.waste += cfg.waste_byproduct;
        result.waste_byproduct += cfg.waste_byproduct;
      }
    }
    result.harvests.push_back(Harvest{id, amount});
  };

  for (const Pairing& p : pairs) {
    harvest(p.member_a);
    harvest(p.member_b);
  }
  settlement.stores.waste += result.waste_byproduct;
  return result;
}

void remove_waste(std::size_t pair_count, Stores& stores, double rate) {
  stores.waste = std::max(0.0, stores.waste - static_cast<double>(pair_count) * rate);
}

bool attempt_accident_recovery(std::span<const Martian> agents, Stressor& stressor,
                               const TaskThresholds& thresholds, Rng& rng) {
  if (stressor.kind != StressorKind::Habitat) {
    throw std::invalid_argument("shipping stressors cannot be recovered by a skill check");
  }
  if (!stressor.active) return false;
  const auto pairs = form_pairs(agents, Task::Accident, thresholds[Task::Accident], rng);
  if (pairs.pairs.empty()) return false;
  stressor.active = false;
  return true;
}

void assign_taskmates(SimState& state, std::span<const Pairing> pairs) {
  for (const Pairing& p : pairs) {
    const auto slot = static_cast<std::size_t>(p.task);
    if (Martian* a = state.find(p.member_a)) a->taskmates[slot] = p.member_b;
    if (Martian* b = state.find(p.member_b)) b->taskmates[slot] = p.member_a;
  }
}

}  // namespace marscolony
