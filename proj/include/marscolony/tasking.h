#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "marscolony/core.h"

namespace marscolony {

struct Pairing {
  Task task = Task::Food;
  MartianId member_a;
  MartianId member_b;
  friend bool operator==(const Pairing&, const Pairing&) = default;
};

struct PairingResult {
  std::vector<Pairing> pairs;
  std::vector<MartianId> unpaired;  // ascending id
};

// Two settlers clear a skill check when, skill by skill, the better of the
// two meets the requirement.
constexpr bool is_valid_pair(const Martian& a, const Martian& b, SkillThreshold t) {
  return a.id != b.id && std::max(a.skill1, b.skill1) >= t.s1 &&
         std::max(a.skill2, b.skill2) >= t.s2;
}

// Greedy maximal matching over a random permutation of the agents. The
// permutation is drawn from `rng` after sorting by id, so the result does not
// depend on the order of `agents`.
PairingResult form_pairs(std::span<const Martian> agents, Task task, SkillThreshold threshold,
                         Rng& rng);

struct Harvest {
  MartianId id;
  double amount = 0.0;
};

struct ProductionResult {
  std::vector<Harvest> harvests;  // member_a then member_b, pair by pair
  double waste_byproduct = 0.0;
};

// Each member of each pair harvests min(patch rate * technology, what is left
// on its own cell) of the task's resource. Credits produced_this_tick, draws
// down the patch and adds the waste by-product to the settlement. Only the
// food, water and air tasks produce.
ProductionResult produce(SimState& state, std::span<const Pairing> pairs, Task task);

// Each valid waste pair hauls away `rate` kg; the store floors at zero.
void remove_waste(std::size_t pair_count, Stores& stores, double rate);

// Runs an accident-threshold skill check for one habitat stressor and
// deactivates it on success. Throws std::invalid_argument for shipping
// stressors, which cannot be repaired.
bool attempt_accident_recovery(std::span<const Martian> agents, Stressor& stressor,
                               const TaskThresholds& thresholds, Rng& rng);

// Records pairs on the settlers' taskmate slots.
void assign_taskmates(SimState& state, std::span<const Pairing> pairs);

}  // namespace marscolony
