#include "marscolony/core.h"

#include <algorithm>
#include <utility>

namespace marscolony {

std::string_view to_string(ResilienceCategory c) {
  switch (c) {
    case ResilienceCategory::Neurotic: return "neurotic";
    case ResilienceCategory::Reactive: return "reactive";
    case ResilienceCategory::Social: return "social";
    case ResilienceCategory::Agreeable: return "agreeable";
  }
  return "?";
}

std::string_view to_string(Resource r) {
  switch (r) {
    case Resource::Food: return "food";
    case Resource::Water: return "water";
    case Resource::Air: return "air";
    case Resource::Minerals: return "minerals";
  }
  return "?";
}

std::string_view to_string(Task t) {
  switch (t) {
    case Task::Food: return "food";
    case Task::Water: return "water";
    case Task::Air: return "air";
    case Task::Waste: return "waste";
    case Task::Accident: return "accident";
  }
  return "?";
}

std::string_view to_string(StressorKind k) {
  return k == StressorKind::Habitat ? "habitat" : "shipping";
}

double& Stores::operator[](Resource r) {
  switch (r) {
    case Resource::Food: return food;
    case Resource::Water: return water;
    case Resource::Air: return air;
    case Resource::Minerals: return minerals;
  }
  return food;
}

double Stores::operator[](Resource r) const { return const_cast<Stores&>(*this)[r]; }

TaskThresholds TaskThresholds::roll(Rng& rng) {
  TaskThresholds t;
  for (Task task : {Task::Food, Task::Water, Task::Air, Task::Waste}) {
    const int s1 = rng.uniform_int(0, 100);
    t[task] = SkillThreshold{s1, 100 - s1};
  }
  const int a1 = rng.uniform_int(0, 100);
  const int a2 = rng.uniform_int(0, 100);
  t[Task::Accident] = SkillThreshold{a1, a2};
  return t;
}

const Martian* SimState::find(MartianId id) const {
  auto it = std::lower_bound(martians.begin(), martians.end(), id,
                             [](const Martian& m, MartianId key) { return m.id < key; });
  return (it != martians.end() && it->id == id) ? &*it : nullptr;
}

Martian* SimState::find(MartianId id) {
  return const_cast<Martian*>(std::as_const(*this).find(id));
}

int SimState::active_stressor_count() const {
  return static_cast<int>(
      std::count_if(stressors.begin(), stressors.end(), [](const Stressor& s) { return s.active; }));
}

Martian make_martian(MartianId id, ResilienceCategory category, int grid_size, Rng& rng) {
  Martian m;
  m.id = id;
  m.category = category;
  m.coping = coping_for(category);
  m.skill1 = rng.uniform_int(0, 100);
  m.skill2 = 100 - m.skill1;
  m.health = 100.0;
  m.position = GridPos{rng.uniform_int(0, grid_size - 1), rng.uniform_int(0, grid_size - 1)};
  return m;
}

SimState init_state(const SimConfig& config, std::uint64_t seed) {
  validate(config);

  SimState s;
  s.config = config;
  s.rng = RngStreams::from_seed(seed);

  const int n = config.initial_population;
  s.martians.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    s.martians.push_back(make_martian(MartianId{s.next_id++}, kAllCategories[i % 4],
                                      config.grid_size, s.rng.init));
  }

  auto& settlement = s.settlement;
  settlement.grid_size = config.grid_size;
  settlement.patches.assign(static_cast<std::size_t>(config.grid_size) * config.grid_size,
                            Patch{config.p_food, config.p_air, config.p_water});
  settlement.technology = config.technology_initial;
  settlement.stores.food = config.weekly_need_food * n * config.stockpile_weeks;
  settlement.stores.water = config.weekly_need_water * n * config.stockpile_weeks;
  settlement.stores.air = config.weekly_need_air * n * config.stockpile_weeks;
  settlement.stores.waste = 0.0;
  settlement.stores.minerals = 0.0;

  s.thresholds = TaskThresholds::roll(s.rng.init);
  return s;
}

}  // namespace marscolony
