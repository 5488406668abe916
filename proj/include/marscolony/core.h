#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "marscolony/config.h"
#include "marscolony/rng.h"

namespace marscolony {

enum class ResilienceCategory : std::uint8_t { Neurotic = 0, Reactive = 1, Social = 2, Agreeable = 3 };

inline constexpr std::array<ResilienceCategory, 4> kAllCategories{
    ResilienceCategory::Neurotic, ResilienceCategory::Reactive, ResilienceCategory::Social,
    ResilienceCategory::Agreeable};

constexpr std::size_t index_of(ResilienceCategory c) { return static_cast<std::size_t>(c); }
std::string_view to_string(ResilienceCategory c);

// Base coping score of each resilience category.
constexpr double coping_for(ResilienceCategory c) {
  switch (c) {
    case ResilienceCategory::Neurotic: return 0.84;
    case ResilienceCategory::Reactive: return 0.89;
    case ResilienceCategory::Social: return 0.94;
    case ResilienceCategory::Agreeable: return 0.98;
  }
  return 0.0;
}

// Settlement stores addressable by accidents and stressor drains.
enum class Resource : std::uint8_t { Food, Water, Air, Minerals };
std::string_view to_string(Resource r);

// Skill-checked activities, in the order the engine processes them.
enum class Task : std::uint8_t { Food = 0, Water = 1, Air = 2, Waste = 3, Accident = 4 };
inline constexpr std::size_t kTaskCount = 5;
std::string_view to_string(Task t);

struct MartianId {
  std::uint32_t value = 0;
  friend auto operator<=>(const MartianId&, const MartianId&) = default;
};

struct GridPos {
  int x = 0;
  int y = 0;
  friend bool operator==(const GridPos&, const GridPos&) = default;
};

// Per-tick harvest of one settler.
struct Produced {
  double food = 0.0;
  double water = 0.0;
  double air = 0.0;
  double waste = 0.0;
  friend bool operator==(const Produced&, const Produced&) = default;
};

struct Martian {
  MartianId id;
  ResilienceCategory category = ResilienceCategory::Neurotic;
  double coping = 0.0;
  int skill1 = 0;
  int skill2 = 100;
  double health = 100.0;
  GridPos position;
  std::optional<MartianId> partner;  // social partner this tick
  std::array<std::optional<MartianId>, kTaskCount> taskmates{};
  Produced produced_this_tick;

  std::optional<MartianId> taskmate(Task t) const {
    return taskmates[static_cast<std::size_t>(t)];
  }

  friend bool operator==(const Martian&, const Martian&) = default;
};

enum class StressorKind : std::uint8_t { Shipping, Habitat };
std::string_view to_string(StressorKind k);

struct Stressor {
  StressorKind kind = StressorKind::Shipping;
  int age_ticks = 0;
  std::optional<Resource> target;  // Habitat only
  bool active = true;
  friend bool operator==(const Stressor&, const Stressor&) = default;
};

struct Patch {
  double food = 0.0;
  double air = 0.0;
  double water = 0.0;
  friend bool operator==(const Patch&, const Patch&) = default;
};

struct Stores {
  double food = 0.0;
  double water = 0.0;
  double air = 0.0;
  double waste = 0.0;
  double minerals = 0.0;

  double& operator[](Resource r);
  double operator[](Resource r) const;

  friend bool operator==(const Stores&, const Stores&) = default;
};

struct SettlementState {
  int grid_size = 50;
  std::vector<Patch> patches;  // row-major, grid_size * grid_size
  Stores stores;
  double technology = 0.5;

  Patch& patch_at(GridPos p) { return patches[static_cast<std::size_t>(p.y * grid_size + p.x)]; }
  const Patch& patch_at(GridPos p) const {
    return patches[static_cast<std::size_t>(p.y * grid_size + p.x)];
  }

  friend bool operator==(const SettlementState&, const SettlementState&) = default;
};

// Skill split required by a task. Production and waste thresholds sum to 100;
// accident thresholds are independent.
struct SkillThreshold {
  int s1 = 0;
  int s2 = 0;
  friend bool operator==(const SkillThreshold&, const SkillThreshold&) = default;
};

struct TaskThresholds {
  std::array<SkillThreshold, kTaskCount> by_task{};

  const SkillThreshold& operator[](Task t) const { return by_task[static_cast<std::size_t>(t)]; }
  SkillThreshold& operator[](Task t) { return by_task[static_cast<std::size_t>(t)]; }

  static TaskThresholds roll(Rng& rng);

  friend bool operator==(const TaskThresholds&, const TaskThresholds&) = default;
};

struct Counters {
  int shipments_received = 0;
  int shipping_disasters = 0;
  int habitat_accidents = 0;
  int births = 0;
  int deaths = 0;
  friend bool operator==(const Counters&, const Counters&) = default;
};

struct SimState {
  SimConfig config;
  int tick = 0;
  std::vector<Martian> martians;  // ascending id
  std::vector<Stressor> stressors;
  SettlementState settlement;
  TaskThresholds thresholds;
  Counters counters;
  std::uint32_t next_id = 0;
  RngStreams rng;

  const Martian* find(MartianId id) const;
  Martian* find(MartianId id);
  int active_stressor_count() const;

  friend bool operator==(const SimState&, const SimState&) = default;
};

// Fresh settler with uniform skills and position, full health and the base
// coping of its category.
Martian make_martian(MartianId id, ResilienceCategory category, int grid_size, Rng& rng);

// Builds the initial colony. Categories are dealt round-robin so counts
// differ by at most one. Throws ConfigError on an invalid config.
SimState init_state(const SimConfig& config, std::uint64_t seed);

}  // namespace marscolony
