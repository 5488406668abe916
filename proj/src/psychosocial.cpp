#include "marscolony/psychosocial.h"

#include <algorithm>
#include <cstdlib>

namespace marscolony {
namespace {

void clamp_martian(Martian& m, double coping_floor) {
  m.health = std::clamp(m.health, 0.0, 100.0);
  m.coping = std::clamp(m.coping, coping_floor, 1.0);
}

}  // namespace

InteractionCoefficients InteractionCoefficients::from(const SimConfig& c) {
  InteractionCoefficients k;
  k.gain = c.interaction_gain;
  k.loss = c.interaction_loss;
  k.coping_midpoint = c.coping_midpoint;
  k.health_scale = c.health_scale;
  k.coping_boost = c.coping_boost;
  k.coping_drain = c.coping_drain;
  k.coping_floor = c.coping_floor;
  return k;
}

int torus_distance(GridPos a, GridPos b, int grid_size) {
  auto axis = [grid_size](int u, int v) {
    const int d = std::abs(u - v) % grid_size;
    return std::min(d, grid_size - d);
  };
  return std::max(axis(a.x, b.x), axis(a.y, b.y));
}

std::vector<MartianId> find_neighbors(const Martian& m, std::span<const Martian> population,
                                      int radius, int grid_size) {
  std::vector<MartianId> out;
  for (const Martian& other : population) {
    if (other.id == m.id) continue;
    if (torus_distance(m.position, other.position, grid_size) <= radius) out.push_back(other.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double interaction_health_delta(ResilienceCategory category, double coping,
                                const InteractionCoefficients& k) {
  const std::size_t i = index_of(category);
  if (coping >= k.coping_midpoint) return k.gain[i] * (coping - k.coping_midpoint) * k.health_scale;
  return -k.loss[i] * (k.coping_midpoint - coping) * k.health_scale;
}

double interaction_coping_delta(double partner_coping, const InteractionCoefficients& k) {
  return partner_coping >= k.coping_midpoint ? k.coping_boost : -k.coping_drain;
}

InteractionDelta interact(const Martian& a, const Martian& b, const InteractionCoefficients& k) {
  return InteractionDelta{
      interaction_health_delta(a.category, a.coping, k),
      interaction_coping_delta(b.coping, k),
      interaction_health_delta(b.category, b.coping, k),
      interaction_coping_delta(a.coping, k),
  };
}

void apply_interaction(Martian& a, Martian& b, const InteractionDelta& d,
                       const InteractionCoefficients& k) {
  a.health += d.health_a;
  a.coping += d.coping_a;
  b.health += d.health_b;
  b.coping += d.coping_b;
  clamp_martian(a, k.coping_floor);
  clamp_martian(b, k.coping_floor);
}

int run_social_phase(SimState& state) {
  const auto k = InteractionCoefficients::from(state.config);
  const int radius = state.config.interaction_radius;
  const int grid = state.settlement.grid_size;
  auto& pop = state.martians;

  std::vector<bool> engaged(pop.size(), false);
  std::vector<std::size_t> candidates;
  int encounters = 0;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (engaged[i]) continue;
    candidates.clear();
    for (std::size_t j = 0; j < pop.size(); ++j) {
      if (j == i || engaged[j]) continue;
      if (torus_distance(pop[i].position, pop[j].position, grid) <= radius) candidates.push_back(j);
    }
    if (candidates.empty()) continue;
    const std::size_t j = candidates[state.rng.interaction.below(candidates.size())];
    apply_interaction(pop[i], pop[j], interact(pop[i], pop[j], k), k);
    pop[i].partner = pop[j].id;
    pop[j].partner = pop[i].id;
    engaged[i] = engaged[j] = true;
    ++encounters;
  }
  return encounters;
}

void apply_stressor_pressure(SimState& state) {
  const auto& cfg = state.config;
  for (const Stressor& s : state.stressors) {
    if (!s.active) continue;
    for (Martian& m : state.martians) {
      if (!state.rng.stressor.bernoulli(cfg.p_stressor_hit)) continue;
      m.health -= cfg.stressor_health_penalty;
      m.coping -= cfg.stressor_coping_penalty;
      clamp_martian(m, cfg.coping_floor);
    }
  }
}

}  // namespace marscolony
