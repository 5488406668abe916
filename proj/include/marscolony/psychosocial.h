#pragma once

#include <span>
#include <vector>

#include "marscolony/core.h"

namespace marscolony {

// Gains and losses per category plus the coping midpoint that separates
// helpful from harmful contact.
struct InteractionCoefficients {
  PerCategory gain{};
  PerCategory loss{};
  double coping_midpoint = 0.90;
  double health_scale = 30.0;
  double coping_boost = 0.0012;
  double coping_drain = 0.0012;
  double coping_floor = 0.5;

  static InteractionCoefficients from(const SimConfig& config);
};

// Wrapped Chebyshev distance on a square torus.
int torus_distance(GridPos a, GridPos b, int grid_size);

// Every other settler within `radius` cells, ascending id.
std::vector<MartianId> find_neighbors(const Martian& m, std::span<const Martian> population,
                                      int radius, int grid_size);

struct InteractionDelta {
  double health_a = 0.0;
  double coping_a = 0.0;
  double health_b = 0.0;
  double coping_b = 0.0;
};

// Health change from one's own coping relative to the midpoint; coping change
// from the partner's.
double interaction_health_delta(ResilienceCategory category, double coping,
                                const InteractionCoefficients& k);
double interaction_coping_delta(double partner_coping, const InteractionCoefficients& k);

// Deltas for one encounter, computed from the pre-encounter values.
InteractionDelta interact(const Martian& a, const Martian& b, const InteractionCoefficients& k);

// Adds the deltas and clamps health to [0, 100] and coping to [floor, 1].
void apply_interaction(Martian& a, Martian& b, const InteractionDelta& d,
                       const InteractionCoefficients& k);

// Ascending id: each settler not yet engaged picks a random unengaged
// neighbour. Sets `partner` on both. Returns the number of encounters.
int run_social_phase(SimState& state);

// Per active stressor, every settler is independently hit with
// p_stressor_hit, losing health and coping.
void apply_stressor_pressure(SimState& state);

}  // namespace marscolony
