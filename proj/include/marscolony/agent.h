#pragma once

#include <array>

#include "marscolony/core.h"

namespace marscolony {

// The eight compass headings, counter-clockwise from east.
inline constexpr std::array<GridPos, 8> kHeadings{{
    {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};

GridPos wrap(GridPos p, int grid_size);

// One step along `heading` (index into kHeadings) on the torus.
GridPos step_toward(GridPos from, int heading, int grid_size);

// Random heading, one cell forward. Returns the chosen heading index.
int move_agent(Martian& m, int grid_size, Rng& rng);

void sleep(Martian& m, double regen);

// What one settler's meal did to the pools this tick.
struct ConsumptionLedger {
  Produced contributed;   // surplus added to the pools
  Produced withdrawn;     // drawn from the pools
  Produced unmet;         // need the pools could not cover
  double waste_added = 0.0;
  double health_penalty = 0.0;
};

// Eats this tick's production first, then the settlement pool; unmet need
// costs health in proportion to the unmet fraction. Resources are handled in
// the fixed order food, water, air.
ConsumptionLedger consume(Martian& m, Stores& stores, const SimConfig& config);

// Health exhausted or struck by random mortality. Always takes exactly one
// draw so the mortality stream advances once per settler.
bool dies_this_tick(const Martian& m, double p_random_death, Rng& rng);

// Removes dead settlers in ascending id order and clears references to them.
// Returns the number removed.
int apply_mortality(SimState& state);

}  // namespace marscolony
