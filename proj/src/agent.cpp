#include "marscolony/agent.h"

#include <algorithm>

namespace marscolony {
namespace {

void settle(double produced, double need, double& pool, double& contributed, double& withdrawn,
            double& unmet) {
  if (produced >= need) {
    contributed = produced - need;
    pool += contributed;
    return;
  }
  const double deficit = need - produced;
  withdrawn = std::min(deficit, pool);
  pool -= withdrawn;
  if (pool < 0.0) pool = 0.0;
  unmet = deficit - withdrawn;
}

}  // namespace

GridPos wrap(GridPos p, int grid_size) {
  auto mod = [grid_size](int v) { return ((v % grid_size) + grid_size) % grid_size; };
  return GridPos{mod(p.x), mod(p.y)};
}

GridPos step_toward(GridPos from, int heading, int grid_size) {
  const GridPos d = kHeadings[static_cast<std::size_t>(heading)];
  return wrap(GridPos{from.x + d.x, from.y + d.y}, grid_size);
}

int move_agent(Martian& m, int grid_size, Rng& rng) {
  const int heading = static_cast<int>(rng.below(kHeadings.size()));
  m.position = step_toward(m.position, heading, grid_size);
  return heading;
}

void sleep(Martian& m, double regen) { m.health = std::min(100.0, m.health + regen); }

ConsumptionLedger consume(Martian& m, Stores& stores, const SimConfig& config) {
  ConsumptionLedger ledger;
  settle(m.produced_this_tick.food, config.weekly_need_food, stores.food,
         ledger.contributed.food, ledger.withdrawn.food, ledger.unmet.food);
  settle(m.produced_this_tick.water, config.weekly_need_water, stores.water,
         ledger.contributed.water, ledger.withdrawn.water, ledger.unmet.water);
  settle(m.produced_this_tick.air, config.weekly_need_air, stores.air, ledger.contributed.air,
         ledger.withdrawn.air, ledger.unmet.air);

  ledger.health_penalty =
      config.shortfall_health_penalty *
      (ledger.unmet.food / config.weekly_need_food + ledger.unmet.water / config.weekly_need_water +
       ledger.unmet.air / config.weekly_need_air);
  m.health = std::clamp(m.health - ledger.health_penalty, 0.0, 100.0);

  ledger.waste_added = config.waste_per_agent;
  stores.waste += ledger.waste_added;
  return ledger;
}

bool dies_this_tick(const Martian& m, double p_random_death, Rng& rng) {
  const bool struck = rng.uniform() < p_random_death;
  return m.health <= 0.0 || struck;
}

int apply_mortality(SimState& state) {
  std::vector<MartianId> dead;
  for (const Martian& m : state.martians) {
    if (dies_this_tick(m, state.config.p_random_death, state.rng.mortality)) dead.push_back(m.id);
  }
  if (dead.empty()) return 0;

  auto is_dead = [&](MartianId id) { return std::binary_search(dead.begin(), dead.end(), id); };
  std::erase_if(state.martians, [&](const Martian& m) { return is_dead(m.id); });
  for (Martian& m : state.martians) {
    if (m.partner && is_dead(*m.partner)) m.partner.reset();
    for (auto& mate : m.taskmates) {
      if (mate && is_dead(*mate)) mate.reset();
    }
  }
  state.counters.deaths += static_cast<int>(dead.size());
  return static_cast<int>(dead.size());
}

}  // namespace marscolony
