#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace marscolony {

// Raised for unparseable or out-of-range configuration. `field()` names the
// offending key (empty when the whole document is at fault).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Per-category values, indexed by ResilienceCategory
// (neurotic, reactive, social, agreeable).
using PerCategory = std::array<double, 4>;

// Every environment constant, probability and calibration knob of a run.
// Together with a seed this fully determines a simulation.
//
// Units: 1 tick = 1 week; food and air in kg, water in L.
struct SimConfig {
  // Population and horizon.
  int initial_population = 40;
  int ticks = 1456;  // 28 years
  int grid_size = 50;

  // Weekly needs per settler.
  double weekly_need_food = 10.5;
  double weekly_need_water = 28.0;
  double weekly_need_air = 5.88;

  // Per-patch production capacity per tick.
  double p_food = 0.5;
  double p_air = 5.88;
  double p_water = 28.0;
  double p_waste = 0.0;

  // Earth resupply.
  int shipment_frequency = 78;
  double minerals_per_shipment = 100.0;
  double food_shipment_weeks = 78.0;  // food per shipment = need * N * weeks
  double stockpile_weeks = 156.0;

  // Technology and energy.
  double technology_initial = 0.5;
  double tech_cap = 1.5;
  double tech_increment = 0.1;
  double minerals_per_tech_step = 10.0;
  double energy_placeholder = 1.0;  // carried, never read by the model

  bool production_enabled = true;

  // Stochastic events.
  double p_habitat_accident = 0.01;
  double p_shipping_disaster = 0.1;
  double p_random_death = 0.0002;
  double p_arrival = 0.15;
  int arrivals_per_event = 4;

  // Health and resource penalties.
  double sleep_regen = 1.0;
  double shortfall_health_penalty = 1.0;
  double waste_per_agent = 1.0;
  double waste_byproduct = 0.1;
  double waste_removal_rate = 2.0;

  // Stressors.
  double p_stressor_hit = 0.5;
  double stressor_health_penalty = 2.0;
  double stressor_coping_penalty = 0.005;
  double stressor_drain_fraction = 0.05;
  int stressor_dissipation_ticks = 4;

  // Social interaction.
  PerCategory interaction_gain{0.6, 0.8, 0.9, 1.0};
  PerCategory interaction_loss{1.0, 0.9, 0.8, 0.6};
  double coping_midpoint = 0.90;
  double health_scale = 30.0;
  double coping_boost = 0.0012;
  double coping_drain = 0.0012;
  double coping_floor = 0.5;
  int interaction_radius = 3;

  // Stability classification.
  int stability_threshold = 10;
  int bounce_back_window = 84;

  bool halt_on_extinction = false;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// Throws ConfigError naming the first field that breaks an invariant.
void validate(const SimConfig& config);

nlohmann::json to_json(const SimConfig& config);

// Missing keys keep their defaults; unknown keys and type mismatches are
// rejected. Does not call validate().
SimConfig config_from_json(const nlohmann::json& doc);
SimConfig config_from_json(const nlohmann::json& doc, SimConfig base);

SimConfig load_config(const std::string& path);
void save_config(const SimConfig& config, const std::string& path);

// Sets one scalar knob by its file key, e.g. ("p_arrival", 0.3) or
// ("interaction_gain.neurotic", 0.5). Integer and boolean fields accept
// whole numbers / 0-1. Throws ConfigError for unknown keys.
void set_knob(SimConfig& config, std::string_view key, double value);
double get_knob(const SimConfig& config, std::string_view key);

// 16 hex digits; stable for equal configs.
std::string config_hash(const SimConfig& config);

}  // namespace marscolony
