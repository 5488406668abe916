#include "marscolony/config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <type_traits>

#include "marscolony/rng.h"

namespace marscolony {
namespace {

constexpr std::array<const char*, 4> kCategoryKeys{"neurotic", "reactive",
                                                   "social", "agreeable"};

// Calls f(key, member) for every serialized field, in file order.
template <typename Config, typename F>
void visit_fields(Config& c, F&& f) {
  f("initial_population", c.initial_population);
  f("ticks", c.ticks);
  f("grid_size", c.grid_size);
  f("weekly_need_food", c.weekly_need_food);
  f("weekly_need_water", c.weekly_need_water);
  f("weekly_need_air", c.weekly_need_air);
  f("p_food", c.p_food);
  f("p_air", c.p_air);
  f("p_water", c.p_water);
  f("p_waste", c.p_waste);
  f("shipment_frequency", c.shipment_frequency);
  f("minerals_per_shipment", c.minerals_per_shipment);
  f("food_shipment_weeks", c.food_shipment_weeks);
  f("stockpile_weeks", c.stockpile_weeks);
  f("technology_initial", c.technology_initial);
  f("tech_cap", c.tech_cap);
  f("tech_increment", c.tech_increment);
  f("minerals_per_tech_step", c.minerals_per_tech_step);
  f("energy_placeholder", c.energy_placeholder);
  f("production_enabled", c.production_enabled);
  f("p_habitat_accident", c.p_habitat_accident);
  f("p_shipping_disaster", c.p_shipping_disaster);
  f("p_random_death", c.p_random_death);
  f("p_arrival", c.p_arrival);
  f("arrivals_per_event", c.arrivals_per_event);
  f("sleep_regen", c.sleep_regen);
  f("shortfall_health_penalty", c.shortfall_health_penalty);
  f("waste_per_agent", c.waste_per_agent);
  f("waste_byproduct", c.waste_byproduct);
  f("waste_removal_rate", c.waste_removal_rate);
  f("p_stressor_hit", c.p_stressor_hit);
  f("stressor_health_penalty", c.stressor_health_penalty);
  f("stressor_coping_penalty", c.stressor_coping_penalty);
  f("stressor_drain_fraction", c.stressor_drain_fraction);
  f("stressor_dissipation_ticks", c.stressor_dissipation_ticks);
  f("interaction_gain", c.interaction_gain);
  f("interaction_loss", c.interaction_loss);
  f("coping_midpoint", c.coping_midpoint);
  f("health_scale", c.health_scale);
  f("coping_boost", c.coping_boost);
  f("coping_drain", c.coping_drain);
  f("coping_floor", c.coping_floor);
  f("interaction_radius", c.interaction_radius);
  f("stability_threshold", c.stability_threshold);
  f("bounce_back_window", c.bounce_back_window);
  f("halt_on_extinction", c.halt_on_extinction);
}

void read_value(const nlohmann::json& v, const std::string& key, int& out) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  const auto wide = v.get<std::int64_t>();
  if (wide < INT32_MIN || wide > INT32_MAX) throw ConfigError(key, "integer out of range");
  out = static_cast<int>(wide);
}

void read_value(const nlohmann::json& v, const std::string& key, double& out) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  out = v.get<double>();
}

void read_value(const nlohmann::json& v, const std::string& key, bool& out) {
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  out = v.get<bool>();
}

void read_value(const nlohmann::json& v, const std::string& key, PerCategory& out) {
  if (!v.is_object()) throw ConfigError(key, "expected an object keyed by category");
  for (const auto& [name, value] : v.items()) {
    std::size_t i = 0;
    while (i < kCategoryKeys.size() && name != kCategoryKeys[i]) ++i;
    if (i == kCategoryKeys.size()) throw ConfigError(key + "." + name, "unknown category");
    read_value(value, key + "." + name, out[i]);
  }
}

nlohmann::json write_value(const PerCategory& v) {
  nlohmann::json obj = nlohmann::json::object();
  for (std::size_t i = 0; i < kCategoryKeys.size(); ++i) obj[kCategoryKeys[i]] = v[i];
  return obj;
}

template <typename T>
nlohmann::json write_value(const T& v) {
  return v;
}

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

void require_probability(double p, const char* field) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0, field, "must be a probability in [0, 1]");
}

void require_positive(double v, const char* field) {
  require(std::isfinite(v) && v > 0.0, field, "must be > 0");
}

void require_non_negative(double v, const char* field) {
  require(std::isfinite(v) && v >= 0.0, field, "must be >= 0");
}

}  // namespace

void validate(const SimConfig& c) {
  require(c.initial_population >= 4, "initial_population",
          "must be >= 4 so every resilience category is populated");
  require(c.ticks >= 0, "ticks", "must be >= 0");
  require(c.grid_size >= 1, "grid_size", "must be >= 1");

  require_positive(c.weekly_need_food, "weekly_need_food");
  require_positive(c.weekly_need_water, "weekly_need_water");
  require_positive(c.weekly_need_air, "weekly_need_air");
  require_positive(c.p_food, "p_food");
  require_positive(c.p_air, "p_air");
  require_positive(c.p_water, "p_water");
  require_non_negative(c.p_waste, "p_waste");

  require(c.shipment_frequency >= 1, "shipment_frequency", "must be >= 1");
  require_positive(c.minerals_per_shipment, "minerals_per_shipment");
  require_positive(c.food_shipment_weeks, "food_shipment_weeks");
  require_positive(c.stockpile_weeks, "stockpile_weeks");

  require_positive(c.technology_initial, "technology_initial");
  require(std::isfinite(c.tech_cap) && c.tech_cap >= c.technology_initial, "tech_cap",
          "must be >= technology_initial");
  require_positive(c.tech_increment, "tech_increment");
  require_positive(c.minerals_per_tech_step, "minerals_per_tech_step");
  require(std::isfinite(c.energy_placeholder), "energy_placeholder", "must be finite");

  require_probability(c.p_habitat_accident, "p_habitat_accident");
  require_probability(c.p_shipping_disaster, "p_shipping_disaster");
  require_probability(c.p_random_death, "p_random_death");
  require_probability(c.p_arrival, "p_arrival");
  require(c.arrivals_per_event >= 0, "arrivals_per_event", "must be >= 0");

  require_non_negative(c.sleep_regen, "sleep_regen");
  require_non_negative(c.shortfall_health_penalty, "shortfall_health_penalty");
  require_non_negative(c.waste_per_agent, "waste_per_agent");
  require_non_negative(c.waste_byproduct, "waste_byproduct");
  require_non_negative(c.waste_removal_rate, "waste_removal_rate");

  require_probability(c.p_stressor_hit, "p_stressor_hit");
  require_non_negative(c.stressor_health_penalty, "stressor_health_penalty");
  require_non_negative(c.stressor_coping_penalty, "stressor_coping_penalty");
  require_probability(c.stressor_drain_fraction, "stressor_drain_fraction");
  require(c.stressor_dissipation_ticks >= 1, "stressor_dissipation_ticks", "must be >= 1");

  for (std::size_t i = 0; i < 4; ++i) {
    require_positive(c.interaction_gain[i], "interaction_gain");
    require_positive(c.interaction_loss[i], "interaction_loss");
  }
  // Gains rise and losses fall with resilience (neurotic .. agreeable).
  for (std::size_t i = 1; i < 4; ++i) {
    require(c.interaction_gain[i] > c.interaction_gain[i - 1], "interaction_gain",
            "must strictly increase from neurotic to agreeable");
    require(c.interaction_loss[i] < c.interaction_loss[i - 1], "interaction_loss",
            "must strictly decrease from neurotic to agreeable");
  }
  require_probability(c.coping_midpoint, "coping_midpoint");
  require_non_negative(c.health_scale, "health_scale");
  require_non_negative(c.coping_boost, "coping_boost");
  require_non_negative(c.coping_drain, "coping_drain");
  require_probability(c.coping_floor, "coping_floor");
  require(c.interaction_radius >= 0, "interaction_radius", "must be >= 0");

  require(c.stability_threshold >= 0, "stability_threshold", "must be >= 0");
  require(c.bounce_back_window >= 0, "bounce_back_window", "must be >= 0");
}

nlohmann::json to_json(const SimConfig& config) {
  nlohmann::json doc = nlohmann::json::object();
  visit_fields(config, [&](const char* key, const auto& value) { doc[key] = write_value(value); });
  return doc;
}

SimConfig config_from_json(const nlohmann::json& doc) { return config_from_json(doc, SimConfig{}); }

SimConfig config_from_json(const nlohmann::json& doc, SimConfig base) {
  if (doc.is_null()) return base;
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    visit_fields(base, [&](const char* name, auto& field) {
      if (known || key != name) return;
      known = true;
      read_value(value, key, field);
    });
    if (!known) throw ConfigError(key, "unknown config field");
  }
  return base;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return SimConfig{};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", "malformed JSON in '" + path + "': " + e.what());
  }
  return config_from_json(doc);
}

void save_config(const SimConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file '" + path + "'");
  out << to_json(config).dump(2) << '\n';
}

void set_knob(SimConfig& config, std::string_view key, double value) {
  const auto dot = key.find('.');
  const std::string head(key.substr(0, dot));
  bool known = false;
  visit_fields(config, [&](const char* name, auto& field) {
    if (known || head != name) return;
    using T = std::decay_t<decltype(field)>;
    if constexpr (std::is_same_v<T, PerCategory>) {
      if (dot == std::string_view::npos) {
        field.fill(value);
        known = true;
        return;
      }
      const auto sub = key.substr(dot + 1);
      for (std::size_t i = 0; i < kCategoryKeys.size(); ++i) {
        if (sub == kCategoryKeys[i]) {
          field[i] = value;
          known = true;
        }
      }
    } else if (dot == std::string_view::npos) {
      known = true;
      if constexpr (std::is_same_v<T, bool>) {
        field = value != 0.0;
      } else if constexpr (std::is_same_v<T, int>) {
        field = static_cast<int>(std::lround(value));
      } else {
        field = value;
      }
    }
  });
  if (!known) throw ConfigError(std::string(key), "unknown knob");
}

double get_knob(const SimConfig& config, std::string_view key) {
  const auto dot = key.find('.');
  const std::string head(key.substr(0, dot));
  std::optional<double> found;
  visit_fields(config, [&](const char* name, const auto& field) {
    if (found || head != name) return;
    using T = std::decay_t<decltype(field)>;
    if constexpr (std::is_same_v<T, PerCategory>) {
      if (dot == std::string_view::npos) return;
      const auto sub = key.substr(dot + 1);
      for (std::size_t i = 0; i < kCategoryKeys.size(); ++i) {
        if (sub == kCategoryKeys[i]) found = field[i];
      }
    } else if (dot == std::string_view::npos) {
      found = static_cast<double>(field);
    }
  });
  if (!found) throw ConfigError(std::string(key), "unknown knob");
  return *found;
}

std::string config_hash(const SimConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_json(config).dump())));
  return buf;
}

}  // namespace marscolony
