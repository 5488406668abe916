#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "marscolony/config.h"

using namespace marscolony;

namespace {

std::filesystem::path scratch(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("defaults are valid") { CHECK_NOTHROW(validate(SimConfig{})); }

TEST_CASE("json round trip is lossless") {
  SimConfig c;
  c.initial_population = 37;
  c.p_arrival = 0.123456789012345;
  c.interaction_gain[2] = 0.91;
  c.production_enabled = false;
  CHECK(config_from_json(to_json(c)) == c);
  CHECK(config_from_json(nlohmann::json::parse(to_json(c).dump())) == c);

  const auto path = std::filesystem::temp_directory_path() / "marscolony_roundtrip.json";
  save_config(c, path.string());
  CHECK(load_config(path.string()) == c);
  std::filesystem::remove(path);
}

TEST_CASE("an empty file or object means defaults") {
  CHECK(config_from_json(nlohmann::json::object()) == SimConfig{});
  const auto p = scratch("marscolony_empty.json", "");
  CHECK(load_config(p.string()) == SimConfig{});
  std::filesystem::remove(p);
}

TEST_CASE("errors name the offending field") {
  auto field_of = [](const char* text) {
    try {
      config_from_json(nlohmann::json::parse(text));
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of(R"({"ticks": "many"})") == "ticks");
  CHECK(field_of(R"({"ticks": 1.5})") == "ticks");
  CHECK(field_of(R"({"no_such_knob": 1})") == "no_such_knob");
  CHECK(field_of(R"({"production_enabled": 1})") == "production_enabled");
  CHECK(field_of(R"({"interaction_gain": {"stoic": 1}})") == "interaction_gain.stoic");

  SimConfig c;
  c.p_arrival = 1.5;
  try {
    validate(c);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "p_arrival");
  }
  c = SimConfig{};
  c.initial_population = 3;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = SimConfig{};
  c.weekly_need_air = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("malformed json is a config error") {
  const auto p = scratch("marscolony_bad.json", "{\"ticks\": 10,");
  CHECK_THROWS_AS(load_config(p.string()), ConfigError);
  std::filesystem::remove(p);
}

TEST_CASE("knobs by name") {
  SimConfig c;
  set_knob(c, "p_arrival", 0.3);
  set_knob(c, "interaction_loss.agreeable", 0.5);
  set_knob(c, "ticks", 100);
  set_knob(c, "production_enabled", 0);
  CHECK(c.p_arrival == 0.3);
  CHECK(c.interaction_loss[3] == 0.5);
  CHECK(c.ticks == 100);
  CHECK_FALSE(c.production_enabled);
  CHECK(get_knob(c, "interaction_loss.agreeable") == 0.5);
  CHECK_THROWS_AS(set_knob(c, "nope", 1), ConfigError);
}

TEST_CASE("config hash tracks content") {
  SimConfig a, b;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16u);
  b.p_arrival = 0.31;
  CHECK(config_hash(a) != config_hash(b));
}
