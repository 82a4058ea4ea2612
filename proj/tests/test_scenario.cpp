#include <fstream>

#include "doctest.h"

#include "preho/errors.hpp"
#include "preho/scenario.hpp"
#include "test_support.hpp"

using namespace preho;
using nlohmann::json;

namespace {

json minimal() {
    return json::parse(R"({
      "name": "one",
      "time_grid": {"num_slots": 1, "slot_duration_s": 3.0},
      "constellation": {"kind": "walker_delta", "num_planes": 1, "sats_per_plane": 1,
                        "inclination_deg": 0.0, "altitude_km": 550.0},
      "ues": {"positions": [[0.0, 0.0]]}
    })");
}

std::string field_of(const json& j) {
    try {
        scenario_from_json(j);
    } catch (const ValidationError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST_CASE("minimal config gives N = M = T = 1") {
    const auto s = scenario_from_json(minimal());
    CHECK(s.num_ues() == 1);
    CHECK(s.num_slots() == 1);
    CHECK(s.constellation.walker.num_sats() == 1);
    CHECK(s.gamma == 2e-3);
    CHECK(s.utility.alpha == 1.0);
    CHECK(s.min_elevation_deg == 40.0);
}

TEST_CASE("full-scale golden config is accepted") {
    const auto s = load_scenario(test::scenario_path("golden.json"));
    CHECK(s.num_ues() == 100);
    CHECK(s.num_slots() == 200);
    CHECK(s.time_grid.slot_duration_s == 3.0);
    CHECK(s.time_grid.duration_s() == 600.0);
    CHECK(s.min_elevation_deg == 40.0);
    CHECK(s.gamma == 2e-3);
    CHECK(s.constellation.walker.num_sats() == 1584);
    CHECK(s.channel.bandwidth_max_hz == 20e6);
    for (const auto& p : s.ues.positions) {
        CHECK(p.lat_deg >= 35.0);
        CHECK(p.lat_deg <= 38.0);
        CHECK(p.lon_deg >= 122.0);
        CHECK(p.lon_deg <= 125.0);
    }
}

TEST_CASE("invariant violations name the field") {
    auto j = minimal();
    j["gamma"] = 0.0;
    CHECK(field_of(j) == "gamma");

    j = minimal();
    j["min_elevation_deg"] = 90.0;
    CHECK(field_of(j) == "min_elevation_deg");

    j = minimal();
    j["time_grid"]["num_slots"] = 0;
    CHECK(field_of(j) == "time_grid.num_slots");

    j = minimal();
    j["constellation"]["altitude_km"] = -1.0;
    CHECK(field_of(j) == "constellation.altitude_km");

    j = minimal();
    j["constellation"]["inclination_deg"] = 181.0;
    CHECK(field_of(j) == "constellation.inclination_deg");

    j = minimal();
    j["ues"]["positions"] = json::array({json::array({91.0, 0.0})});
    CHECK(field_of(j).rfind("ues", 0) == 0);

    j = minimal();
    j["channel"] = {{"shadowing_sigma_db", -1.0}};
    CHECK(field_of(j) == "channel.shadowing_sigma_db");

    j = minimal();
    j["latency"] = {{"rach_ms", -1.0}};
    CHECK(field_of(j) == "latency.rach_ms");

    j = minimal();
    j["bogus"] = 1;
    CHECK(field_of(j) == "bogus");
}

TEST_CASE("malformed documents are parse errors") {
    const auto dir = test::scratch_dir("scenario_parse");
    std::ofstream(dir / "bad.json") << "{ \"name\": ";
    CHECK_THROWS_AS(load_scenario(dir / "bad.json"), ParseError);
    CHECK_THROWS_AS(load_scenario(dir / "missing.json"), ParseError);
}

TEST_CASE("synthesize_ues examples") {
    const auto single = synthesize_ues(1, {10.0, 10.0, 20.0, 20.0}, 0);
    REQUIRE(single.size() == 1);
    CHECK(single.positions[0].lat_deg == 10.0);
    CHECK(single.positions[0].lon_deg == 20.0);

    const BoundingBox box{35.0, 38.0, 122.0, 125.0};
    const auto a = synthesize_ues(100, box, 7);
    const auto b = synthesize_ues(100, box, 7);
    CHECK(a == b);
    CHECK(a.size() == 100);
    const auto c = synthesize_ues(100, box, 8);
    CHECK(c.size() == 100);
    int same = 0;
    for (int k = 0; k < 100; ++k) same += a.positions[k] == c.positions[k];
    CHECK(same == 0);

    CHECK_THROWS_AS(synthesize_ues(3, {5.0, 4.0, 0.0, 1.0}, 0), ValidationError);
    CHECK_THROWS_AS(synthesize_ues(0, box, 0), ValidationError);
}

TEST_CASE("save then load reproduces the scenario") {
    const auto dir = test::scratch_dir("scenario_roundtrip");
    for (const char* name : {"golden.json", "desk.json", "tiny.json"}) {
        const auto s = load_scenario(test::scenario_path(name));
        save_scenario(s, dir / name);
        const auto again = load_scenario(dir / name);
        CHECK(again == s);
        CHECK(scenario_digest(again) == scenario_digest(s));
        save_scenario(again, dir / "second.json");
        CHECK(load_scenario(dir / "second.json") == s);
    }
}

TEST_CASE("digest tracks content") {
    auto s = scenario_from_json(minimal());
    const auto d = scenario_digest(s);
    CHECK(d.size() == 16);
    CHECK(scenario_digest(s) == d);
    s.gamma = 3e-3;
    CHECK(scenario_digest(s) != d);
}

TEST_CASE("comments are allowed in config files") {
    const auto dir = test::scratch_dir("scenario_comments");
    std::ofstream(dir / "c.json") << "// header\n" << minimal().dump(2) << "\n";
    CHECK(load_scenario(dir / "c.json").num_ues() == 1);
}
