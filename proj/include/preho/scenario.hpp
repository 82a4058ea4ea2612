#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "preho/geodesy.hpp"
#include "preho/params.hpp"
#include "preho/utility.hpp"

namespace preho {

struct TimeGrid {
    int num_slots = 1;
    double slot_duration_s = 1.0;
    double interval_start = 0.0;  // UTC epoch seconds

    double duration_s() const { return num_slots * slot_duration_s; }
    // Seconds since interval start at the beginning of slot t.
    double slot_offset_s(int t) const { return t * slot_duration_s; }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

enum class ConstellationKind { walker_delta, position_table };

struct WalkerParams {
    int num_planes = 1;
    int sats_per_plane = 1;
    double inclination_deg = 53.0;
    double altitude_km = 550.0;
    int phasing_factor = 0;
    double raan_offset_deg = 0.0;

    int num_sats() const { return num_planes * sats_per_plane; }

    friend bool operator==(const WalkerParams&, const WalkerParams&) = default;
};

struct ConstellationSpec {
    ConstellationKind kind = ConstellationKind::walker_delta;
    WalkerParams walker;
    std::string position_table;  // absolute path once loaded
    // Rotate Walker positions into the Earth-fixed frame. Off by default:
    // positions are then inertial with the frames aligned at interval start.
    bool earth_rotation = false;

    friend bool operator==(const ConstellationSpec&, const ConstellationSpec&) = default;
};

struct BoundingBox {
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct UePopulation {
    std::vector<Geodetic> positions;
    std::uint64_t seed = 0;
    // Set when the positions came from synthesize_ues.
    std::optional<BoundingBox> bbox;
    double alt_m = 0.0;

    std::size_t size() const { return positions.size(); }

    friend bool operator==(const UePopulation&, const UePopulation&) = default;
};

struct Scenario {
    std::string name;
    TimeGrid time_grid;
    ConstellationSpec constellation;
    UePopulation ues;
    double min_elevation_deg = 40.0;
    ChannelParams channel;
    UtilitySpec utility;
    double gamma = 2e-3;
    LatencyParams latency;

    int num_ues() const { return static_cast<int>(ues.size()); }
    int num_slots() const { return time_grid.num_slots; }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Uniform positions inside `bbox`; a pure function of its arguments. The
/// first k positions for count n >= k equal the positions for count k.
UePopulation synthesize_ues(int count, const BoundingBox& bbox, std::uint64_t seed, double alt_m = 0.0);

/// Throws ValidationError naming the offending field.
void validate(const Scenario& s);

Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json scenario_to_json(const Scenario& s);

/// Reads and validates a scenario config. Throws ParseError or ValidationError.
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Stable hex digest of the canonical config form.
std::string scenario_digest(const Scenario& s);

}  // namespace preho
