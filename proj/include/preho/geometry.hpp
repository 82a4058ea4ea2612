#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "preho/geodesy.hpp"
#include "preho/scenario.hpp"

namespace preho {

// Per-slot satellite positions. Satellite ids are sorted ascending; for a
// Walker constellation id = plane * sats_per_plane + index_in_plane.
class SatelliteTable {
public:
    SatelliteTable() = default;
    SatelliteTable(std::vector<int> sat_ids, int num_slots);

    int num_slots() const { return num_slots_; }
    int num_sats() const { return static_cast<int>(ids_.size()); }
    const std::vector<int>& sat_ids() const { return ids_; }

    // Dense column for a satellite id; throws if the id is unknown.
    int index_of(int sat_id) const;

    const Ecef& at(int slot, int column) const { return pos_[static_cast<std::size_t>(slot) * ids_.size() + column]; }
    Ecef& at(int slot, int column) { return pos_[static_cast<std::size_t>(slot) * ids_.size() + column]; }
    const Ecef& position(int slot, int sat_id) const { return at(slot, index_of(sat_id)); }

    friend bool operator==(const SatelliteTable&, const SatelliteTable&) = default;

private:
    std::vector<int> ids_;
    int num_slots_ = 0;
    std::vector<Ecef> pos_;
};

/// Circular-orbit Walker-delta positions at each slot start, or a passthrough
/// of the position table file.
SatelliteTable propagate(const ConstellationSpec& constellation, const TimeGrid& grid);

/// Mean motion in rad/s for a circular orbit of the given altitude.
double mean_motion_rad_s(double altitude_km);

/// Reads a `slot,sat_id,x_km,y_km,z_km` table; every (slot, sat) pair for
/// slots [0, num_slots) must be present exactly once.
SatelliteTable read_position_table(const std::filesystem::path& path, int num_slots);
void write_position_table(const SatelliteTable& table, std::ostream& out);

/// Angle between the local horizontal plane at `ue` and the ue->sat line,
/// in degrees. Throws DomainError when the UE sits at the Earth's centre or
/// coincides with the satellite.
double elevation_deg(const Ecef& ue, const Ecef& sat);

// +1 when the satellite is moving northward (ascending) at the slot, -1 otherwise.
int motion_direction(const ConstellationSpec& constellation, int sat_id, double t_s);

struct VisibleSat {
    int sat_id = 0;
    double elevation_deg = 0.0;

    friend bool operator==(const VisibleSat&, const VisibleSat&) = default;
};

// Admissible serving satellites per (ue, slot), sorted by satellite id.
class VisibilityMap {
public:
    VisibilityMap() = default;
    VisibilityMap(int num_ues, int num_slots)
        : num_ues_(num_ues), num_slots_(num_slots), sets_(static_cast<std::size_t>(num_ues) * num_slots) {}

    int num_ues() const { return num_ues_; }
    int num_slots() const { return num_slots_; }

    const std::vector<VisibleSat>& at(int ue, int slot) const { return sets_[index(ue, slot)]; }
    std::vector<VisibleSat>& at(int ue, int slot) { return sets_[index(ue, slot)]; }

    // Position of sat_id inside at(ue, slot), or -1.
    int find(int ue, int slot, int sat_id) const;
    bool contains(int ue, int slot, int sat_id) const { return find(ue, slot, sat_id) >= 0; }

    // Every satellite id that appears anywhere, ascending.
    std::vector<int> candidate_satellites() const;

    // First (ue, slot) with an empty set, if any.
    std::optional<std::pair<int, int>> first_gap() const;

    friend bool operator==(const VisibilityMap&, const VisibilityMap&) = default;

private:
    std::size_t index(int ue, int slot) const { return static_cast<std::size_t>(ue) * num_slots_ + slot; }

    int num_ues_ = 0;
    int num_slots_ = 0;
    std::vector<std::vector<VisibleSat>> sets_;
};

std::vector<Ecef> ue_positions(const Scenario& scenario);

/// Satellites with elevation >= min_elevation_deg at each slot start.
/// With require_coverage, throws InfeasibleError on the first empty set.
VisibilityMap build_visibility(const Scenario& scenario, const SatelliteTable& sats, bool require_coverage = true);

void write_visibility_csv(const VisibilityMap& vis, std::ostream& out);

}  // namespace preho
