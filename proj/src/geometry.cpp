#include "preho/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "preho/errors.hpp"

namespace preho {

SatelliteTable::SatelliteTable(std::vector<int> sat_ids, int num_slots)
    : ids_(std::move(sat_ids)), num_slots_(num_slots), pos_(static_cast<std::size_t>(num_slots) * ids_.size()) {
    if (!std::is_sorted(ids_.begin(), ids_.end()) || std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
        throw Error("satellite ids must be strictly ascending");
}

int SatelliteTable::index_of(int sat_id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), sat_id);
    if (it == ids_.end() || *it != sat_id) throw Error("unknown satellite id " + std::to_string(sat_id));
    return static_cast<int>(it - ids_.begin());
}

double mean_motion_rad_s(double altitude_km) {
    const double a = kEarthRadiusKm + altitude_km;
    return std::sqrt(kEarthMuKm3PerS2 / (a * a * a));
}

namespace {

struct WalkerSlot {
    double raan;  // rad
    double u0;    // argument of latitude at t = 0, rad
};

WalkerSlot walker_slot(const WalkerParams& w, int sat_id) {
    const int plane = sat_id / w.sats_per_plane;
    const int idx = sat_id % w.sats_per_plane;
    const double two_pi = 2.0 * M_PI;
    const double raan = deg2rad(w.raan_offset_deg) + two_pi * plane / w.num_planes;
    const double u0 = two_pi * idx / w.sats_per_plane + two_pi * w.phasing_factor * plane / w.num_sats();
    return {raan, u0};
}

Ecef walker_position(const ConstellationSpec& c, int sat_id, double t_s) {
    const auto& w = c.walker;
    const WalkerSlot ws = walker_slot(w, sat_id);
    const double r = kEarthRadiusKm + w.altitude_km;
    const double u = ws.u0 + mean_motion_rad_s(w.altitude_km) * t_s;
    const double inc = deg2rad(w.inclination_deg);
    const double cu = std::cos(u), su = std::sin(u);
    const double co = std::cos(ws.raan), so = std::sin(ws.raan);
    const double ci = std::cos(inc), si = std::sin(inc);
    Ecef p{r * (co * cu - so * su * ci), r * (so * cu + co * su * ci), r * su * si};
    if (c.earth_rotation) {
        const double th = kEarthRotationRadPerS * t_s;
        const double ct = std::cos(th), st = std::sin(th);
        p = {ct * p.x_km + st * p.y_km, -st * p.x_km + ct * p.y_km, p.z_km};
    }
    return p;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

int motion_direction(const ConstellationSpec& c, int sat_id, double t_s) {
    if (c.kind != ConstellationKind::walker_delta) throw Error("motion direction needs a walker_delta constellation");
    const WalkerSlot ws = walker_slot(c.walker, sat_id);
    const double u = ws.u0 + mean_motion_rad_s(c.walker.altitude_km) * t_s;
    return std::cos(u) >= 0.0 ? +1 : -1;
}

SatelliteTable read_position_table(const std::filesystem::path& path, int num_slots) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open position table '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("position table is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "slot,sat_id,x_km,y_km,z_km") throw ParseError("position table header must be 'slot,sat_id,x_km,y_km,z_km'");

    std::map<std::pair<int, int>, Ecef> rows;
    std::set<int> ids;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (cells.size() != 5) throw ParseError("position table line " + std::to_string(lineno) + ": expected 5 fields");
        try {
            const int slot = std::stoi(cells[0]);
            const int sat = std::stoi(cells[1]);
            if (slot < 0 || slot >= num_slots)
                throw ParseError("position table line " + std::to_string(lineno) + ": slot out of range");
            Ecef p{std::stod(cells[2]), std::stod(cells[3]), std::stod(cells[4])};
            if (!rows.emplace(std::pair{slot, sat}, p).second)
                throw ParseError("position table line " + std::to_string(lineno) + ": duplicate (slot, sat_id)");
            ids.insert(sat);
        } catch (const std::invalid_argument&) {
            throw ParseError("position table line " + std::to_string(lineno) + ": not a number");
        } catch (const std::out_of_range&) {
            throw ParseError("position table line " + std::to_string(lineno) + ": number out of range");
        }
    }
    if (ids.empty()) throw ParseError("position table has no rows");

    SatelliteTable table(std::vector<int>(ids.begin(), ids.end()), num_slots);
    for (int t = 0; t < num_slots; ++t) {
        for (int k = 0; k < table.num_sats(); ++k) {
            const int sat = table.sat_ids()[k];
            auto it = rows.find({t, sat});
            if (it == rows.end())
                throw ParseError("position table is missing slot " + std::to_string(t) + ", sat " + std::to_string(sat));
            table.at(t, k) = it->second;
        }
    }
    return table;
}

void write_position_table(const SatelliteTable& table, std::ostream& out) {
    out << "slot,sat_id,x_km,y_km,z_km\n";
    char buf[160];
    for (int t = 0; t < table.num_slots(); ++t) {
        for (int k = 0; k < table.num_sats(); ++k) {
            const auto& p = table.at(t, k);
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g\n", t, table.sat_ids()[k], p.x_km, p.y_km, p.z_km);
            out << buf;
        }
    }
}

SatelliteTable propagate(const ConstellationSpec& c, const TimeGrid& grid) {
    if (c.kind == ConstellationKind::position_table) return read_position_table(c.position_table, grid.num_slots);

    const int n = c.walker.num_sats();
    std::vector<int> ids(n);
    for (int k = 0; k < n; ++k) ids[k] = k;
    SatelliteTable table(std::move(ids), grid.num_slots);
    for (int t = 0; t < grid.num_slots; ++t) {
        const double ts = grid.slot_offset_s(t);
        for (int k = 0; k < n; ++k) table.at(t, k) = walker_position(c, k, ts);
    }
    return table;
}

double elevation_deg(const Ecef& ue, const Ecef& sat) {
    const double r = ue.norm();
    if (r < 1e-9) throw DomainError("elevation undefined for a UE at the Earth's centre");
    const Ecef d = sat - ue;
    const double range = d.norm();
    if (range < 1e-12) throw DomainError("elevation undefined for coincident UE and satellite");
    const double s = std::clamp(dot(ue, d) / (r * range), -1.0, 1.0);
    return rad2deg(std::asin(s));
}

int VisibilityMap::find(int ue, int slot, int sat_id) const {
    const auto& v = at(ue, slot);
    auto it = std::lower_bound(v.begin(), v.end(), sat_id, [](const VisibleSat& a, int id) { return a.sat_id < id; });
    if (it == v.end() || it->sat_id != sat_id) return -1;
    return static_cast<int>(it - v.begin());
}

std::vector<int> VisibilityMap::candidate_satellites() const {
    std::set<int> ids;
    for (const auto& v : sets_)
        for (const auto& s : v) ids.insert(s.sat_id);
    return {ids.begin(), ids.end()};
}

std::optional<std::pair<int, int>> VisibilityMap::first_gap() const {
    for (int i = 0; i < num_ues_; ++i)
        for (int t = 0; t < num_slots_; ++t)
            if (at(i, t).empty()) return std::pair{i, t};
    return std::nullopt;
}

std::vector<Ecef> ue_positions(const Scenario& scenario) {
    std::vector<Ecef> out;
    out.reserve(scenario.ues.size());
    for (const auto& g : scenario.ues.positions) out.push_back(to_ecef(g));
    return out;
}

VisibilityMap build_visibility(const Scenario& scenario, const SatelliteTable& sats, bool require_coverage) {
    const int n = scenario.num_ues();
    const int T = scenario.num_slots();
    if (sats.num_slots() != T) throw Error("satellite table does not match the time grid");
    const auto ues = ue_positions(scenario);
    VisibilityMap vis(n, T);
    for (int i = 0; i < n; ++i) {
        for (int t = 0; t < T; ++t) {
            auto& set = vis.at(i, t);
            for (int k = 0; k < sats.num_sats(); ++k) {
                const double el = elevation_deg(ues[i], sats.at(t, k));
                if (el >= scenario.min_elevation_deg) set.push_back({sats.sat_ids()[k], el});
            }
            if (require_coverage && set.empty())
                throw InfeasibleError(i, t, "no satellite above the minimum elevation");
        }
    }
    return vis;
}

void write_visibility_csv(const VisibilityMap& vis, std::ostream& out) {
    out << "ue,slot,sat_id,elevation_deg\n";
    char buf[96];
    for (int i = 0; i < vis.num_ues(); ++i)
        for (int t = 0; t < vis.num_slots(); ++t)
            for (const auto& s : vis.at(i, t)) {
                std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g\n", i, t, s.sat_id, s.elevation_deg);
                out << buf;
            }
}

}  // namespace preho
