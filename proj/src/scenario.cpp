#include "preho/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "preho/errors.hpp"
#include "preho/rng.hpp"

namespace preho {

namespace {

using json = nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!ok.count(it.key())) throw ValidationError(join(path, it.key()), "unknown key");
    }
}

const json& require_object(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ValidationError(join(path, key), "missing");
    const json& v = obj.at(key);
    if (!v.is_object()) throw ValidationError(join(path, key), "expected an object");
    return v;
}

template <class T>
T read(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ValidationError(join(path, key), "missing");
    try {
        const json& v = obj.at(key);
        if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) throw ValidationError(join(path, key), "expected a number");
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw ValidationError(join(path, key), "expected a boolean");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) throw ValidationError(join(path, key), "expected an integer");
        }
        return v.get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(join(path, key), e.what());
    }
}

template <class T>
T read_or(const json& obj, const std::string& key, const std::string& path, T fallback) {
    return obj.contains(key) ? read<T>(obj, key, path) : fallback;
}

Geodetic read_geodetic(const json& v, const std::string& path) {
    if (v.is_array()) {
        if (v.size() < 2 || v.size() > 3) throw ValidationError(path, "expected [lat_deg, lon_deg(, alt_m)]");
        for (const auto& x : v)
            if (!x.is_number()) throw ValidationError(path, "expected numbers");
        return {v[0].get<double>(), v[1].get<double>(), v.size() == 3 ? v[2].get<double>() : 0.0};
    }
    if (!v.is_object()) throw ValidationError(path, "expected a position");
    reject_unknown(v, path, {"lat_deg", "lon_deg", "alt_m"});
    return {read<double>(v, "lat_deg", path), read<double>(v, "lon_deg", path), read_or<double>(v, "alt_m", path, 0.0)};
}

json geodetic_json(const Geodetic& g) { return json::array({g.lat_deg, g.lon_deg, g.alt_m}); }

BoundingBox read_bbox(const json& v, const std::string& path) {
    reject_unknown(v, path, {"lat_min", "lat_max", "lon_min", "lon_max"});
    return {read<double>(v, "lat_min", path), read<double>(v, "lat_max", path), read<double>(v, "lon_min", path),
            read<double>(v, "lon_max", path)};
}

json bbox_json(const BoundingBox& b) {
    return {{"lat_min", b.lat_min}, {"lat_max", b.lat_max}, {"lon_min", b.lon_min}, {"lon_max", b.lon_max}};
}

void check_bbox(const BoundingBox& b, const std::string& path) {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(b.lat_min) || !finite(b.lat_max) || !finite(b.lon_min) || !finite(b.lon_max))
        throw ValidationError(path, "non-finite bound");
    if (b.lat_min > b.lat_max || b.lon_min > b.lon_max) throw ValidationError(path, "degenerate box (min > max)");
    if (b.lat_min < -90.0 || b.lat_max > 90.0) throw ValidationError(path, "latitude outside [-90, 90]");
    if (b.lon_min < -180.0 || b.lon_max > 180.0) throw ValidationError(path, "longitude outside [-180, 180]");
}

std::string_view kind_name(ConstellationKind k) {
    return k == ConstellationKind::walker_delta ? "walker_delta" : "position_table";
}

std::string_view strategy_name(XnStrategy s) {
    return s == XnStrategy::similar_direction ? "similar_direction" : "all_direction";
}

}  // namespace

UePopulation synthesize_ues(int count, const BoundingBox& bbox, std::uint64_t seed, double alt_m) {
    if (count < 1) throw ValidationError("ues.count", "must be >= 1");
    check_bbox(bbox, "ues.bbox");
    UePopulation pop;
    pop.seed = seed;
    pop.bbox = bbox;
    pop.alt_m = alt_m;
    SplitMix64 rng(seed);
    pop.positions.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double lat = rng.uniform(bbox.lat_min, bbox.lat_max);
        const double lon = rng.uniform(bbox.lon_min, bbox.lon_max);
        pop.positions.push_back({lat, lon, alt_m});
    }
    return pop;
}

void validate(const Scenario& s) {
    const auto& g = s.time_grid;
    if (g.num_slots < 1) throw ValidationError("time_grid.num_slots", "must be >= 1");
    if (!(g.slot_duration_s > 0.0) || !std::isfinite(g.slot_duration_s))
        throw ValidationError("time_grid.slot_duration_s", "must be > 0");
    if (!std::isfinite(g.interval_start)) throw ValidationError("time_grid.interval_start", "must be finite");

    const auto& c = s.constellation;
    if (c.kind == ConstellationKind::walker_delta) {
        const auto& w = c.walker;
        if (w.num_planes < 1) throw ValidationError("constellation.num_planes", "must be >= 1");
        if (w.sats_per_plane < 1) throw ValidationError("constellation.sats_per_plane", "must be >= 1");
        if (!(w.altitude_km > 0.0)) throw ValidationError("constellation.altitude_km", "must be > 0");
        if (!(w.inclination_deg >= 0.0 && w.inclination_deg <= 180.0))
            throw ValidationError("constellation.inclination_deg", "must lie in [0, 180]");
        if (w.phasing_factor < 0) throw ValidationError("constellation.phasing_factor", "must be >= 0");
        if (!std::isfinite(w.raan_offset_deg)) throw ValidationError("constellation.raan_offset_deg", "must be finite");
    } else if (c.position_table.empty()) {
        throw ValidationError("constellation.path", "position_table needs a path");
    }

    if (s.ues.positions.empty()) throw ValidationError("ues", "at least one UE is required");
    for (std::size_t i = 0; i < s.ues.positions.size(); ++i) {
        const auto& p = s.ues.positions[i];
        const std::string where = "ues.positions[" + std::to_string(i) + "]";
        if (!(p.lat_deg >= -90.0 && p.lat_deg <= 90.0)) throw ValidationError(where, "latitude outside [-90, 90]");
        if (!(p.lon_deg >= -180.0 && p.lon_deg <= 180.0)) throw ValidationError(where, "longitude outside [-180, 180]");
        if (!std::isfinite(p.alt_m)) throw ValidationError(where, "altitude must be finite");
    }

    if (!(s.min_elevation_deg > 0.0 && s.min_elevation_deg < 90.0))
        throw ValidationError("min_elevation_deg", "must lie in (0, 90)");
    if (!(s.gamma > 0.0) || !std::isfinite(s.gamma)) throw ValidationError("gamma", "must be > 0");

    const auto& ch = s.channel;
    if (!(ch.carrier_hz > 0.0)) throw ValidationError("channel.carrier_hz", "must be > 0");
    if (!(ch.bandwidth_max_hz > 0.0)) throw ValidationError("channel.bandwidth_max_hz", "must be > 0");
    for (const auto& [sat, bw] : ch.bandwidth_override_hz)
        if (!(bw > 0.0)) throw ValidationError("channel.bandwidth_override_hz." + std::to_string(sat), "must be > 0");
    if (!(ch.shadowing_sigma_db >= 0.0)) throw ValidationError("channel.shadowing_sigma_db", "must be >= 0");

    validate(s.utility);

    const auto& l = s.latency;
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError(std::string("latency.") + name, "must be >= 0");
    };
    nonneg(l.gs_cn_ms, "gs_cn_ms");
    nonneg(l.proc_ms, "proc_ms");
    nonneg(l.rach_ms, "rach_ms");
    nonneg(l.isl_hop_ms, "isl_hop_ms");
    nonneg(l.ue_sync_ms, "ue_sync_ms");
    if (l.opposite_direction_penalty_hops < 0)
        throw ValidationError("latency.opposite_direction_penalty_hops", "must be >= 0");
    if (!(l.gs_min_elevation_deg >= 0.0 && l.gs_min_elevation_deg < 90.0))
        throw ValidationError("latency.gs_min_elevation_deg", "must lie in [0, 90)");
}

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ParseError("scenario document must be a JSON object");
    reject_unknown(j, "", {"name", "time_grid", "constellation", "ues", "min_elevation_deg", "channel", "utility",
                           "gamma", "latency"});
    Scenario s;
    s.name = read_or<std::string>(j, "name", "", "");

    const json& tg = require_object(j, "time_grid", "");
    reject_unknown(tg, "time_grid", {"num_slots", "slot_duration_s", "interval_start"});
    s.time_grid.num_slots = read<int>(tg, "num_slots", "time_grid");
    s.time_grid.slot_duration_s = read<double>(tg, "slot_duration_s", "time_grid");
    s.time_grid.interval_start = read_or<double>(tg, "interval_start", "time_grid", 0.0);

    const json& c = require_object(j, "constellation", "");
    const auto kind = read<std::string>(c, "kind", "constellation");
    if (kind == "walker_delta") {
        reject_unknown(c, "constellation", {"kind", "num_planes", "sats_per_plane", "inclination_deg", "altitude_km",
                                            "phasing_factor", "raan_offset_deg", "earth_rotation"});
        auto& w = s.constellation.walker;
        s.constellation.kind = ConstellationKind::walker_delta;
        w.num_planes = read<int>(c, "num_planes", "constellation");
        w.sats_per_plane = read<int>(c, "sats_per_plane", "constellation");
        w.inclination_deg = read<double>(c, "inclination_deg", "constellation");
        w.altitude_km = read<double>(c, "altitude_km", "constellation");
        w.phasing_factor = read_or<int>(c, "phasing_factor", "constellation", 0);
        w.raan_offset_deg = read_or<double>(c, "raan_offset_deg", "constellation", 0.0);
        s.constellation.earth_rotation = read_or<bool>(c, "earth_rotation", "constellation", false);
    } else if (kind == "position_table") {
        reject_unknown(c, "constellation", {"kind", "path"});
        s.constellation.kind = ConstellationKind::position_table;
        std::filesystem::path p = read<std::string>(c, "path", "constellation");
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        s.constellation.position_table = p.lexically_normal().string();
    } else {
        throw ValidationError("constellation.kind", "unknown kind '" + kind + "'");
    }

    const json& u = require_object(j, "ues", "");
    reject_unknown(u, "ues", {"positions", "synthesize", "seed", "bbox", "alt_m"});
    if (u.contains("positions")) {
        const json& arr = u.at("positions");
        if (!arr.is_array()) throw ValidationError("ues.positions", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            s.ues.positions.push_back(read_geodetic(arr[i], "ues.positions[" + std::to_string(i) + "]"));
        s.ues.seed = read_or<std::uint64_t>(u, "seed", "ues", 0);
        s.ues.alt_m = read_or<double>(u, "alt_m", "ues", 0.0);
        if (u.contains("bbox")) s.ues.bbox = read_bbox(require_object(u, "bbox", "ues"), "ues.bbox");
    } else if (u.contains("synthesize")) {
        const json& syn = require_object(u, "synthesize", "ues");
        reject_unknown(syn, "ues.synthesize", {"count", "bbox", "seed", "alt_m"});
        const int count = read<int>(syn, "count", "ues.synthesize");
        const auto bbox = read_bbox(require_object(syn, "bbox", "ues.synthesize"), "ues.synthesize.bbox");
        s.ues = synthesize_ues(count, bbox, read_or<std::uint64_t>(syn, "seed", "ues.synthesize", 0),
                               read_or<double>(syn, "alt_m", "ues.synthesize", 0.0));
    } else {
        throw ValidationError("ues", "expected 'positions' or 'synthesize'");
    }

    s.min_elevation_deg = read_or(j, "min_elevation_deg", "", s.min_elevation_deg);
    s.gamma = read_or(j, "gamma", "", s.gamma);

    if (j.contains("channel")) {
        const json& ch = require_object(j, "channel", "");
        reject_unknown(ch, "channel", {"carrier_hz", "sat_eirp_dbw", "ue_gain_over_temp_db_per_k", "bandwidth_max_hz",
                                       "bandwidth_override_hz", "shadowing_sigma_db", "noise_margin_db", "seed"});
        auto& p = s.channel;
        p.carrier_hz = read_or(ch, "carrier_hz", "channel", p.carrier_hz);
        p.sat_eirp_dbw = read_or(ch, "sat_eirp_dbw", "channel", p.sat_eirp_dbw);
        p.ue_gain_over_temp_db_per_k = read_or(ch, "ue_gain_over_temp_db_per_k", "channel", p.ue_gain_over_temp_db_per_k);
        p.bandwidth_max_hz = read_or(ch, "bandwidth_max_hz", "channel", p.bandwidth_max_hz);
        p.shadowing_sigma_db = read_or(ch, "shadowing_sigma_db", "channel", p.shadowing_sigma_db);
        p.noise_margin_db = read_or(ch, "noise_margin_db", "channel", p.noise_margin_db);
        p.seed = read_or(ch, "seed", "channel", p.seed);
        if (ch.contains("bandwidth_override_hz")) {
            const json& o = require_object(ch, "bandwidth_override_hz", "channel");
            for (auto it = o.begin(); it != o.end(); ++it) {
                int sat = 0;
                try {
                    sat = std::stoi(it.key());
                } catch (const std::exception&) {
                    throw ValidationError("channel.bandwidth_override_hz." + it.key(), "key must be a satellite id");
                }
                p.bandwidth_override_hz[sat] = read<double>(o, it.key(), "channel.bandwidth_override_hz");
            }
        }
    }

    if (j.contains("utility")) {
        const json& ut = require_object(j, "utility", "");
        reject_unknown(ut, "utility", {"kind", "alpha"});
        const auto k = read_or<std::string>(ut, "kind", "utility", "alpha_fair");
        if (k != "alpha_fair") throw ValidationError("utility.kind", "only 'alpha_fair' is supported");
        s.utility.alpha = read_or(ut, "alpha", "utility", s.utility.alpha);
    }

    if (j.contains("latency")) {
        const json& l = require_object(j, "latency", "");
        reject_unknown(l, "latency", {"gs_cn_ms", "proc_ms", "rach_ms", "isl_hop_ms", "ue_sync_ms",
                                      "opposite_direction_penalty_hops", "gs_min_elevation_deg", "gs_positions",
                                      "xn_strategy"});
        auto& p = s.latency;
        p.gs_cn_ms = read_or(l, "gs_cn_ms", "latency", p.gs_cn_ms);
        p.proc_ms = read_or(l, "proc_ms", "latency", p.proc_ms);
        p.rach_ms = read_or(l, "rach_ms", "latency", p.rach_ms);
        p.isl_hop_ms = read_or(l, "isl_hop_ms", "latency", p.isl_hop_ms);
        p.ue_sync_ms = read_or(l, "ue_sync_ms", "latency", p.ue_sync_ms);
        p.opposite_direction_penalty_hops =
            read_or(l, "opposite_direction_penalty_hops", "latency", p.opposite_direction_penalty_hops);
        p.gs_min_elevation_deg = read_or(l, "gs_min_elevation_deg", "latency", p.gs_min_elevation_deg);
        if (l.contains("gs_positions")) {
            const json& arr = l.at("gs_positions");
            if (!arr.is_array()) throw ValidationError("latency.gs_positions", "expected an array");
            p.gs_positions.clear();
            for (std::size_t i = 0; i < arr.size(); ++i)
                p.gs_positions.push_back(read_geodetic(arr[i], "latency.gs_positions[" + std::to_string(i) + "]"));
        }
        if (l.contains("xn_strategy")) {
            const auto st = read<std::string>(l, "xn_strategy", "latency");
            if (st == "similar_direction")
                p.xn_strategy = XnStrategy::similar_direction;
            else if (st == "all_direction")
                p.xn_strategy = XnStrategy::all_direction;
            else
                throw ValidationError("latency.xn_strategy", "unknown strategy '" + st + "'");
        }
    }

    validate(s);
    return s;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["time_grid"] = {{"num_slots", s.time_grid.num_slots},
                      {"slot_duration_s", s.time_grid.slot_duration_s},
                      {"interval_start", s.time_grid.interval_start}};
    const auto& c = s.constellation;
    if (c.kind == ConstellationKind::walker_delta) {
        const auto& w = c.walker;
        j["constellation"] = {{"kind", kind_name(c.kind)},
                              {"num_planes", w.num_planes},
                              {"sats_per_plane", w.sats_per_plane},
                              {"inclination_deg", w.inclination_deg},
                              {"altitude_km", w.altitude_km},
                              {"phasing_factor", w.phasing_factor},
                              {"raan_offset_deg", w.raan_offset_deg},
                              {"earth_rotation", c.earth_rotation}};
    } else {
        j["constellation"] = {{"kind", kind_name(c.kind)}, {"path", c.position_table}};
    }
    json positions = json::array();
    for (const auto& p : s.ues.positions) positions.push_back(geodetic_json(p));
    j["ues"] = {{"positions", positions}, {"seed", s.ues.seed}, {"alt_m", s.ues.alt_m}};
    if (s.ues.bbox) j["ues"]["bbox"] = bbox_json(*s.ues.bbox);
    j["min_elevation_deg"] = s.min_elevation_deg;
    j["gamma"] = s.gamma;

    const auto& ch = s.channel;
    json overrides = json::object();
    for (const auto& [sat, bw] : ch.bandwidth_override_hz) overrides[std::to_string(sat)] = bw;
    j["channel"] = {{"carrier_hz", ch.carrier_hz},
                    {"sat_eirp_dbw", ch.sat_eirp_dbw},
                    {"ue_gain_over_temp_db_per_k", ch.ue_gain_over_temp_db_per_k},
                    {"bandwidth_max_hz", ch.bandwidth_max_hz},
                    {"bandwidth_override_hz", overrides},
                    {"shadowing_sigma_db", ch.shadowing_sigma_db},
                    {"noise_margin_db", ch.noise_margin_db},
                    {"seed", ch.seed}};
    j["utility"] = {{"kind", "alpha_fair"}, {"alpha", s.utility.alpha}};

    const auto& l = s.latency;
    json gs = json::array();
    for (const auto& p : l.gs_positions) gs.push_back(geodetic_json(p));
    j["latency"] = {{"gs_cn_ms", l.gs_cn_ms},
                    {"proc_ms", l.proc_ms},
                    {"rach_ms", l.rach_ms},
                    {"isl_hop_ms", l.isl_hop_ms},
                    {"ue_sync_ms", l.ue_sync_ms},
                    {"opposite_direction_penalty_hops", l.opposite_direction_penalty_hops},
                    {"gs_min_elevation_deg", l.gs_min_elevation_deg},
                    {"gs_positions", gs},
                    {"xn_strategy", strategy_name(l.xn_strategy)}};
    return j;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed scenario '" + path.string() + "': " + e.what());
    }
    return scenario_from_json(j, std::filesystem::absolute(path).parent_path());
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << scenario_to_json(s).dump(2) << '\n';
}

std::string scenario_digest(const Scenario& s) {
    const std::string text = scenario_to_json(s).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace preho
