#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "preho/geodesy.hpp"

namespace preho {

// Link-budget inputs. Defaults put zenith SINR at ~10 dB for a 550 km shell.
struct ChannelParams {
    double carrier_hz = 2.0e9;
    double sat_eirp_dbw = 40.0;
    double ue_gain_over_temp_db_per_k = -25.0;
    double bandwidth_max_hz = 20.0e6;
    std::map<int, double> bandwidth_override_hz;  // per satellite id
    double shadowing_sigma_db = 0.0;
    double noise_margin_db = 7.31;
    std::uint64_t seed = 0;

    double bandwidth_for(int sat_id) const {
        auto it = bandwidth_override_hz.find(sat_id);
        return it == bandwidth_override_hz.end() ? bandwidth_max_hz : it->second;
    }

    friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

enum class XnStrategy { similar_direction, all_direction };

// Signaling-latency constants. All delays in milliseconds.
struct LatencyParams {
    double gs_cn_ms = 47.0;     // ground station <-> core network, one way
    double proc_ms = 2.0;       // per received message
    double rach_ms = 21.0;      // random-access procedure
    double isl_hop_ms = 6.0;    // per inter-satellite hop
    double ue_sync_ms = 18.0;   // UE detach, downlink sync and reconfiguration
    int opposite_direction_penalty_hops = 10;
    double gs_min_elevation_deg = 0.0;
    std::vector<Geodetic> gs_positions = default_ground_stations();
    XnStrategy xn_strategy = XnStrategy::similar_direction;

    static std::vector<Geodetic> default_ground_stations() {
        std::vector<Geodetic> out;
        for (int k = 0; k < 8; ++k) {
            out.push_back({k % 2 == 0 ? 40.0 : -40.0, -157.5 + 45.0 * k, 0.0});
        }
        return out;
    }

    friend bool operator==(const LatencyParams&, const LatencyParams&) = default;
};

}  // namespace preho
