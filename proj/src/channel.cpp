#include "preho/channel.hpp"

#include <cmath>
#include <ostream>

#include "preho/errors.hpp"
#include "preho/rng.hpp"

namespace preho {

namespace {
const double kBoltzmannDbwPerKHz = 10.0 * std::log10(1.380649e-23);
}

double free_space_path_loss_db(double distance_km, double carrier_hz) {
    const double d_m = distance_km * 1000.0;
    const double c_m_s = kSpeedOfLightKmPerS * 1000.0;
    return 20.0 * std::log10(4.0 * M_PI * d_m * carrier_hz / c_m_s);
}

double FreeSpaceLinkBudget::shadowing_db(int ue, int sat_id, int slot) const {
    if (params_.shadowing_sigma_db == 0.0) return 0.0;
    SplitMix64 g(mix_seed({params_.seed, static_cast<std::uint64_t>(ue), static_cast<std::uint64_t>(sat_id),
                           static_cast<std::uint64_t>(slot)}));
    return params_.shadowing_sigma_db * g.standard_normal();
}

double FreeSpaceLinkBudget::sinr_db(const LinkContext& link) const {
    const double fspl = free_space_path_loss_db(distance_km(link.ue_pos, link.sat_pos), params_.carrier_hz);
    const double noise_bw_db = 10.0 * std::log10(params_.bandwidth_for(link.sat_id));
    return params_.sat_eirp_dbw + params_.ue_gain_over_temp_db_per_k - fspl - kBoltzmannDbwPerKHz - noise_bw_db -
           params_.noise_margin_db + shadowing_db(link.ue, link.sat_id, link.slot);
}

double FreeSpaceLinkBudget::sinr_linear(const LinkContext& link) const { return std::pow(10.0, sinr_db(link) / 10.0); }

double dmax_mb(double sinr_linear, double bandwidth_hz, double slot_duration_s) {
    return slot_duration_s * bandwidth_hz * std::log2(1.0 + sinr_linear) / 1e6;
}

RateMatrix compute_rates(const Scenario& scenario, const SatelliteTable& sats, const VisibilityMap& vis,
                         const SinrModel& model) {
    const auto ues = ue_positions(scenario);
    RateMatrix rates(vis.num_ues(), vis.num_slots());
    for (int i = 0; i < vis.num_ues(); ++i) {
        for (int t = 0; t < vis.num_slots(); ++t) {
            auto& out = rates.at(i, t);
            for (const auto& v : vis.at(i, t)) {
                LinkContext link{i, v.sat_id, t, ues[i], sats.position(t, v.sat_id), v.elevation_deg};
                const double sinr = model.sinr_linear(link);
                if (!(sinr > 0.0) || !std::isfinite(sinr)) throw Error("SINR model returned a non-positive value");
                const double bw = scenario.channel.bandwidth_for(v.sat_id);
                out.push_back({sinr, dmax_mb(sinr, bw, scenario.time_grid.slot_duration_s)});
            }
        }
    }
    return rates;
}

RateMatrix compute_rates(const Scenario& scenario, const SatelliteTable& sats, const VisibilityMap& vis) {
    return compute_rates(scenario, sats, vis, FreeSpaceLinkBudget(scenario.channel));
}

void write_rates_csv(const VisibilityMap& vis, const RateMatrix& rates, std::ostream& out) {
    out << "ue,slot,sat_id,sinr_db,dmax_mb\n";
    char buf[128];
    for (int i = 0; i < vis.num_ues(); ++i)
        for (int t = 0; t < vis.num_slots(); ++t) {
            const auto& v = vis.at(i, t);
            const auto& r = rates.at(i, t);
            for (std::size_t k = 0; k < v.size(); ++k) {
                std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g,%.17g\n", i, t, v[k].sat_id,
                              10.0 * std::log10(r[k].sinr_linear), r[k].dmax_mb);
                out << buf;
            }
        }
}

}  // namespace preho
