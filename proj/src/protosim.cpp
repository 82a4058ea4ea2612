#include "preho/protosim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "preho/errors.hpp"

namespace preho {

std::string_view to_string(Mechanism m) {
    switch (m) {
        case Mechanism::bho: return "bho";
        case Mechanism::bho_gs: return "bho_gs";
        case Mechanism::bho_a: return "bho_a";
        case Mechanism::preho: return "preho";
    }
    return "?";
}

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::preparation: return "preparation";
        case Phase::execution: return "execution";
        case Phase::completion: return "completion";
    }
    return "?";
}

Mechanism parse_mechanism(std::string_view name) {
    for (auto m : kAllMechanisms)
        if (to_string(m) == name) return m;
    if (name == "bho-gs") return Mechanism::bho_gs;
    if (name == "bho-a") return Mechanism::bho_a;
    throw ValidationError("mechanisms", "unknown mechanism '" + std::string(name) + "'");
}

HandoverTimeline build_timeline(Mechanism mechanism, const LegDelays& legs, const LatencyParams& params) {
    HandoverTimeline tl;
    tl.mechanism = mechanism;
    const double p = params.proc_ms;
    auto add = [&](std::string name, std::string from, std::string to, Phase phase, double ms) {
        tl.steps.push_back({std::move(name), std::move(from), std::move(to), phase, ms});
    };
    using enum Phase;

    const bool via_gs = mechanism == Mechanism::bho_gs;
    const double cn = via_gs ? 0.0 : params.gs_cn_ms;
    const std::string core = via_gs ? "GS" : "CN";

    switch (mechanism) {
        case Mechanism::bho:
        case Mechanism::bho_gs:
            add("MeasurementReport", "UE", "src", preparation, legs.ue_src_ms + p);
            add("HandoverRequired", "src", core, preparation, legs.src_gs_ms + cn + p);
            add("HandoverRequest", core, "tgt", preparation, cn + legs.tgt_gs_ms + p);
            add("HandoverRequestAck", "tgt", core, preparation, legs.tgt_gs_ms + cn + p);
            add("HandoverCommand", core, "src", preparation, cn + legs.src_gs_ms + p);
            add("RRCReconfiguration", "src", "UE", preparation, legs.ue_src_ms + p);
            break;
        case Mechanism::bho_a: {
            const double xn = legs.xn_hops * params.isl_hop_ms + p;
            add("MeasurementReport", "UE", "src", preparation, legs.ue_src_ms + p);
            add("XnHandoverRequest", "src", "tgt", preparation, xn);
            add("XnHandoverRequestAck", "tgt", "src", preparation, xn);
            add("RRCReconfiguration", "src", "UE", preparation, legs.ue_src_ms + p);
            break;
        }
        case Mechanism::preho:
            // Conditions and the uplink grant were delivered with the plan.
            break;
    }

    add("DownlinkSync", "UE", "tgt", execution, params.ue_sync_ms);
    if (mechanism != Mechanism::preho) add("RandomAccess", "UE", "tgt", execution, params.rach_ms + 2.0 * legs.ue_tgt_ms);
    add("RRCReconfigurationComplete", "UE", "tgt", execution, legs.ue_tgt_ms + p);

    if (mechanism == Mechanism::bho || mechanism == Mechanism::bho_gs) {
        add("PathSwitchRequest", "tgt", core, completion, legs.tgt_gs_ms + cn + p);
        add("PathSwitchRequestAck", core, "tgt", completion, cn + legs.tgt_gs_ms + p);
        add("UEContextRelease", core, "src", completion, cn + legs.src_gs_ms + p);
        add("UEContextReleaseComplete", "src", core, completion, legs.src_gs_ms + cn + p);
    }

    for (const auto& s : tl.steps) {
        if (s.phase == preparation) tl.prep_ms += s.delay_ms;
        if (s.phase == execution) tl.hit_ms += s.delay_ms;
        if (s.phase == completion) tl.dst_ms += s.delay_ms;
    }
    tl.total_ms = tl.hit_ms + tl.dst_ms;
    return tl;
}

int xn_hops(int src_sat, int tgt_sat, const ConstellationSpec& constellation, XnStrategy strategy,
            int opposite_direction_penalty_hops, double t_s) {
    if (constellation.kind != ConstellationKind::walker_delta)
        throw DomainError("xn_hops needs a Walker constellation; position tables have no grid structure");
    const auto& w = constellation.walker;
    if (src_sat < 0 || tgt_sat < 0 || src_sat >= w.num_sats() || tgt_sat >= w.num_sats())
        throw DomainError("satellite id outside the constellation");
    const int P = w.num_planes, S = w.sats_per_plane;
    const int dp = std::abs(src_sat / S - tgt_sat / S);
    const int ds = std::abs(src_sat % S - tgt_sat % S);
    int hops = std::min(dp, P - dp) + std::min(ds, S - ds);
    if (strategy == XnStrategy::all_direction && src_sat != tgt_sat &&
        motion_direction(constellation, src_sat, t_s) != motion_direction(constellation, tgt_sat, t_s))
        hops += opposite_direction_penalty_hops;
    return hops;
}

LatencyContext LatencyContext::from(const Scenario& scenario, SatelliteTable sats) {
    LatencyContext ctx;
    ctx.scenario = scenario;
    ctx.sats = std::move(sats);
    ctx.ues = ue_positions(scenario);
    for (const auto& g : scenario.latency.gs_positions) ctx.ground_stations.push_back(to_ecef(g));
    return ctx;
}

double LatencyContext::nearest_gs_ms(int sat_id, int slot) const {
    const Ecef& s = sats.position(slot, sat_id);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : ground_stations) {
        if (elevation_deg(g, s) < scenario.latency.gs_min_elevation_deg) continue;
        best = std::min(best, distance_km(g, s));
    }
    if (!std::isfinite(best))
        throw InfeasibleError(-1, slot, "no ground station visible from satellite " + std::to_string(sat_id));
    return best / kSpeedOfLightKmPerS * 1000.0;
}

HandoverTimeline simulate_handover(Mechanism mechanism, int ue, int src_sat, int tgt_sat, int slot,
                                   const LatencyContext& ctx) {
    if (ue < 0 || ue >= static_cast<int>(ctx.ues.size())) throw Error("ue index out of range");
    LegDelays legs;
    legs.ue_src_ms = propagation_ms(ctx.ues[ue], ctx.sats.position(slot, src_sat));
    legs.ue_tgt_ms = propagation_ms(ctx.ues[ue], ctx.sats.position(slot, tgt_sat));
    const auto& lp = ctx.scenario.latency;
    if (mechanism == Mechanism::bho || mechanism == Mechanism::bho_gs) {
        legs.src_gs_ms = ctx.nearest_gs_ms(src_sat, slot);
        legs.tgt_gs_ms = ctx.nearest_gs_ms(tgt_sat, slot);
    }
    if (mechanism == Mechanism::bho_a)
        legs.xn_hops = xn_hops(src_sat, tgt_sat, ctx.scenario.constellation, lp.xn_strategy,
                               lp.opposite_direction_penalty_hops, ctx.scenario.time_grid.slot_offset_s(slot));
    return build_timeline(mechanism, legs, lp);
}

namespace {

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double LatencyDistribution::mean_hit() const { return mean_of(hits); }
double LatencyDistribution::mean_dst() const { return mean_of(dsts); }

double LatencyDistribution::quantile(double q) const {
    if (totals.empty()) return std::numeric_limits<double>::quiet_NaN();
    const auto n = static_cast<double>(totals.size());
    const auto k = static_cast<std::size_t>(std::max(1.0, std::ceil(q * n)));
    return totals[std::min(k, totals.size()) - 1];
}

LatencyDistribution latency_cdf(const AssociationPlan& plan, Mechanism mechanism, const LatencyContext& ctx) {
    LatencyDistribution dist;
    dist.mechanism = mechanism;
    for (int i = 0; i < plan.num_ues(); ++i) {
        for (int t = 1; t < plan.num_slots(); ++t) {
            const int src = plan.serving[i][t - 1], tgt = plan.serving[i][t];
            if (src == tgt) continue;
            const auto tl = simulate_handover(mechanism, i, src, tgt, t, ctx);
            dist.totals.push_back(tl.total_ms);
            dist.hits.push_back(tl.hit_ms);
            dist.dsts.push_back(tl.dst_ms);
        }
    }
    dist.empty = dist.totals.empty();
    dist.mean = mean_of(dist.totals);
    std::sort(dist.totals.begin(), dist.totals.end());
    return dist;
}

void write_latency_csv(const LatencyDistribution& dist, std::ostream& out) {
    out << "mechanism,total_ms\n";
    char buf[64];
    for (double v : dist.totals) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << to_string(dist.mechanism) << ',' << buf << '\n';
    }
}

}  // namespace preho
