#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "preho/geometry.hpp"
#include "preho/problem.hpp"

namespace preho {

enum class Mechanism { bho, bho_gs, bho_a, preho };
enum class Phase { preparation, execution, completion };

std::string_view to_string(Mechanism m);
std::string_view to_string(Phase p);
Mechanism parse_mechanism(std::string_view name);
inline constexpr Mechanism kAllMechanisms[] = {Mechanism::bho, Mechanism::bho_gs, Mechanism::bho_a, Mechanism::preho};

struct TimelineStep {
    std::string name;
    std::string from;
    std::string to;
    Phase phase = Phase::preparation;
    double delay_ms = 0.0;
};

// hit = execution steps, dst = completion steps; preparation runs while the
// UE is still served and is reported separately.
struct HandoverTimeline {
    Mechanism mechanism = Mechanism::bho;
    std::vector<TimelineStep> steps;
    double prep_ms = 0.0;
    double hit_ms = 0.0;
    double dst_ms = 0.0;
    double total_ms = 0.0;
};

// One-way propagation delays of a single handover event.
struct LegDelays {
    double ue_src_ms = 0.0;
    double ue_tgt_ms = 0.0;
    double src_gs_ms = 0.0;  // to the source's nearest visible ground station
    double tgt_gs_ms = 0.0;
    int xn_hops = 0;
};

/// Fixed message sequence of a mechanism with the given leg delays.
HandoverTimeline build_timeline(Mechanism mechanism, const LegDelays& legs, const LatencyParams& params);

/// Manhattan distance on the (plane, in-plane index) torus of a Walker
/// constellation. all_direction adds the penalty for opposite-motion pairs,
/// judged at t_s seconds after interval start.
int xn_hops(int src_sat, int tgt_sat, const ConstellationSpec& constellation, XnStrategy strategy,
            int opposite_direction_penalty_hops = 10, double t_s = 0.0);

// Geometry needed to time handovers for one scenario.
struct LatencyContext {
    Scenario scenario;
    SatelliteTable sats;
    std::vector<Ecef> ues;
    std::vector<Ecef> ground_stations;

    static LatencyContext from(const Scenario& scenario, SatelliteTable sats);

    /// Propagation delay to the ground station with minimum slant range among
    /// those seeing the satellite above gs_min_elevation_deg. Throws
    /// InfeasibleError when none is visible.
    double nearest_gs_ms(int sat_id, int slot) const;
};

HandoverTimeline simulate_handover(Mechanism mechanism, int ue, int src_sat, int tgt_sat, int slot,
                                   const LatencyContext& ctx);

struct LatencyDistribution {
    Mechanism mechanism = Mechanism::bho;
    std::vector<double> totals;  // sorted ascending
    std::vector<double> hits;    // per event, same order as the plan scan
    std::vector<double> dsts;
    double mean = 0.0;           // NaN when empty
    bool empty = true;

    double mean_hit() const;
    double mean_dst() const;
    double quantile(double q) const;  // nearest-rank; NaN when empty
};

/// One timeline per handover event (ue i switching between slots t-1 and t,
/// timed with the geometry at slot t).
LatencyDistribution latency_cdf(const AssociationPlan& plan, Mechanism mechanism, const LatencyContext& ctx);

void write_latency_csv(const LatencyDistribution& dist, std::ostream& out);

}  // namespace preho
