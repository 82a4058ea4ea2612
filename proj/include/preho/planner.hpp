#pragma once

#include <limits>
#include <vector>

#include "preho/problem.hpp"

namespace preho {

struct PlanObjective {
    long n_ho = 0;
    double u_ue = 0.0;
    double objective = 0.0;  // n_ho - gamma * u_ue
    std::vector<double> per_slot_utility;
    std::vector<int> per_ue_handovers;
};

/// Handover count plus the optimal allocation utility of every (sat, slot)
/// served set. Throws InfeasibleError for inadmissible servers.
PlanObjective evaluate_plan(const Problem& problem, const AssociationPlan& plan);

inline constexpr double kInvisible = -std::numeric_limits<double>::infinity();

// U_i(t, j | base): aggregate utility of all UEs at slot t when `ue` moves to
// candidate j and everyone else keeps the base association. Rows are slots,
// columns follow `candidates` (ascending sat ids); kInvisible marks slots
// where the candidate is not admissible.
struct SlotUtilities {
    std::vector<int> candidates;
    std::vector<std::vector<double>> value;
};

SlotUtilities slot_utilities(const Problem& problem, int ue, const AssociationPlan& base);

/// Sum over slots [t1, t2] (inclusive, 0-based) of U_i(t, sat | base), or
/// kInvisible when sat is inadmissible at any of those slots.
double segment_utility(const Problem& problem, int ue, int sat, int t1, int t2, const AssociationPlan& base);

// C_i over prefixes of the horizon. cost[k] covers slots [0, k); the last
// segment of that prefix starts at slot best_tau[k] and uses best_sat[k].
struct DpTable {
    std::vector<double> cost;
    std::vector<int> best_tau;
    std::vector<int> best_sat;
    std::vector<int> handovers;
    SlotUtilities seg_utils;
};

struct DpOptions {
    // Recompute every segment sum instead of using prefix sums; O(T^3 M).
    bool literal_segment_sums = false;
    // Costs within tie_tolerance * max(1, |cost|) are ties, broken by fewer
    // handovers, then a later last handover, then the lower satellite id.
    double tie_tolerance = 1e-12;
};

struct UeOptimization {
    AssociationPlan plan;
    PlanObjective objective;
    DpTable table;
};

DpTable solve_ue_dp(const Problem& problem, int ue, const AssociationPlan& base, const DpOptions& options = {});

/// Replaces the ue's row of `base` with its DP-optimal serving sequence.
/// The result is never worse than `base`.
UeOptimization optimize_ue(const Problem& problem, int ue, const AssociationPlan& base,
                           const DpOptions& options = {});

struct PlanResult {
    AssociationPlan plan;
    PlanObjective objective;
    std::vector<double> trace;  // trace[0] is the initial objective, then one entry per UE update
};

/// Alternating optimization: optimize_ue for every UE in ascending id order,
/// `passes` times.
PlanResult plan(const Problem& problem, const AssociationPlan& init, int passes = 1, const DpOptions& options = {});

/// Longest-remaining-visibility seed used to start the alternating optimization.
AssociationPlan initial_plan(const Problem& problem);

}  // namespace preho
