#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "preho/alloc.hpp"
#include "preho/channel.hpp"
#include "preho/geometry.hpp"
#include "preho/scenario.hpp"

namespace preho {

// Everything the association algorithms consume: admissible links, their
// rates, and the objective weights. Built from a Scenario or by hand in tests.
struct Problem {
    VisibilityMap vis;
    RateMatrix rates;
    double gamma = 2e-3;
    UtilitySpec utility;
    AllocMethod method = AllocMethod::closed_form;
    BisectionParams bisection;

    int num_ues() const { return vis.num_ues(); }
    int num_slots() const { return vis.num_slots(); }

    const LinkRate& link(int ue, int slot, int sat_id) const;
    double dmax(int ue, int slot, int sat_id) const { return link(ue, slot, sat_id).dmax_mb; }
    double sinr(int ue, int slot, int sat_id) const { return link(ue, slot, sat_id).sinr_linear; }

    /// Optimal utility of one satellite's subproblem for the given served set.
    double subproblem_optimum(const DmaxMap& served) const;

    static Problem from(const Scenario& scenario, VisibilityMap vis, RateMatrix rates);
};

// Serving satellite per (ue, slot): the single nonzero of x_i.[t].
struct AssociationPlan {
    std::vector<std::vector<int>> serving;

    AssociationPlan() = default;
    AssociationPlan(int num_ues, int num_slots) : serving(num_ues, std::vector<int>(num_slots, -1)) {}

    int num_ues() const { return static_cast<int>(serving.size()); }
    int num_slots() const { return serving.empty() ? 0 : static_cast<int>(serving.front().size()); }

    int handovers(int ue) const;
    long total_handovers() const;

    friend bool operator==(const AssociationPlan&, const AssociationPlan&) = default;
};

/// Throws InfeasibleError on the first (ue, slot) whose server is not admissible.
void check_feasible(const Problem& problem, const AssociationPlan& plan);

/// Served sets of every satellite at one slot: sat -> (ue -> dmax).
std::map<int, DmaxMap> slot_loads(const Problem& problem, const AssociationPlan& plan, int slot);

void write_plan_csv(const AssociationPlan& plan, std::ostream& out);
AssociationPlan read_plan_csv(std::istream& in, int num_ues, int num_slots);

}  // namespace preho
