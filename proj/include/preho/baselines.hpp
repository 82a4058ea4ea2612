#pragma once

#include "preho/problem.hpp"

namespace preho {

enum class Baseline { lss, lst, greedy };

struct BaselineKind {
    Baseline kind = Baseline::lst;
    // LSS switches when a visible satellite's linear SINR reaches this
    // multiple of the serving one.
    double lss_trigger_ratio = 1.5;
};

AssociationPlan run_baseline(const BaselineKind& kind, const Problem& problem);

AssociationPlan run_lss(const Problem& problem, double trigger_ratio = 1.5);
AssociationPlan run_lst(const Problem& problem);
AssociationPlan run_greedy(const Problem& problem);

/// Contiguous slots, starting at `slot`, during which sat_id stays admissible for ue.
int remaining_visibility(const VisibilityMap& vis, int ue, int slot, int sat_id);

}  // namespace preho
