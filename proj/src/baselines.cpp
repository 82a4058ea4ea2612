#include "preho/baselines.hpp"

#include "preho/errors.hpp"

namespace preho {

namespace {

void require_coverage(const Problem& problem) {
    if (auto gap = problem.vis.first_gap()) throw InfeasibleError(gap->first, gap->second, "no admissible satellite");
}

// Highest SINR in the set; ties to the lowest id (sets are id-sorted).
int max_sinr_sat(const Problem& problem, int ue, int slot) {
    const auto& sats = problem.vis.at(ue, slot);
    const auto& links = problem.rates.at(ue, slot);
    std::size_t best = 0;
    for (std::size_t k = 1; k < sats.size(); ++k)
        if (links[k].sinr_linear > links[best].sinr_linear) best = k;
    return sats[best].sat_id;
}

}  // namespace

int remaining_visibility(const VisibilityMap& vis, int ue, int slot, int sat_id) {
    int n = 0;
    for (int t = slot; t < vis.num_slots() && vis.contains(ue, t, sat_id); ++t) ++n;
    return n;
}

AssociationPlan run_lss(const Problem& problem, double trigger_ratio) {
    if (!(trigger_ratio > 1.0)) throw ValidationError("lss_trigger_ratio", "must be > 1");
    require_coverage(problem);
    AssociationPlan plan(problem.num_ues(), problem.num_slots());
    for (int i = 0; i < problem.num_ues(); ++i) {
        int cur = max_sinr_sat(problem, i, 0);
        plan.serving[i][0] = cur;
        for (int t = 1; t < problem.num_slots(); ++t) {
            const int best = max_sinr_sat(problem, i, t);
            if (!problem.vis.contains(i, t, cur)) {
                cur = best;
            } else if (best != cur && problem.sinr(i, t, best) >= trigger_ratio * problem.sinr(i, t, cur)) {
                cur = best;
            }
            plan.serving[i][t] = cur;
        }
    }
    return plan;
}

AssociationPlan run_lst(const Problem& problem) {
    require_coverage(problem);
    AssociationPlan plan(problem.num_ues(), problem.num_slots());
    for (int i = 0; i < problem.num_ues(); ++i) {
        int cur = -1;
        for (int t = 0; t < problem.num_slots(); ++t) {
            if (cur < 0 || !problem.vis.contains(i, t, cur)) {
                int best_len = -1;
                for (const auto& v : problem.vis.at(i, t)) {
                    const int len = remaining_visibility(problem.vis, i, t, v.sat_id);
                    if (len > best_len) {
                        best_len = len;
                        cur = v.sat_id;
                    }
                }
            }
            plan.serving[i][t] = cur;
        }
    }
    return plan;
}

AssociationPlan run_greedy(const Problem& problem) {
    require_coverage(problem);
    const int N = problem.num_ues();
    AssociationPlan plan(N, problem.num_slots());
    for (int t = 0; t < problem.num_slots(); ++t) {
        // Provisional choices: keep the previous server if still admissible,
        // otherwise the strongest satellite. Each UE then re-decides in turn.
        std::vector<int> choice(N);
        for (int i = 0; i < N; ++i) {
            const int prev = t > 0 ? plan.serving[i][t - 1] : -1;
            choice[i] = prev >= 0 && problem.vis.contains(i, t, prev) ? prev : max_sinr_sat(problem, i, t);
        }
        std::map<int, DmaxMap> loads;
        for (int i = 0; i < N; ++i) loads[choice[i]][i] = problem.dmax(i, t, choice[i]);

        for (int i = 0; i < N; ++i) {
            const int home = choice[i];
            const int prev = t > 0 ? plan.serving[i][t - 1] : -1;
            DmaxMap without = loads[home];
            without.erase(i);
            const double home_loss = problem.subproblem_optimum(without) - problem.subproblem_optimum(loads[home]);

            int best = home;
            double best_cost = 0.0;
            bool first = true;
            for (const auto& v : problem.vis.at(i, t)) {
                const int j = v.sat_id;
                double delta_u = 0.0;
                if (j != home) {
                    DmaxMap with;
                    if (auto it = loads.find(j); it != loads.end()) with = it->second;
                    const double before = problem.subproblem_optimum(with);
                    with[i] = problem.dmax(i, t, j);
                    delta_u = home_loss + problem.subproblem_optimum(with) - before;
                }
                const double cost = (t > 0 && j != prev ? 1.0 : 0.0) - problem.gamma * delta_u;
                if (first || cost < best_cost) {
                    best_cost = cost;
                    best = j;
                    first = false;
                }
            }
            if (best != home) {
                loads[home].erase(i);
                loads[best][i] = problem.dmax(i, t, best);
                choice[i] = best;
            }
            plan.serving[i][t] = best;
        }
    }
    return plan;
}

AssociationPlan run_baseline(const BaselineKind& kind, const Problem& problem) {
    switch (kind.kind) {
        case Baseline::lss: return run_lss(problem, kind.lss_trigger_ratio);
        case Baseline::lst: return run_lst(problem);
        case Baseline::greedy: return run_greedy(problem);
    }
    throw Error("unknown baseline");
}

}  // namespace preho
