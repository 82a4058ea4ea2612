#include "preho/planner.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "preho/baselines.hpp"
#include "preho/errors.hpp"

namespace preho {

PlanObjective evaluate_plan(const Problem& problem, const AssociationPlan& plan) {
    check_feasible(problem, plan);
    PlanObjective out;
    out.per_ue_handovers.resize(plan.num_ues());
    for (int i = 0; i < plan.num_ues(); ++i) {
        out.per_ue_handovers[i] = plan.handovers(i);
        out.n_ho += out.per_ue_handovers[i];
    }
    out.per_slot_utility.resize(plan.num_slots());
    for (int t = 0; t < plan.num_slots(); ++t) {
        double s = 0.0;
        for (const auto& [sat, served] : slot_loads(problem, plan, t)) s += problem.subproblem_optimum(served);
        out.per_slot_utility[t] = s;
        out.u_ue += s;
    }
    out.objective = static_cast<double>(out.n_ho) - problem.gamma * out.u_ue;
    return out;
}

SlotUtilities slot_utilities(const Problem& problem, int ue, const AssociationPlan& base) {
    check_feasible(problem, base);
    const int T = problem.num_slots();
    SlotUtilities out;
    {
        std::set<int> ids;
        for (int t = 0; t < T; ++t)
            for (const auto& v : problem.vis.at(ue, t)) ids.insert(v.sat_id);
        out.candidates.assign(ids.begin(), ids.end());
    }
    const int C = static_cast<int>(out.candidates.size());
    out.value.assign(T, std::vector<double>(C, kInvisible));

    for (int t = 0; t < T; ++t) {
        auto loads = slot_loads(problem, base, t);
        std::map<int, double> values;
        double total = 0.0;
        for (const auto& [sat, served] : loads) {
            const double v = problem.subproblem_optimum(served);
            values[sat] = v;
            total += v;
        }
        const int home = base.serving[ue][t];
        DmaxMap without = loads[home];
        without.erase(ue);
        const double home_after = problem.subproblem_optimum(without);

        for (const auto& v : problem.vis.at(ue, t)) {
            const int c = static_cast<int>(std::lower_bound(out.candidates.begin(), out.candidates.end(), v.sat_id) -
                                           out.candidates.begin());
            if (v.sat_id == home) {
                out.value[t][c] = total;
                continue;
            }
            DmaxMap with;
            double before = 0.0;
            if (auto it = loads.find(v.sat_id); it != loads.end()) {
                with = it->second;
                before = values[v.sat_id];
            }
            with[ue] = problem.dmax(ue, t, v.sat_id);
            out.value[t][c] = total - values[home] + home_after - before + problem.subproblem_optimum(with);
        }
    }
    return out;
}

double segment_utility(const Problem& problem, int ue, int sat, int t1, int t2, const AssociationPlan& base) {
    if (t1 < 0 || t2 >= problem.num_slots() || t1 > t2) throw Error("segment bounds out of range");
    for (int t = t1; t <= t2; ++t)
        if (!problem.vis.contains(ue, t, sat)) return kInvisible;
    const auto su = slot_utilities(problem, ue, base);
    const int c = static_cast<int>(std::lower_bound(su.candidates.begin(), su.candidates.end(), sat) -
                                   su.candidates.begin());
    double s = 0.0;
    for (int t = t1; t <= t2; ++t) s += su.value[t][c];
    return s;
}

DpTable solve_ue_dp(const Problem& problem, int ue, const AssociationPlan& base, const DpOptions& options) {
    const int T = problem.num_slots();
    DpTable dp;
    dp.seg_utils = slot_utilities(problem, ue, base);
    const auto& U = dp.seg_utils.value;
    const int C = static_cast<int>(dp.seg_utils.candidates.size());

    // prefix[c][k] = sum of U over slots [0, k); last_gap[c][k] = last slot < k
    // where c is inadmissible (-1 if none).
    std::vector<std::vector<double>> prefix(C, std::vector<double>(T + 1, 0.0));
    std::vector<std::vector<int>> last_gap(C, std::vector<int>(T + 1, -1));
    for (int c = 0; c < C; ++c) {
        for (int k = 1; k <= T; ++k) {
            const double u = U[k - 1][c];
            const bool visible = u != kInvisible;
            prefix[c][k] = prefix[c][k - 1] + (visible ? u : 0.0);
            last_gap[c][k] = visible ? last_gap[c][k - 1] : k - 1;
        }
    }

    const double inf = std::numeric_limits<double>::infinity();
    dp.cost.assign(T + 1, inf);
    dp.best_tau.assign(T + 1, -1);
    dp.best_sat.assign(T + 1, -1);
    dp.handovers.assign(T + 1, 0);
    dp.cost[0] = 0.0;

    for (int k = 1; k <= T; ++k) {
        double best = inf;
        int best_ho = 0, best_tau = -1, best_c = -1;
        for (int tau = 0; tau < k; ++tau) {
            if (dp.cost[tau] == inf) continue;
            const int switch_cost = tau >= 1 ? 1 : 0;
            const int ho = dp.handovers[tau] + switch_cost;
            for (int c = 0; c < C; ++c) {
                if (last_gap[c][k] >= tau) continue;
                double seg;
                if (options.literal_segment_sums) {
                    seg = 0.0;
                    for (int s = tau; s < k; ++s) seg += U[s][c];
                } else {
                    seg = prefix[c][k] - prefix[c][tau];
                }
                const double cost = dp.cost[tau] + switch_cost - problem.gamma * seg;
                bool take;
                if (best_c < 0) {
                    take = true;
                } else {
                    const double tol = options.tie_tolerance * std::max(1.0, std::abs(best));
                    if (cost < best - tol)
                        take = true;
                    else if (cost > best + tol)
                        take = false;
                    else if (ho != best_ho)
                        take = ho < best_ho;
                    else
                        take = tau > best_tau;  // candidates ascend, so equal tau keeps the lower id
                }
                if (take) {
                    best = cost;
                    best_ho = ho;
                    best_tau = tau;
                    best_c = c;
                }
            }
        }
        if (best_c < 0) {
            throw InfeasibleError(ue, k - 1, "no admissible satellite");
        }
        dp.cost[k] = best;
        dp.handovers[k] = best_ho;
        dp.best_tau[k] = best_tau;
        dp.best_sat[k] = dp.seg_utils.candidates[best_c];
    }
    return dp;
}

UeOptimization optimize_ue(const Problem& problem, int ue, const AssociationPlan& base, const DpOptions& options) {
    if (ue < 0 || ue >= problem.num_ues()) throw Error("ue index out of range");
    UeOptimization out;
    out.table = solve_ue_dp(problem, ue, base, options);

    out.plan = base;
    auto& row = out.plan.serving[ue];
    for (int k = problem.num_slots(); k > 0;) {
        const int tau = out.table.best_tau[k];
        std::fill(row.begin() + tau, row.begin() + k, out.table.best_sat[k]);
        k = tau;
    }
    out.objective = evaluate_plan(problem, out.plan);

    // The base row is itself a DP candidate; only rounding can make the new
    // row look worse, in which case keep the base.
    const auto base_objective = evaluate_plan(problem, base);
    if (out.objective.objective > base_objective.objective) {
        out.plan = base;
        out.objective = base_objective;
    }
    return out;
}

PlanResult plan(const Problem& problem, const AssociationPlan& init, int passes, const DpOptions& options) {
    if (passes < 0) throw Error("passes must be >= 0");
    PlanResult out;
    out.plan = init;
    out.objective = evaluate_plan(problem, init);
    out.trace.push_back(out.objective.objective);
    for (int p = 0; p < passes; ++p) {
        for (int i = 0; i < problem.num_ues(); ++i) {
            auto step = optimize_ue(problem, i, out.plan, options);
            out.plan = std::move(step.plan);
            out.objective = std::move(step.objective);
            out.trace.push_back(out.objective.objective);
        }
    }
    return out;
}

AssociationPlan initial_plan(const Problem& problem) { return run_lst(problem); }

}  // namespace preho
