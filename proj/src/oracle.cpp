#include "preho/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "preho/errors.hpp"

namespace preho {

namespace {

int count_switches(const std::vector<int>& seq) {
    int n = 0;
    for (std::size_t t = 1; t < seq.size(); ++t) n += seq[t] != seq[t - 1];
    return n;
}

std::vector<int> switch_slots(const std::vector<int>& seq) {
    std::vector<int> out;
    for (std::size_t t = 1; t < seq.size(); ++t)
        if (seq[t] != seq[t - 1]) out.push_back(static_cast<int>(t));
    return out;
}

// True when a is preferred over b among equally good sequences.
bool canonical_before(const std::vector<int>& a, const std::vector<int>& b) {
    const int ha = count_switches(a), hb = count_switches(b);
    if (ha != hb) return ha < hb;
    // Later handovers first, compared from the last switch backwards.
    auto sa = switch_slots(a), sb = switch_slots(b);
    for (std::size_t k = sa.size(); k-- > 0;)
        if (sa[k] != sb[k]) return sa[k] > sb[k];
    for (std::size_t t = a.size(); t-- > 0;)
        if (a[t] != b[t]) return a[t] < b[t];
    return false;
}

std::string join(const std::vector<int>& v) {
    std::ostringstream ss;
    ss << '[';
    for (std::size_t k = 0; k < v.size(); ++k) ss << (k ? "," : "") << v[k];
    ss << ']';
    return ss.str();
}

}  // namespace

BruteForceResult brute_force_ue(const Problem& problem, int ue, const AssociationPlan& base, std::uint64_t cap,
                                double tolerance) {
    const int T = problem.num_slots();
    if (ue < 0 || ue >= problem.num_ues()) throw Error("ue index out of range");
    std::uint64_t space = 1;
    for (int t = 0; t < T; ++t) {
        const auto n = problem.vis.at(ue, t).size();
        if (n == 0) throw InfeasibleError(ue, t, "no admissible satellite");
        if (space > cap / n + 1) throw DomainError("search space exceeds the enumeration cap");
        space *= n;
    }
    if (space > cap) throw DomainError("search space of " + std::to_string(space) + " exceeds the enumeration cap");

    BruteForceResult out;
    std::vector<std::pair<std::vector<int>, double>> scored;
    std::vector<std::size_t> digit(T, 0);
    AssociationPlan trial = base;
    for (;;) {
        for (int t = 0; t < T; ++t) trial.serving[ue][t] = problem.vis.at(ue, t)[digit[t]].sat_id;
        scored.emplace_back(trial.serving[ue], evaluate_plan(problem, trial).objective);
        ++out.enumerated;
        int t = T - 1;
        while (t >= 0 && ++digit[t] == problem.vis.at(ue, t).size()) digit[t--] = 0;
        if (t < 0) break;
    }

    double best = scored.front().second;
    for (const auto& [seq, obj] : scored) best = std::min(best, obj);
    const double tol = tolerance * std::max(1.0, std::abs(best));
    for (const auto& [seq, obj] : scored)
        if (obj <= best + tol) out.optima.push_back(seq);
    out.sequence = *std::min_element(out.optima.begin(), out.optima.end(), canonical_before);
    out.objective = best;
    return out;
}

AllocationVector brute_force_alloc(const UtilitySpec& spec, const DmaxMap& dmax, double grid_step) {
    if (dmax.size() > 3) throw DomainError("brute_force_alloc handles at most 3 UEs");
    if (!(grid_step > 0.0 && grid_step <= 1.0)) throw DomainError("grid_step must lie in (0, 1]");
    AllocationVector out;
    if (dmax.empty()) return out;
    std::vector<int> ids;
    std::vector<double> d;
    for (const auto& [ue, v] : dmax) {
        ids.push_back(ue);
        d.push_back(v);
    }
    if (ids.size() == 1) {
        out.shares[ids[0]] = 1.0;
        return out;
    }

    auto score = [&](const std::vector<double>& y, double& v) {
        v = 0.0;
        for (std::size_t k = 0; k < y.size(); ++k) {
            if (y[k] <= 0.0 && spec.alpha >= 1.0) return false;
            v += utility(spec, y[k] * d[k]);
        }
        return std::isfinite(v);
    };

    const long steps = std::lround(1.0 / grid_step);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> best_y;
    std::vector<double> y(ids.size());
    for (long a = 0; a <= steps; ++a) {
        if (ids.size() == 2) {
            y = {a * grid_step, 1.0 - a * grid_step};
            if (y[1] < 0.0) y[1] = 0.0;
            double v;
            if (score(y, v) && v > best) best = v, best_y = y;
            continue;
        }
        for (long b = 0; a + b <= steps; ++b) {
            y = {a * grid_step, b * grid_step, std::max(0.0, 1.0 - (a + b) * grid_step)};
            double v;
            if (score(y, v) && v > best) best = v, best_y = y;
        }
    }
    if (best_y.empty()) throw DomainError("no grid point has a finite utility; refine grid_step");
    for (std::size_t k = 0; k < ids.size(); ++k) out.shares[ids[k]] = best_y[k];
    return out;
}

OracleReport run_oracle_check(const Problem& problem, const OracleOptions& options) {
    OracleReport report;
    UeOptimizer optimizer = options.optimizer;
    if (!optimizer) optimizer = [](const Problem& p, int ue, const AssociationPlan& b) { return optimize_ue(p, ue, b); };

    const AssociationPlan base = initial_plan(problem);
    for (int i = 0; i < problem.num_ues(); ++i) {
        ++report.ue_checks;
        const auto dp = optimizer(problem, i, base);
        const auto bf = brute_force_ue(problem, i, base, options.enumeration_cap, options.objective_tolerance);
        const auto& got = dp.plan.serving[i];
        const double got_obj = evaluate_plan(problem, dp.plan).objective;
        const bool obj_ok = std::abs(got_obj - bf.objective) <= options.objective_tolerance * std::max(1.0, std::abs(bf.objective));
        const bool seq_ok = std::find(bf.optima.begin(), bf.optima.end(), got) != bf.optima.end();
        if (!obj_ok || !seq_ok) {
            std::ostringstream ss;
            ss.precision(17);
            ss << "ue " << i << ": optimizer " << join(got) << " objective " << got_obj << ", brute force "
               << join(bf.sequence) << " objective " << bf.objective << ", base row " << join(base.serving[i]);
            report.failures.push_back(ss.str());
        }
    }

    // Allocation certificates on the groups of UEs that can share a satellite.
    const double step = options.alloc_grid_step;
    for (int t = 0; t < problem.num_slots(); ++t) {
        std::map<int, DmaxMap> groups;
        for (int i = 0; i < problem.num_ues(); ++i)
            for (const auto& v : problem.vis.at(i, t))
                if (groups[v.sat_id].size() < 3) groups[v.sat_id][i] = problem.dmax(i, t, v.sat_id);
        for (const auto& [sat, dmax] : groups) {
            ++report.alloc_checks;
            const auto grid = brute_force_alloc(problem.utility, dmax, step);
            const double grid_value = subproblem_value(problem.utility, dmax, grid);
            for (auto method : {AllocMethod::closed_form, AllocMethod::bisection}) {
                const auto a = solve_subproblem(problem.utility, dmax, method, problem.bisection);
                const double value = subproblem_value(problem.utility, dmax, a);
                double dist = 0.0;
                for (const auto& [ue, y] : a.shares) dist = std::max(dist, std::abs(y - grid.shares.at(ue)));
                // The grid optimum cannot beat the true optimum; shares agree up to the grid resolution.
                if (value < grid_value - 1e-9 * std::max(1.0, std::abs(grid_value)) || dist > 2.0 * step + 1e-12) {
                    std::ostringstream ss;
                    ss.precision(17);
                    ss << (method == AllocMethod::closed_form ? "closed form" : "bisection") << " at slot " << t
                       << ", sat " << sat << ": value " << value << " vs grid " << grid_value << ", share gap " << dist;
                    report.failures.push_back(ss.str());
                }
            }
        }
    }
    return report;
}

}  // namespace preho
