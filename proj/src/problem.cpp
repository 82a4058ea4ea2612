#include "preho/problem.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "preho/errors.hpp"

namespace preho {

const LinkRate& Problem::link(int ue, int slot, int sat_id) const {
    const int k = vis.find(ue, slot, sat_id);
    if (k < 0) throw InfeasibleError(ue, slot, "satellite " + std::to_string(sat_id) + " is not admissible");
    return rates.at(ue, slot)[k];
}

double Problem::subproblem_optimum(const DmaxMap& served) const {
    if (served.empty()) return 0.0;
    const auto alloc = solve_subproblem(utility, served, method, bisection);
    return subproblem_value(utility, served, alloc);
}

Problem Problem::from(const Scenario& scenario, VisibilityMap vis, RateMatrix rates) {
    Problem p;
    p.vis = std::move(vis);
    p.rates = std::move(rates);
    p.gamma = scenario.gamma;
    p.utility = scenario.utility;
    return p;
}

int AssociationPlan::handovers(int ue) const {
    const auto& row = serving[ue];
    int n = 0;
    for (std::size_t t = 1; t < row.size(); ++t) n += row[t] != row[t - 1];
    return n;
}

long AssociationPlan::total_handovers() const {
    long n = 0;
    for (int i = 0; i < num_ues(); ++i) n += handovers(i);
    return n;
}

void check_feasible(const Problem& problem, const AssociationPlan& plan) {
    if (plan.num_ues() != problem.num_ues() || plan.num_slots() != problem.num_slots())
        throw Error("plan dimensions do not match the problem");
    for (int i = 0; i < plan.num_ues(); ++i)
        for (int t = 0; t < plan.num_slots(); ++t)
            if (!problem.vis.contains(i, t, plan.serving[i][t]))
                throw InfeasibleError(i, t, "server " + std::to_string(plan.serving[i][t]) + " is not admissible");
}

std::map<int, DmaxMap> slot_loads(const Problem& problem, const AssociationPlan& plan, int slot) {
    std::map<int, DmaxMap> loads;
    for (int i = 0; i < plan.num_ues(); ++i) {
        const int j = plan.serving[i][slot];
        loads[j][i] = problem.dmax(i, slot, j);
    }
    return loads;
}

void write_plan_csv(const AssociationPlan& plan, std::ostream& out) {
    out << "ue,slot,sat_id\n";
    for (int i = 0; i < plan.num_ues(); ++i)
        for (int t = 0; t < plan.num_slots(); ++t) out << i << ',' << t << ',' << plan.serving[i][t] << '\n';
}

AssociationPlan read_plan_csv(std::istream& in, int num_ues, int num_slots) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("plan file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "ue,slot,sat_id") throw ParseError("plan header must be 'ue,slot,sat_id'");
    AssociationPlan plan(num_ues, num_slots);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        int ue = 0, slot = 0, sat = 0;
        char c1 = 0, c2 = 0;
        if (!(ss >> ue >> c1 >> slot >> c2 >> sat) || c1 != ',' || c2 != ',')
            throw ParseError("plan line " + std::to_string(lineno) + ": expected ue,slot,sat_id");
        if (ue < 0 || ue >= num_ues || slot < 0 || slot >= num_slots)
            throw ParseError("plan line " + std::to_string(lineno) + ": index out of range");
        if (plan.serving[ue][slot] != -1)
            throw ParseError("plan line " + std::to_string(lineno) + ": duplicate (ue, slot)");
        plan.serving[ue][slot] = sat;
    }
    for (int i = 0; i < num_ues; ++i)
        for (int t = 0; t < num_slots; ++t)
            if (plan.serving[i][t] == -1)
                throw ParseError("plan is missing ue " + std::to_string(i) + ", slot " + std::to_string(t));
    return plan;
}

}  // namespace preho
