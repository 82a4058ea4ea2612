#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "preho/planner.hpp"

namespace preho {

struct BruteForceResult {
    std::vector<int> sequence;                 // canonical optimum after tie-break normalization
    double objective = 0.0;
    std::vector<std::vector<int>> optima;      // every sequence within tolerance of the optimum
    std::uint64_t enumerated = 0;
};

/// Enumerates every admissible serving sequence of `ue` with the other rows
/// held at `base`, scoring each with evaluate_plan. Ties (within tolerance)
/// are normalized by fewer handovers, then later handovers, then lower ids.
BruteForceResult brute_force_ue(const Problem& problem, int ue, const AssociationPlan& base,
                                std::uint64_t cap = 1000000, double tolerance = 1e-9);

/// Grid search over the share simplex (at most 3 UEs) maximizing the sum of
/// utilities. Grid points giving undefined utility are skipped.
AllocationVector brute_force_alloc(const UtilitySpec& spec, const DmaxMap& dmax, double grid_step);

using UeOptimizer = std::function<UeOptimization(const Problem&, int, const AssociationPlan&)>;

struct OracleOptions {
    double objective_tolerance = 1e-9;
    double alloc_grid_step = 1e-3;
    std::uint64_t enumeration_cap = 1000000;
    UeOptimizer optimizer;  // defaults to optimize_ue
};

struct OracleReport {
    int ue_checks = 0;
    int alloc_checks = 0;
    std::vector<std::string> failures;  // one counterexample description each

    bool passed() const { return failures.empty(); }
};

/// Certifies optimize_ue against brute_force_ue for every UE (base = the
/// initial plan) and both allocators against brute_force_alloc on every
/// (slot, satellite) group of up to 3 UEs that can see it.
OracleReport run_oracle_check(const Problem& problem, const OracleOptions& options = {});

}  // namespace preho
