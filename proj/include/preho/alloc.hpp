#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "preho/utility.hpp"

namespace preho {

// ue id -> maximum per-slot throughput (Mb) on one satellite.
using DmaxMap = std::map<int, double>;

// Resource shares of one (satellite, slot) subproblem and its multiplier.
struct AllocationVector {
    std::map<int, double> shares;
    double dual = std::numeric_limits<double>::quiet_NaN();

    bool empty() const { return shares.empty(); }
    bool has_dual() const { return !std::isnan(dual); }
    std::vector<int> served_set() const;
    double total() const;
};

struct BisectionParams {
    double epsilon = 1e-9;                // width of the final multiplier interval
    std::optional<double> lambda_min;     // derived from the utilities when unset
    std::optional<double> lambda_max;
    double y_floor = 1e-9;                // shares below this are treated as zero
    double inner_epsilon = 1e-13;         // tolerance of the per-UE share search
    double renormalize_tolerance = 1e-6;  // max |sum - 1| accepted before renormalizing
};

struct BisectionStats {
    int outer_iterations = 0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

/// Shares proportional to D^((1-alpha)/alpha), summing to one. alpha == 0
/// falls through to allocate_linear.
AllocationVector allocate_closed_form(double alpha, const DmaxMap& dmax);

/// Whole resource to the UE with the largest D (lowest id on ties); the
/// optimum for alpha == 0.
AllocationVector allocate_linear(const DmaxMap& dmax);

/// Dual bisection over the multiplier with an inner bisection per UE. Works
/// from point evaluations of u' only. Throws ConvergenceError when the final
/// shares miss the unit budget by more than renormalize_tolerance.
AllocationVector allocate_bisection(const UtilityModel& model, const DmaxMap& dmax, const BisectionParams& params = {},
                                    BisectionStats* stats = nullptr);
AllocationVector allocate_bisection(const UtilitySpec& spec, const DmaxMap& dmax, const BisectionParams& params = {},
                                    BisectionStats* stats = nullptr);

/// Share y in [0, 1] solving u'(y D) D = lambda, clamped to the box.
double share_for_multiplier(const UtilityModel& model, double dmax, double lambda, const BisectionParams& params = {});

/// Sum of u(share * D) over the allocation's UEs.
double subproblem_value(const UtilitySpec& spec, const DmaxMap& dmax, const AllocationVector& alloc);

enum class AllocMethod { closed_form, bisection };

/// Optimal subproblem value for the given served set: closed form, linear
/// rule or bisection depending on alpha and method.
AllocationVector solve_subproblem(const UtilitySpec& spec, const DmaxMap& dmax, AllocMethod method,
                                  const BisectionParams& params = {});

}  // namespace preho
