#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "preho/alloc.hpp"

namespace preho::test {

// First-order exchange test: no feasible move of eps share from one UE to
// another raises the subproblem value. Returns an empty string on success.
inline std::string exchange_certificate(const UtilitySpec& spec, const DmaxMap& dmax, const AllocationVector& a,
                                        double eps = 1e-5) {
    const double base = subproblem_value(spec, dmax, a);
    const double tol = 1e-12 * std::max(1.0, std::abs(base));
    for (const auto& [ua, ya] : a.shares)
        for (const auto& [ub, yb] : a.shares) {
            if (ua == ub || ya + eps > 1.0 || yb - eps < 0.0) continue;
            if (yb - eps == 0.0 && spec.alpha >= 1.0) continue;
            AllocationVector moved = a;
            moved.shares[ua] += eps;
            moved.shares[ub] -= eps;
            const double v = subproblem_value(spec, dmax, moved);
            if (v > base + tol)
                return "moving share from ue " + std::to_string(ub) + " to ue " + std::to_string(ua) +
                       " improves value by " + std::to_string(v - base);
        }
    return {};
}

}  // namespace preho::test
