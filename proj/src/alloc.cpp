#include "preho/alloc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "preho/errors.hpp"

namespace preho {

std::vector<int> AllocationVector::served_set() const {
    std::vector<int> out;
    out.reserve(shares.size());
    for (const auto& [ue, y] : shares) out.push_back(ue);
    return out;
}

double AllocationVector::total() const {
    double s = 0.0;
    for (const auto& [ue, y] : shares) s += y;
    return s;
}

namespace {

void check_dmax(const DmaxMap& dmax) {
    for (const auto& [ue, d] : dmax)
        if (!(d > 0.0) || !std::isfinite(d))
            throw DomainError("dmax for ue " + std::to_string(ue) + " must be positive and finite");
}

}  // namespace

AllocationVector allocate_linear(const DmaxMap& dmax) {
    AllocationVector out;
    if (dmax.empty()) return out;
    check_dmax(dmax);
    auto best = dmax.begin();
    for (auto it = dmax.begin(); it != dmax.end(); ++it)
        if (it->second > best->second) best = it;
    for (const auto& [ue, d] : dmax) out.shares[ue] = 0.0;
    out.shares[best->first] = 1.0;
    out.dual = best->second;
    return out;
}

AllocationVector allocate_closed_form(double alpha, const DmaxMap& dmax) {
    if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
    if (alpha == 0.0) return allocate_linear(dmax);
    AllocationVector out;
    if (dmax.empty()) return out;
    check_dmax(dmax);

    const double n = static_cast<double>(dmax.size());
    if (alpha == 1.0) {
        // Exponent (1 - alpha)/alpha vanishes: equal split, lambda* = |N_j|.
        for (const auto& [ue, d] : dmax) out.shares[ue] = 1.0 / n;
        out.dual = n;
        return out;
    }

    // Scale by the largest D so large exponents stay in range.
    double dm = 0.0;
    for (const auto& [ue, d] : dmax) dm = std::max(dm, d);
    const double e = (1.0 - alpha) / alpha;
    double sum = 0.0;
    for (const auto& [ue, d] : dmax) {
        const double w = std::pow(d / dm, e);
        out.shares[ue] = w;
        sum += w;
    }
    for (auto& [ue, y] : out.shares) y /= sum;
    out.dual = std::pow(dm, 1.0 - alpha) * std::pow(sum, alpha);
    return out;
}

double share_for_multiplier(const UtilityModel& model, double dmax, double lambda, const BisectionParams& params) {
    auto marginal = [&](double y) { return model.derivative(y * dmax) * dmax; };
    if (marginal(1.0) >= lambda) return 1.0;
    if (marginal(params.y_floor) <= lambda) return 0.0;
    double lo = params.y_floor, hi = 1.0;
    while (hi - lo > params.inner_epsilon) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (marginal(mid) > lambda)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

AllocationVector allocate_bisection(const UtilityModel& model, const DmaxMap& dmax, const BisectionParams& params,
                                    BisectionStats* stats) {
    if (!(params.epsilon > 0.0)) throw DomainError("bisection epsilon must be > 0");
    if (!(params.y_floor > 0.0 && params.y_floor < 1.0)) throw DomainError("y_floor must lie in (0, 1)");
    AllocationVector out;
    if (dmax.empty()) return out;
    check_dmax(dmax);

    auto marginal = [&](double d, double y) { return model.derivative(y * d) * d; };

    if (dmax.size() == 1) {
        const auto& [ue, d] = *dmax.begin();
        out.shares[ue] = 1.0;
        out.dual = marginal(d, 1.0);
        if (stats) *stats = {0, out.dual, out.dual};
        return out;
    }

    double lmin = params.lambda_min.value_or(std::numeric_limits<double>::infinity());
    double lmax = params.lambda_max.value_or(-std::numeric_limits<double>::infinity());
    if (!params.lambda_min || !params.lambda_max) {
        for (const auto& [ue, d] : dmax) {
            if (!params.lambda_min) lmin = std::min(lmin, marginal(d, 1.0));
            if (!params.lambda_max) lmax = std::max(lmax, marginal(d, params.y_floor));
        }
    }
    if (!(lmin < lmax)) throw ConvergenceError("lambda bounds do not form an interval");

    auto total_at = [&](double lambda) {
        double s = 0.0;
        for (const auto& [ue, d] : dmax) s += share_for_multiplier(model, d, lambda, params);
        return s;
    };

    double lo = lmin, hi = lmax;
    int iterations = 0;
    while (hi - lo >= params.epsilon) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;  // interval at floating-point resolution
        ++iterations;
        if (total_at(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    if (stats) *stats = {iterations, lmin, lmax};

    double sum = 0.0;
    for (const auto& [ue, d] : dmax) {
        const double y = share_for_multiplier(model, d, lambda, params);
        out.shares[ue] = y;
        sum += y;
    }
    if (!(std::abs(sum - 1.0) <= params.renormalize_tolerance))
        throw ConvergenceError("bisection ended with shares summing to " + std::to_string(sum) +
                               "; check the lambda bounds");
    for (auto& [ue, y] : out.shares) y /= sum;
    out.dual = lambda;
    return out;
}

AllocationVector allocate_bisection(const UtilitySpec& spec, const DmaxMap& dmax, const BisectionParams& params,
                                    BisectionStats* stats) {
    validate(spec);
    if (spec.alpha == 0.0) {
        if (stats) *stats = {};
        return allocate_linear(dmax);
    }
    return allocate_bisection(UtilityModel::from(spec), dmax, params, stats);
}

double subproblem_value(const UtilitySpec& spec, const DmaxMap& dmax, const AllocationVector& alloc) {
    double v = 0.0;
    for (const auto& [ue, y] : alloc.shares) {
        auto it = dmax.find(ue);
        if (it == dmax.end()) throw DomainError("allocation names ue " + std::to_string(ue) + " without a dmax entry");
        v += utility(spec, y * it->second);
    }
    return v;
}

AllocationVector solve_subproblem(const UtilitySpec& spec, const DmaxMap& dmax, AllocMethod method,
                                  const BisectionParams& params) {
    if (method == AllocMethod::bisection) return allocate_bisection(spec, dmax, params);
    return allocate_closed_form(spec.alpha, dmax);
}

}  // namespace preho
