#pragma once

#include <functional>

namespace preho {

enum class UtilityKind { alpha_fair };

// alpha-fair utility over per-slot throughput in megabits.
struct UtilitySpec {
    UtilityKind kind = UtilityKind::alpha_fair;
    double alpha = 1.0;

    friend bool operator==(const UtilitySpec&, const UtilitySpec&) = default;
};

/// d^(1-alpha)/(1-alpha), or ln(d) when alpha == 1.
/// Throws DomainError for d <= 0 when alpha >= 1 (the value is -inf there).
double utility(const UtilitySpec& spec, double d_mb);

/// d^(-alpha). Throws DomainError for d <= 0.
double utility_derivative(const UtilitySpec& spec, double d_mb);

void validate(const UtilitySpec& spec);

// Point-evaluation view of a concave non-decreasing utility. The bisection
// allocator only needs this much, so any model exposing value/derivative
// can be plugged in.
struct UtilityModel {
    std::function<double(double)> value;
    std::function<double(double)> derivative;

    static UtilityModel from(const UtilitySpec& spec);
};

}  // namespace preho
