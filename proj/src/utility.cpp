#include "preho/utility.hpp"

#include <cmath>
#include <string>

#include "preho/errors.hpp"

namespace preho {

void validate(const UtilitySpec& spec) {
    if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha)) {
        throw ValidationError("utility.alpha", "must be a finite value >= 0");
    }
}

double utility(const UtilitySpec& spec, double d_mb) {
    const double a = spec.alpha;
    if (d_mb <= 0.0) {
        if (a >= 1.0) throw DomainError("utility undefined at d = " + std::to_string(d_mb) + " for alpha >= 1");
        if (d_mb < 0.0) throw DomainError("utility undefined for negative throughput");
        return 0.0;
    }
    if (a == 1.0) return std::log(d_mb);
    if (a == 0.0) return d_mb;
    return std::pow(d_mb, 1.0 - a) / (1.0 - a);
}

double utility_derivative(const UtilitySpec& spec, double d_mb) {
    if (spec.alpha == 0.0) return 1.0;
    if (d_mb <= 0.0) throw DomainError("utility derivative undefined at d <= 0");
    if (spec.alpha == 1.0) return 1.0 / d_mb;
    return std::pow(d_mb, -spec.alpha);
}

UtilityModel UtilityModel::from(const UtilitySpec& spec) {
    return {[spec](double d) { return utility(spec, d); }, [spec](double d) { return utility_derivative(spec, d); }};
}

}  // namespace preho
