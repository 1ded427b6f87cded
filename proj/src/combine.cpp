#include "hdalpha/combine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hdalpha/distributions.hpp"
#include "hdalpha/errors.hpp"

namespace hdalpha {

namespace {

void check_probability(double p) {
    if (!std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "non-finite p-value");
    if (p < 0.0 || p > 1.0) throw Error(ErrorCode::InvalidArgument, "p-value outside [0, 1]");
}

double cauchy_transform(double p) {
    const double clipped = std::clamp(p, kCauchyClip, 1.0 - kCauchyClip);
    return std::tan((0.5 - clipped) * std::numbers::pi);
}

}  // namespace

TestOutcome cauchy_combine(double p_max, double p_sum) {
    check_probability(p_max);
    check_probability(p_sum);
    const double statistic = 0.5 * cauchy_transform(p_max) + 0.5 * cauchy_transform(p_sum);
    return TestOutcome(Method::CauchyCombo, statistic, std::nullopt, cauchy_sf(statistic));
}

TestOutcome min_p_combine(double p_max, double p_sum) {
    check_probability(p_max);
    check_probability(p_sum);
    const double smallest = std::min(p_max, p_sum);
    return TestOutcome(Method::MinPCombo, smallest, std::nullopt, smallest * (2.0 - smallest));
}

}  // namespace hdalpha
