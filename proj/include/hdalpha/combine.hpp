#pragma once

#include "hdalpha/test_outcome.hpp"

namespace hdalpha {

/// Inputs of exactly 0 or 1 are moved this far inside before the tangent transform.
inline constexpr double kCauchyClip = 1e-15;

/// Equal-weight Cauchy combination of the max and sum p-values. The statistic
/// is 0.5 tan((0.5 - p_max) pi) + 0.5 tan((0.5 - p_sum) pi).
TestOutcome cauchy_combine(double p_max, double p_sum);

/// 1 - (1 - min(p_max, p_sum))^2; rejecting at level gamma is the
/// min{p_max, p_sum} <= 1 - sqrt(1 - gamma) rule.
TestOutcome min_p_combine(double p_max, double p_sum);

}  // namespace hdalpha
