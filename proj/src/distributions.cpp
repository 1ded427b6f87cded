#include "hdalpha/distributions.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "hdalpha/errors.hpp"

namespace hdalpha {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double gumbel_limit_cdf(double x) { return std::exp(-std::exp(-0.5 * x) * std::numbers::inv_sqrtpi); }

double gumbel_limit_sf(double x) { return -std::expm1(-std::exp(-0.5 * x) * std::numbers::inv_sqrtpi); }

double gumbel_limit_quantile(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "gumbel quantile level must lie in (0, 1), got " + std::to_string(gamma));
    }
    // log(1/(1-gamma)) = -log1p(-gamma)
    return -std::log(std::numbers::pi) - 2.0 * std::log(-std::log1p(-gamma));
}

double cauchy_cdf(double x) { return 0.5 + std::atan(x) * std::numbers::inv_pi; }

double cauchy_sf(double x) {
    if (x > 0.0) return std::atan(1.0 / x) * std::numbers::inv_pi;
    return 0.5 - std::atan(x) * std::numbers::inv_pi;
}

double chi_square_sf(double q, int df) {
    if (df < 1) throw Error(ErrorCode::InvalidArgument, "chi-square degrees of freedom must be >= 1");
    if (!(q >= 0.0)) throw Error(ErrorCode::InvalidArgument, "chi-square quantile must be non-negative");
    if (q == 0.0) return 1.0;
    if (std::isinf(q)) return 0.0;
    return boost::math::gamma_q(0.5 * df, 0.5 * q);
}

}  // namespace hdalpha
