#include "hdalpha/regression.hpp"

#include <algorithm>
#include <string>

#include "hdalpha/errors.hpp"

namespace hdalpha {

namespace {

constexpr double kOmegaFloor = 1e-12;

bool pow8_at_least(long long base, long long target) {
    long long value = 1;
    for (int k = 0; k < 8; ++k) {
        value *= base;
        if (value >= target) return true;
    }
    return value >= target;
}

}  // namespace

Bandwidth::Bandwidth(int lags) : lags_(lags) {
    if (lags < 0) throw Error(ErrorCode::InvalidArgument, "bandwidth must be non-negative");
}

Bandwidth Bandwidth::default_for(Index securities, Index periods) {
    const long long m = std::min<long long>(securities, periods);
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "bandwidth needs positive dimensions");
    int lags = 1;
    while (!pow8_at_least(lags, m)) ++lags;
    return Bandwidth(lags);
}

ProjectorWeights projector_weights(const Eigen::MatrixXd& factors) {
    const Index t = factors.rows();
    const Index p = factors.cols();
    if (t < p + 2) throw Error(ErrorCode::InvalidArgument, "need T >= p + 2 to fit the factor model");
    if (!factors.allFinite()) throw Error(ErrorCode::InvalidArgument, "factors contain non-finite entries");

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(t);
    Eigen::VectorXd annihilated = ones;
    if (p > 0) {
        Eigen::MatrixXd design(t, p + 1);
        design.col(0) = ones;
        design.rightCols(p) = factors;
        if (Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(design).rank() < p + 1) {
            throw Error(ErrorCode::SingularDesign, "singular factor design");
        }
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(factors);
        annihilated -= factors * qr.solve(ones);
    }
    const double omega = annihilated.mean();
    if (!(omega > kOmegaFloor)) throw Error(ErrorCode::InterceptSpanned, "intercept spanned by factors");
    return {annihilated / omega, omega};
}

FactorFit fit_factor_model(const PanelData& panel) {
    panel.validate();
    const Index t = panel.periods();
    const Index p = panel.factor_count();

    auto weights = projector_weights(panel.factors);

    FactorFit fit;
    fit.alpha_hat = panel.returns.transpose() * weights.eta / static_cast<double>(t);
    Eigen::MatrixXd centered = panel.returns;
    centered.rowwise() -= fit.alpha_hat.transpose();
    if (p > 0) {
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(panel.factors);
        const Eigen::MatrixXd coef = qr.solve(centered);  // p x N
        fit.beta_hat = coef.transpose();
        centered.noalias() -= panel.factors * coef;
    } else {
        fit.beta_hat.resize(panel.securities(), 0);
    }
    fit.residuals = centered;
    fit.eta = std::move(weights.eta);
    fit.omega_hat = weights.omega_hat;
    return fit;
}

}  // namespace hdalpha
