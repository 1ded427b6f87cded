#pragma once

#include <Eigen/Dense>

#include "hdalpha/panel.hpp"

namespace hdalpha {

/// Truncation lag M for the long-run estimators; lags {0, +-1, ..., +-M} enter.
class Bandwidth {
public:
    explicit Bandwidth(int lags);

    /// ceil(min(N, T)^(1/8)), evaluated in integer arithmetic.
    static Bandwidth default_for(Index securities, Index periods);

    int lags() const noexcept { return lags_; }
    friend bool operator==(const Bandwidth&, const Bandwidth&) = default;

private:
    int lags_;
};

struct ProjectorWeights {
    Eigen::VectorXd eta;  ///< M_F 1 / omega_hat, length T
    double omega_hat;     ///< T^-1 1' M_F 1
};

/// Weights turning residuals into the intercept estimator: alpha_hat = Y' eta / T.
/// Throws SingularDesign if [1 F] is rank deficient and InterceptSpanned if
/// omega_hat falls below 1e-12.
ProjectorWeights projector_weights(const Eigen::MatrixXd& factors);

struct FactorFit {
    Eigen::VectorXd alpha_hat;  ///< N
    Eigen::MatrixXd beta_hat;   ///< N x p
    TimeMajorMatrix residuals;  ///< T x N
    Eigen::VectorXd eta;        ///< T
    double omega_hat = 0.0;

    Index periods() const { return residuals.rows(); }
    Index securities() const { return residuals.cols(); }
    Index factor_count() const { return beta_hat.cols(); }
};

/// Per-security OLS of returns on [1 F]. Residuals are M_F (y_i - alpha_hat_i 1).
FactorFit fit_factor_model(const PanelData& panel);

}  // namespace hdalpha
