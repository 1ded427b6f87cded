#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string_view>
#include <vector>

#include "hdalpha/panel.hpp"
#include "hdalpha/rng.hpp"

namespace hdalpha {

/// Serial dependence of the simulated errors: order 0, 2, or T - 1.
enum class Dependence { Independent, MDependent, Infinite };
enum class Innovation { Normal, StudentT3 };

std::string_view dependence_name(Dependence dependence);  ///< "independent", "m2", "infinite"
std::string_view innovation_name(Innovation innovation);  ///< "normal", "t3"
Dependence parse_dependence(std::string_view text);
Innovation parse_innovation(std::string_view text);

struct BandParams {
    double omega_band = 0.9;  ///< band half-width as a fraction of N
    double phi1 = 0.6;        ///< lag-matrix strength
    double phi2 = 0.4;        ///< cross-sectional correlation strength
};

struct AlphaSpec {
    enum class Kind { Null, SparseUniform, SignalStrength };

    Kind kind = Kind::Null;
    Index count = 0;     ///< s, number of nonzero alphas
    double scale = 0.0;  ///< c for SparseUniform, delta for SignalStrength

    static AlphaSpec null() { return {}; }
    /// alpha_i ~ U(0, sqrt(c log N / (s T))) on s random securities.
    static AlphaSpec sparse_uniform(Index s, double c) { return {Kind::SparseUniform, s, c}; }
    /// alpha_i ~ U(0, sqrt(delta log N / T)) on s random securities.
    static AlphaSpec signal_strength(Index s, double delta) { return {Kind::SignalStrength, s, delta}; }

    /// Upper end of the uniform magnitude law; 0 for Null.
    double upper_bound(Index securities, Index periods) const;
};

std::string_view alpha_kind_name(AlphaSpec::Kind kind);  ///< "null", "sparse_uniform", "signal_strength"
AlphaSpec::Kind parse_alpha_kind(std::string_view text);

/// Scale constants c_0 = 12, c_2 = 80, c_inf = 90 for sparse power designs.
double default_sparse_scale(Dependence dependence);

struct DgpConfig {
    Index securities = 250;
    Index periods = 400;
    Dependence dependence = Dependence::MDependent;
    BandParams band;
    Innovation innovation = Innovation::Normal;
    AlphaSpec alpha;
    std::uint64_t seed = 0;

    /// 0, 2 or T - 1.
    Index dependence_order() const;
    void validate() const;
};

/// Cross-sectional covariance and lag filters of the error process
/// e_t = sum_h A_h z_{t-h}, z_t = Sigma^{1/2} zeta_t.
///
/// A_1 and A_2 share one banded kernel K (A_h = K / h); beyond lag 2,
/// A_h = exp(-2h) I, kept while exp(-2h) >= 1e-12 (through lag 13).
struct BandMatrices {
    struct LagTerm {
        int lag;
        double scale;
        bool banded;  ///< scale * K if true, scale * I otherwise
    };

    Eigen::MatrixXd sigma;
    Eigen::MatrixXd sigma_chol;  ///< lower-triangular L with L L' = Sigma
    Eigen::MatrixXd band_kernel;  ///< K: diagonal phi1, off-diagonal phi1/(i-j)^2 inside the band
    std::vector<LagTerm> lags;    ///< lags >= 1 in increasing order

    Index securities() const { return sigma.rows(); }
    int max_lag() const { return lags.empty() ? 0 : lags.back().lag; }
    /// Dense A_h (identity for h = 0, zero past the filter).
    Eigen::MatrixXd lag_matrix(int lag) const;
    /// Long-run covariance (sum_h A_h) Sigma (sum_h A_h)'.
    Eigen::MatrixXd longrun_covariance() const;
};

/// Last lag of the infinite-order filter; lag 14 is the first with exp(-2h) < 1e-12.
inline constexpr int kInfiniteLagCutoff = 13;

BandMatrices build_band_matrices(Index securities, const BandParams& band, Index dependence_order);

/// T x 3 AR(1)-GARCH(1,1) paths for market, SMB, HML, simulated from t = -49
/// (f = 0, h = 1 at t = -50) with the burn-in dropped.
Eigen::MatrixXd simulate_factors(Index periods, RngStream& stream);
/// N x 3 loadings from U(0.2, 2), U(-1, 1.5), U(-1.5, 1.5).
Eigen::MatrixXd simulate_betas(Index securities, RngStream& stream);
Eigen::VectorXd simulate_alphas(Index securities, Index periods, const AlphaSpec& spec, RngStream& stream);
/// T x N errors, time-major.
TimeMajorMatrix simulate_errors(const DgpConfig& config, const BandMatrices& matrices, RngStream& stream);
TimeMajorMatrix simulate_errors(const DgpConfig& config, RngStream& stream);

/// Substream tags used by generate_panel for each component.
inline constexpr std::uint64_t kFactorStream = 0;
inline constexpr std::uint64_t kBetaStream = 1;
inline constexpr std::uint64_t kAlphaStream = 2;
inline constexpr std::uint64_t kErrorStream = 3;

struct SimulatedPanel {
    PanelData panel;
    Eigen::VectorXd alpha;  ///< ground truth, N
    Eigen::MatrixXd beta;   ///< ground truth, N x 3
};

SimulatedPanel generate_panel(const DgpConfig& config, const BandMatrices& matrices, RngStream& stream);
SimulatedPanel generate_panel(const DgpConfig& config, RngStream& stream);
/// Uses RngStream(config.seed, 0).
SimulatedPanel generate_panel(const DgpConfig& config);

}  // namespace hdalpha
