#include "hdalpha/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "hdalpha/errors.hpp"

namespace hdalpha {

namespace {

constexpr Index kBurnIn = 50;

struct ArGarch {
    double intercept;
    double ar;
    double omega;
    double garch;
    double arch;
};

// Market, SMB, HML.
constexpr ArGarch kFactorLaws[3] = {
    {0.53, 0.06, 0.89, 0.85, 0.11},
    {0.19, 0.19, 0.62, 0.74, 0.19},
    {0.19, 0.05, 0.80, 0.76, 0.15},
};

bool in_band(Index distance, Index securities, double omega_band) {
    return static_cast<double>(distance) <= omega_band * static_cast<double>(securities);
}

}  // namespace

std::string_view dependence_name(Dependence dependence) {
    switch (dependence) {
        case Dependence::Independent:
            return "independent";
        case Dependence::MDependent:
            return "m2";
        case Dependence::Infinite:
            return "infinite";
    }
    return "?";
}

std::string_view innovation_name(Innovation innovation) {
    return innovation == Innovation::Normal ? "normal" : "t3";
}

Dependence parse_dependence(std::string_view text) {
    if (text == "independent") return Dependence::Independent;
    if (text == "m2") return Dependence::MDependent;
    if (text == "infinite") return Dependence::Infinite;
    throw Error(ErrorCode::InvalidArgument, "unknown dependence '" + std::string(text) + "'");
}

Innovation parse_innovation(std::string_view text) {
    if (text == "normal") return Innovation::Normal;
    if (text == "t3") return Innovation::StudentT3;
    throw Error(ErrorCode::InvalidArgument, "unknown innovation '" + std::string(text) + "'");
}

std::string_view alpha_kind_name(AlphaSpec::Kind kind) {
    switch (kind) {
        case AlphaSpec::Kind::Null:
            return "null";
        case AlphaSpec::Kind::SparseUniform:
            return "sparse_uniform";
        case AlphaSpec::Kind::SignalStrength:
            return "signal_strength";
    }
    return "?";
}

AlphaSpec::Kind parse_alpha_kind(std::string_view text) {
    if (text == "null") return AlphaSpec::Kind::Null;
    if (text == "sparse_uniform") return AlphaSpec::Kind::SparseUniform;
    if (text == "signal_strength") return AlphaSpec::Kind::SignalStrength;
    throw Error(ErrorCode::InvalidArgument, "unknown alpha kind '" + std::string(text) + "'");
}

double default_sparse_scale(Dependence dependence) {
    switch (dependence) {
        case Dependence::Independent:
            return 12.0;
        case Dependence::MDependent:
            return 80.0;
        case Dependence::Infinite:
            return 90.0;
    }
    return 0.0;
}

double AlphaSpec::upper_bound(Index securities, Index periods) const {
    const double log_n = std::log(static_cast<double>(securities));
    const double t = static_cast<double>(periods);
    switch (kind) {
        case Kind::Null:
            return 0.0;
        case Kind::SparseUniform:
            return std::sqrt(scale * log_n / (static_cast<double>(count) * t));
        case Kind::SignalStrength:
            return std::sqrt(scale * log_n / t);
    }
    return 0.0;
}

Index DgpConfig::dependence_order() const {
    switch (dependence) {
        case Dependence::Independent:
            return 0;
        case Dependence::MDependent:
            return 2;
        case Dependence::Infinite:
            return periods - 1;
    }
    return 0;
}

void DgpConfig::validate() const {
    if (securities < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
    if (periods < 5) throw Error(ErrorCode::InvalidArgument, "T must be >= 5 for a three-factor panel");
    if (!(band.omega_band > 0.0 && band.omega_band <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "omega_band must lie in (0, 1]");
    }
    if (band.omega_band * static_cast<double>(securities) < 1.0) {
        throw Error(ErrorCode::InvalidArgument, "omega_band * N must be >= 1");
    }
    if (!std::isfinite(band.phi1) || !std::isfinite(band.phi2)) {
        throw Error(ErrorCode::InvalidArgument, "band parameters must be finite");
    }
    if (alpha.kind != AlphaSpec::Kind::Null) {
        if (alpha.count < 1 || alpha.count > securities) {
            throw Error(ErrorCode::InvalidArgument, "alpha support size s must lie in [1, N]");
        }
        if (!(alpha.scale >= 0.0) || !std::isfinite(alpha.scale)) {
            throw Error(ErrorCode::InvalidArgument, "alpha scale must be finite and non-negative");
        }
    }
}

Eigen::MatrixXd BandMatrices::lag_matrix(int lag) const {
    const Index n = securities();
    if (lag == 0) return Eigen::MatrixXd::Identity(n, n);
    for (const auto& term : lags) {
        if (term.lag != lag) continue;
        if (term.banded) return term.scale * band_kernel;
        return term.scale * Eigen::MatrixXd::Identity(n, n);
    }
    return Eigen::MatrixXd::Zero(n, n);
}

Eigen::MatrixXd BandMatrices::longrun_covariance() const {
    const Index n = securities();
    Eigen::MatrixXd filter = Eigen::MatrixXd::Identity(n, n);
    for (const auto& term : lags) {
        if (term.banded) {
            filter += term.scale * band_kernel;
        } else {
            filter.diagonal().array() += term.scale;
        }
    }
    return filter * sigma * filter.transpose();
}

BandMatrices build_band_matrices(Index securities, const BandParams& band, Index dependence_order) {
    if (securities < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
    if (dependence_order < 0) throw Error(ErrorCode::InvalidArgument, "dependence order must be >= 0");

    const Index n = securities;
    BandMatrices out;
    out.sigma.setZero(n, n);
    out.band_kernel.setZero(n, n);
    for (Index i = 0; i < n; ++i) {
        out.sigma(i, i) = 1.0;
        out.band_kernel(i, i) = band.phi1;
        for (Index j = 0; j < n; ++j) {
            const Index d = std::abs(i - j);
            if (d == 0 || !in_band(d, n, band.omega_band)) continue;
            const double inv_sq = 1.0 / static_cast<double>(d * d);
            out.sigma(i, j) = band.phi2 * inv_sq;
            out.band_kernel(i, j) = band.phi1 * inv_sq;
        }
    }

    Eigen::LLT<Eigen::MatrixXd> llt(out.sigma);
    if (llt.info() != Eigen::Success) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.sigma, Eigen::EigenvaluesOnly);
        std::ostringstream os;
        os.precision(12);
        os << "cross-sectional covariance is not positive definite (smallest eigenvalue " << eig.eigenvalues()(0)
           << ")";
        throw Error(ErrorCode::NotPositiveDefinite, os.str());
    }
    out.sigma_chol = llt.matrixL();

    for (int h = 1; h <= std::min<Index>(2, dependence_order); ++h) {
        out.lags.push_back({h, 1.0 / h, true});
    }
    const Index last = std::min<Index>(dependence_order, kInfiniteLagCutoff);
    for (int h = 3; h <= last; ++h) out.lags.push_back({h, std::exp(-2.0 * h), false});
    return out;
}

Eigen::MatrixXd simulate_factors(Index periods, RngStream& stream) {
    if (periods < 1) throw Error(ErrorCode::InvalidArgument, "T must be >= 1");
    Eigen::MatrixXd out(periods, 3);
    double f[3] = {0.0, 0.0, 0.0};
    double h[3] = {1.0, 1.0, 1.0};
    double shock[3];
    for (auto& z : shock) z = stream.normal();  // zeta at t = -50
    // t runs from -49 to T; index `step` counts from 0 at t = -49.
    for (Index step = 0; step < kBurnIn + periods; ++step) {
        for (int j = 0; j < 3; ++j) {
            const auto& law = kFactorLaws[j];
            h[j] = law.omega + law.garch * h[j] + law.arch * shock[j] * shock[j];
        }
        for (int j = 0; j < 3; ++j) {
            shock[j] = stream.normal();
            f[j] = kFactorLaws[j].intercept + kFactorLaws[j].ar * f[j] + std::sqrt(h[j]) * shock[j];
        }
        const Index t = step - kBurnIn;  // 0-based period; kept once t >= 0 (t = 1..T)
        if (t >= 0) {
            for (int j = 0; j < 3; ++j) out(t, j) = f[j];
        }
    }
    return out;
}

Eigen::MatrixXd simulate_betas(Index securities, RngStream& stream) {
    static constexpr double kBounds[3][2] = {{0.2, 2.0}, {-1.0, 1.5}, {-1.5, 1.5}};
    Eigen::MatrixXd out(securities, 3);
    for (int j = 0; j < 3; ++j)
        for (Index i = 0; i < securities; ++i) out(i, j) = stream.uniform(kBounds[j][0], kBounds[j][1]);
    return out;
}

Eigen::VectorXd simulate_alphas(Index securities, Index periods, const AlphaSpec& spec, RngStream& stream) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(securities);
    if (spec.kind == AlphaSpec::Kind::Null) return out;
    if (spec.count > securities) throw Error(ErrorCode::InvalidArgument, "alpha support size s exceeds N");
    if (spec.count < 1) throw Error(ErrorCode::InvalidArgument, "alpha support size s must be >= 1");

    // Partial Fisher-Yates: the first s entries form a uniform s-subset.
    std::vector<Index> order(static_cast<std::size_t>(securities));
    std::iota(order.begin(), order.end(), Index{0});
    for (Index k = 0; k < spec.count; ++k) {
        const auto pick = k + static_cast<Index>(stream.uniform_index(static_cast<std::uint64_t>(securities - k)));
        std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(pick)]);
    }
    const double upper = spec.upper_bound(securities, periods);
    for (Index k = 0; k < spec.count; ++k) {
        double value = 0.0;
        // U(0, upper) with the measure-zero draw 0 excluded so the support is exact.
        while (value == 0.0 && upper > 0.0) value = stream.uniform(0.0, upper);
        out(order[static_cast<std::size_t>(k)]) = value;
    }
    return out;
}

TimeMajorMatrix simulate_errors(const DgpConfig& config, const BandMatrices& matrices, RngStream& stream) {
    const Index n = config.securities;
    const Index t = config.periods;
    if (matrices.securities() != n) throw Error(ErrorCode::InvalidArgument, "band matrices built for a different N");
    const Index pre = std::min<Index>(matrices.max_lag(), config.dependence_order());

    TimeMajorMatrix zeta(t + pre, n);
    if (config.innovation == Innovation::Normal) {
        for (Index r = 0; r < zeta.rows(); ++r)
            for (Index c = 0; c < n; ++c) zeta(r, c) = stream.normal();
    } else {
        for (Index r = 0; r < zeta.rows(); ++r)
            for (Index c = 0; c < n; ++c) zeta(r, c) = stream.student_t(3);
    }
    // Row k of z holds z_{k - pre + 1}; rows are z_t' = zeta_t' L'.
    TimeMajorMatrix z = zeta * matrices.sigma_chol.transpose().triangularView<Eigen::Upper>();

    TimeMajorMatrix errors = z.bottomRows(t);
    TimeMajorMatrix banded = TimeMajorMatrix::Zero(t, n);
    bool any_banded = false;
    for (const auto& term : matrices.lags) {
        if (term.lag > pre) break;
        const auto lagged = z.middleRows(pre - term.lag, t);
        if (term.banded) {
            banded += term.scale * lagged;
            any_banded = true;
        } else {
            errors += term.scale * lagged;
        }
    }
    // K is symmetric, so (K z)' = z' K.
    if (any_banded) errors.noalias() += banded * matrices.band_kernel;
    return errors;
}

TimeMajorMatrix simulate_errors(const DgpConfig& config, RngStream& stream) {
    config.validate();
    const auto matrices = build_band_matrices(config.securities, config.band, config.dependence_order());
    return simulate_errors(config, matrices, stream);
}

SimulatedPanel generate_panel(const DgpConfig& config, const BandMatrices& matrices, RngStream& stream) {
    config.validate();
    auto factor_stream = stream.substream(kFactorStream);
    auto beta_stream = stream.substream(kBetaStream);
    auto alpha_stream = stream.substream(kAlphaStream);
    auto error_stream = stream.substream(kErrorStream);

    SimulatedPanel out;
    Eigen::MatrixXd factors = simulate_factors(config.periods, factor_stream);
    out.beta = simulate_betas(config.securities, beta_stream);
    out.alpha = simulate_alphas(config.securities, config.periods, config.alpha, alpha_stream);
    const TimeMajorMatrix errors = simulate_errors(config, matrices, error_stream);

    Eigen::MatrixXd returns = factors * out.beta.transpose();
    returns += errors;
    returns.rowwise() += out.alpha.transpose();
    out.panel = make_panel(std::move(returns), std::move(factors));
    return out;
}

SimulatedPanel generate_panel(const DgpConfig& config, RngStream& stream) {
    config.validate();
    const auto matrices = build_band_matrices(config.securities, config.band, config.dependence_order());
    return generate_panel(config, matrices, stream);
}

SimulatedPanel generate_panel(const DgpConfig& config) {
    RngStream stream(config.seed, 0);
    return generate_panel(config, stream);
}

}  // namespace hdalpha
