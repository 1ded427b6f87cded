#include "hdalpha/dgp.hpp"
#include "hdalpha/errors.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hdalpha;

namespace {

DgpConfig small_config(Dependence dep, Index N, Index T) {
    DgpConfig c;
    c.securities = N;
    c.periods = T;
    c.dependence = dep;
    return c;
}

}  // namespace

TEST(BandMatrices, SigmaEntries) {
    const auto m = build_band_matrices(50, BandParams{}, 2);
    EXPECT_EQ(m.sigma(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(m.sigma(0, 1), 0.4);
    EXPECT_DOUBLE_EQ(m.sigma(0, 2), 0.1);
    EXPECT_DOUBLE_EQ(m.sigma(7, 3), 0.4 / 16.0);
    EXPECT_TRUE(m.sigma.isApprox(m.sigma.transpose(), 0.0));
    for (Index i = 0; i < 50; ++i) EXPECT_EQ(m.sigma(i, i), 1.0);
}

TEST(BandMatrices, BandZeroing) {
    const Index N = 50;
    const auto m = build_band_matrices(N, BandParams{}, 2);
    const double width = 0.9 * N;
    for (Index i = 0; i < N; ++i)
        for (Index j = 0; j < N; ++j) {
            const Index d = std::abs(i - j);
            if (d > width) {
                EXPECT_EQ(m.sigma(i, j), 0.0);
                EXPECT_EQ(m.band_kernel(i, j), 0.0);
            } else if (d > 0) {
                EXPECT_DOUBLE_EQ(m.sigma(i, j), 0.4 / static_cast<double>(d * d));
            }
        }
    EXPECT_NE(m.sigma(0, 45), 0.0);
    EXPECT_EQ(m.sigma(0, 46), 0.0);
}

TEST(BandMatrices, CholeskyReconstructs) {
    const auto m = build_band_matrices(50, BandParams{}, 2);
    EXPECT_LE((m.sigma_chol * m.sigma_chol.transpose() - m.sigma).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_TRUE(m.sigma_chol.isLowerTriangular());
}

TEST(BandMatrices, LagFilters) {
    const Index N = 20;
    const auto m = build_band_matrices(N, BandParams{}, 2);
    EXPECT_TRUE(m.lag_matrix(0).isIdentity());
    const Eigen::MatrixXd a1 = m.lag_matrix(1), a2 = m.lag_matrix(2);
    for (Index i = 0; i < N; ++i)
        for (Index j = 0; j < N; ++j) {
            const Index d = std::abs(i - j);
            const double k = d == 0 ? 0.6 : (d <= 18 ? 0.6 / static_cast<double>(d * d) : 0.0);
            EXPECT_DOUBLE_EQ(a1(i, j), k);
            EXPECT_DOUBLE_EQ(a2(i, j), k / 2.0);
        }
    EXPECT_TRUE(m.lag_matrix(3).isZero());
    EXPECT_EQ(m.max_lag(), 2);
}

TEST(BandMatrices, IndependentHasNoLags) {
    const auto m = build_band_matrices(20, BandParams{}, 0);
    EXPECT_EQ(m.max_lag(), 0);
    EXPECT_TRUE(m.lag_matrix(1).isZero());
    EXPECT_LE((m.longrun_covariance() - m.sigma).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BandMatrices, InfiniteTailIsScalarAndTruncated) {
    const auto m = build_band_matrices(10, BandParams{}, 399);
    EXPECT_EQ(m.max_lag(), kInfiniteLagCutoff);
    for (int h = 3; h <= kInfiniteLagCutoff; ++h) {
        const Eigen::MatrixXd a = m.lag_matrix(h);
        EXPECT_TRUE(a.isApprox(std::exp(-2.0 * h) * Eigen::MatrixXd::Identity(10, 10)));
    }
    // Lags are dropped from the first one whose weight falls below 1e-12.
    EXPECT_GE(std::exp(-2.0 * kInfiniteLagCutoff), 1e-12);
    EXPECT_LT(std::exp(-2.0 * (kInfiniteLagCutoff + 1)), 1e-12);
    EXPECT_TRUE(m.lag_matrix(kInfiniteLagCutoff + 1).isZero());
    // Short panels stop at their own order.
    EXPECT_EQ(build_band_matrices(10, BandParams{}, 6).max_lag(), 6);
}

TEST(BandMatrices, RejectsIndefiniteSigma) {
    try {
        build_band_matrices(50, BandParams{0.9, 0.6, 3.0}, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
        EXPECT_NE(std::string(e.what()).find("eigenvalue"), std::string::npos);
    }
}

TEST(Factors, Deterministic) {
    RngStream a(1, 2), b(1, 2);
    EXPECT_EQ(simulate_factors(300, a), simulate_factors(300, b));
    RngStream c(1, 3);
    EXPECT_NE(simulate_factors(300, a), simulate_factors(300, c));
}

TEST(Factors, MarketStationaryMean) {
    RngStream s(2024, 0);
    const Eigen::MatrixXd f = simulate_factors(200000, s);
    ASSERT_EQ(f.cols(), 3);
    const double want = 0.53 / (1.0 - 0.06);
    EXPECT_NEAR(f.col(0).mean(), want, 0.02 * want);
    EXPECT_TRUE(f.allFinite());
}

TEST(Factors, StationaryMomentsOfAllSeries) {
    // h_t is driven by the lagged squared innovation zeta^2 (unit mean), so
    // E h = (w + r) / (1 - g); Var f = E h / (1 - a^2); mean c / (1 - a).
    RngStream s(2024, 1);
    const Eigen::MatrixXd f = simulate_factors(400000, s);
    const double law[3][5] = {{0.53, 0.06, 0.89, 0.85, 0.11}, {0.19, 0.19, 0.62, 0.74, 0.19}, {0.19, 0.05, 0.80, 0.76, 0.15}};
    for (int j = 0; j < 3; ++j) {
        const double mean = law[j][0] / (1.0 - law[j][1]);
        const double var = (law[j][2] + law[j][4]) / (1.0 - law[j][3]) / (1.0 - law[j][1] * law[j][1]);
        const double m = f.col(j).mean();
        const double v = (f.col(j).array() - m).square().mean();
        EXPECT_NEAR(m, mean, 5.0 * std::sqrt(var / 400000.0) / (1.0 - law[j][1])) << j;
        EXPECT_NEAR(v, var, 0.05 * var) << j;
    }
}

TEST(Betas, RangesAndMeans) {
    RngStream s(2024, 2);
    const Eigen::MatrixXd b = simulate_betas(100000, s);
    EXPECT_GE(b.col(0).minCoeff(), 0.2);
    EXPECT_LE(b.col(0).maxCoeff(), 2.0);
    EXPECT_GE(b.col(1).minCoeff(), -1.0);
    EXPECT_LE(b.col(1).maxCoeff(), 1.5);
    EXPECT_GE(b.col(2).minCoeff(), -1.5);
    EXPECT_LE(b.col(2).maxCoeff(), 1.5);
    EXPECT_NEAR(b.col(1).mean(), 0.25, 0.01 * 0.25);
    // The same mean against four Monte Carlo standard errors, sd = 2.5 / sqrt(12 N).
    const double se = 2.5 / std::sqrt(12.0 * 100000.0);
    EXPECT_NEAR(b.col(1).mean(), 0.25, 4.0 * se);
    EXPECT_NEAR(b.col(0).mean(), 1.1, 4.0 * 1.8 / std::sqrt(12.0 * 100000.0));
    EXPECT_NEAR(b.col(2).mean(), 0.0, 4.0 * 3.0 / std::sqrt(12.0 * 100000.0));
    RngStream a(2024, 2);
    EXPECT_EQ(simulate_betas(100000, a), b);
}

TEST(Alphas, NullIsZero) {
    RngStream s(1, 1);
    EXPECT_TRUE(simulate_alphas(100, 400, AlphaSpec::null(), s).isZero());
}

TEST(Alphas, SparseUniformBoundAndSupport) {
    const auto spec = AlphaSpec::sparse_uniform(15, 80.0);
    const double bound = std::sqrt(80.0 * std::log(500.0) / (15.0 * 400.0));
    EXPECT_NEAR(spec.upper_bound(500, 400), bound, 1e-15);
    EXPECT_NEAR(bound, 0.2879, 1e-4);
    for (std::uint64_t r = 0; r < 200; ++r) {
        RngStream s(77, r);
        const Eigen::VectorXd a = simulate_alphas(500, 400, spec, s);
        ASSERT_EQ((a.array() != 0.0).count(), 15);
        ASSERT_GE(a.minCoeff(), 0.0);
        ASSERT_LE(a.maxCoeff(), bound);
    }
}

TEST(Alphas, SignalStrengthBound) {
    const auto spec = AlphaSpec::signal_strength(5, 8.0);
    EXPECT_NEAR(spec.upper_bound(250, 400), std::sqrt(8.0 * std::log(250.0) / 400.0), 1e-15);
    RngStream s(3, 3);
    const Eigen::VectorXd a = simulate_alphas(250, 400, spec, s);
    EXPECT_EQ((a.array() != 0.0).count(), 5);
    EXPECT_LE(a.maxCoeff(), spec.upper_bound(250, 400));
}

TEST(Alphas, SupportIsSpreadAcrossSecurities) {
    std::vector<int> hits(20, 0);
    for (std::uint64_t r = 0; r < 4000; ++r) {
        RngStream s(8, r);
        const Eigen::VectorXd a = simulate_alphas(20, 100, AlphaSpec::sparse_uniform(3, 12.0), s);
        for (Index i = 0; i < 20; ++i) hits[i] += a(i) != 0.0;
    }
    // Expected 600 hits each; binomial sd about 23.
    for (int h : hits) EXPECT_NEAR(h, 600, 120);
}

TEST(Alphas, RejectsOversizedSupport) {
    RngStream s(1, 1);
    EXPECT_THROW(simulate_alphas(10, 100, AlphaSpec::sparse_uniform(11, 12.0), s), Error);
}

TEST(Errors, IndependentCovarianceMatchesSigma) {
    const auto cfg = small_config(Dependence::Independent, 20, 50000);
    RngStream s(2024, 3);
    const TimeMajorMatrix e = simulate_errors(cfg, s);
    const Eigen::MatrixXd cov = (e.transpose() * e) / static_cast<double>(e.rows());
    const auto m = build_band_matrices(20, BandParams{}, 0);
    EXPECT_LE((cov - m.sigma).cwiseAbs().maxCoeff(), 0.05);
}

TEST(Errors, TwoDependentLagThreeVanishes) {
    // Lag-h trace of the autocovariance, replicated over independent streams.
    const auto cfg = small_config(Dependence::MDependent, 20, 500);
    const auto m = build_band_matrices(20, BandParams{}, 2);
    std::vector<double> lag2, lag3;
    for (std::uint64_t r = 0; r < 200; ++r) {
        RngStream s(2024, 100 + r);
        const TimeMajorMatrix e = simulate_errors(cfg, m, s);
        const Index T = e.rows();
        double t2 = 0.0, t3 = 0.0;
        for (Index t = 3; t < T; ++t) {
            t2 += e.row(t).dot(e.row(t - 2));
            t3 += e.row(t).dot(e.row(t - 3));
        }
        lag2.push_back(t2 / T);
        lag3.push_back(t3 / T);
    }
    const double se3 = oracle::stddev(lag3) / std::sqrt(200.0);
    EXPECT_LT(std::abs(oracle::mean(lag3)), 4.0 * se3);
    // Population lag-2 trace is tr(A_2 Sigma).
    const double want2 = (m.lag_matrix(2) * m.sigma).trace();
    const double se2 = oracle::stddev(lag2) / std::sqrt(200.0);
    EXPECT_NEAR(oracle::mean(lag2), want2, 4.0 * se2);
    EXPECT_GT(want2, 10.0 * se2);
}

TEST(Errors, Deterministic) {
    const auto cfg = small_config(Dependence::Infinite, 15, 80);
    RngStream a(5, 5), b(5, 5);
    EXPECT_EQ(simulate_errors(cfg, a), simulate_errors(cfg, b));
    auto t3 = cfg;
    t3.innovation = Innovation::StudentT3;
    RngStream c(5, 5), d(5, 5);
    EXPECT_EQ(simulate_errors(t3, c), simulate_errors(t3, d));
}

TEST(GeneratePanel, ReconstructsFromComponents) {
    auto cfg = small_config(Dependence::MDependent, 30, 120);
    cfg.alpha = AlphaSpec::sparse_uniform(4, 80.0);
    RngStream stream(9, 4);
    const auto sim = generate_panel(cfg, stream);

    auto fs = stream.substream(kFactorStream);
    auto bs = stream.substream(kBetaStream);
    auto as = stream.substream(kAlphaStream);
    auto es = stream.substream(kErrorStream);
    const Eigen::MatrixXd F = simulate_factors(120, fs);
    const Eigen::MatrixXd B = simulate_betas(30, bs);
    const Eigen::VectorXd alpha = simulate_alphas(30, 120, cfg.alpha, as);
    const Eigen::MatrixXd E = simulate_errors(cfg, es);
    EXPECT_EQ(sim.panel.factors, F);
    EXPECT_EQ(sim.beta, B);
    EXPECT_EQ(sim.alpha, alpha);
    Eigen::MatrixXd Y = F * B.transpose() + E;
    Y.rowwise() += alpha.transpose();
    EXPECT_LE((sim.panel.returns - Y).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GeneratePanel, NullHasCenteredResiduals) {
    auto cfg = small_config(Dependence::Independent, 40, 2000);
    cfg.seed = 12;
    const auto sim = generate_panel(cfg);
    EXPECT_TRUE(sim.alpha.isZero());
    const Eigen::MatrixXd eps = sim.panel.returns - sim.panel.factors * sim.beta.transpose();
    // Unit-variance errors: column means have sd 1/sqrt(T).
    EXPECT_LE(eps.colwise().mean().cwiseAbs().maxCoeff(), 4.5 / std::sqrt(2000.0));
}

TEST(GeneratePanel, SeedDeterminesPanel) {
    auto cfg = small_config(Dependence::MDependent, 20, 60);
    cfg.seed = 31;
    const auto a = generate_panel(cfg);
    const auto b = generate_panel(cfg);
    EXPECT_EQ(a.panel.returns, b.panel.returns);
    cfg.seed = 32;
    EXPECT_NE(generate_panel(cfg).panel.returns, a.panel.returns);
}

TEST(DgpConfig, Validation) {
    DgpConfig c;
    EXPECT_NO_THROW(c.validate());
    c.band.omega_band = 0.0;
    EXPECT_THROW(c.validate(), Error);
    c = DgpConfig{};
    c.band.omega_band = 0.001;
    c.securities = 10;
    EXPECT_THROW(c.validate(), Error);
    c = DgpConfig{};
    c.alpha = AlphaSpec::sparse_uniform(300, 12.0);
    EXPECT_THROW(c.validate(), Error);
    EXPECT_EQ(small_config(Dependence::Infinite, 5, 400).dependence_order(), 399);
    EXPECT_EQ(small_config(Dependence::MDependent, 5, 400).dependence_order(), 2);
    EXPECT_EQ(default_sparse_scale(Dependence::Independent), 12.0);
    EXPECT_EQ(default_sparse_scale(Dependence::MDependent), 80.0);
    EXPECT_EQ(default_sparse_scale(Dependence::Infinite), 90.0);
}

TEST(DgpConfig, NamesRoundTrip) {
    for (auto d : {Dependence::Independent, Dependence::MDependent, Dependence::Infinite})
        EXPECT_EQ(parse_dependence(dependence_name(d)), d);
    for (auto i : {Innovation::Normal, Innovation::StudentT3}) EXPECT_EQ(parse_innovation(innovation_name(i)), i);
    for (auto k : {AlphaSpec::Kind::Null, AlphaSpec::Kind::SparseUniform, AlphaSpec::Kind::SignalStrength})
        EXPECT_EQ(parse_alpha_kind(alpha_kind_name(k)), k);
    EXPECT_THROW(parse_dependence("m3"), Error);
}
