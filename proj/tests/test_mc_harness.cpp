#include "hdalpha/combine.hpp"
#include "hdalpha/errors.hpp"
#include "hdalpha/max_test.hpp"
#include "hdalpha/mc_harness.hpp"
#include "hdalpha/study_config.hpp"
#include "hdalpha/sum_test.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>

using namespace hdalpha;

namespace {

StudyConfig small_study(Dependence dep = Dependence::MDependent) {
    StudyConfig c;
    c.dgp.securities = 40;
    c.dgp.periods = 100;
    c.dgp.dependence = dep;
    return c;
}

StudyOptions options(std::size_t reps, unsigned threads, bool raw = false) {
    StudyOptions o;
    o.reps = reps;
    o.base_seed = 555;
    o.threads = threads;
    o.keep_raw = raw;
    o.methods = {Method::Sum, Method::Max, Method::CauchyCombo, Method::MinPCombo};
    return o;
}

}  // namespace

TEST(RunStudy, IdenticalAcrossThreadCounts) {
    const auto cfg = small_study();
    const auto one = run_study(cfg, options(16, 1, true));
    const auto four = run_study(cfg, options(16, 4, true));
    const auto eight = run_study(cfg, options(16, 8, true));
    EXPECT_EQ(study_csv({one}), study_csv({four}));
    EXPECT_EQ(study_csv({one}), study_csv({eight}));
    EXPECT_EQ(study_json({one}), study_json({eight}));
    const auto single = run_study(cfg, options(1, 1));
    EXPECT_EQ(study_json({single}), study_json({run_study(cfg, options(1, 8))}));
}

TEST(RunStudy, SameSeedSameResultDifferentSeedDiffers) {
    const auto cfg = small_study(Dependence::Independent);
    auto o = options(20, 2, true);
    const auto a = run_study(cfg, o);
    const auto b = run_study(cfg, o);
    EXPECT_EQ(study_json({a}), study_json({b}));
    o.base_seed = 556;
    const auto c = run_study(cfg, o);
    EXPECT_NE(a.raw[0].z_sum, c.raw[0].z_sum);
}

TEST(RunStudy, TalliesAreCoherent) {
    const auto res = run_study(small_study(), options(40, 2, true));
    ASSERT_EQ(res.raw.size(), 40u);
    EXPECT_EQ(res.reps, 40u);
    EXPECT_EQ(res.bandwidth, 2);
    for (std::size_t r = 0; r < res.raw.size(); ++r) EXPECT_EQ(res.raw[r].replication, r);
    const auto count = [&](auto pick) {
        std::size_t n = 0;
        for (const auto& rec : res.raw) n += pick(rec) <= 0.05;
        return n;
    };
    EXPECT_EQ(res.tally(Method::Sum).rejections, count([](const auto& r) { return r.p_sum; }));
    EXPECT_EQ(res.tally(Method::Max).rejections, count([](const auto& r) { return r.p_max; }));
    EXPECT_EQ(res.tally(Method::CauchyCombo).rejections, count([](const auto& r) { return r.p_cc; }));
    EXPECT_EQ(res.tally(Method::MinPCombo).rejections, count([](const auto& r) { return r.p_minp; }));
    for (const auto& t : res.methods) {
        EXPECT_DOUBLE_EQ(t.rate, static_cast<double>(t.rejections) / 40.0);
        EXPECT_DOUBLE_EQ(t.mc_stderr, std::sqrt(t.rate * (1.0 - t.rate) / 40.0));
    }
}

TEST(RunStudy, RawRecordsMatchDirectTests) {
    const auto cfg = small_study();
    const auto res = run_study(cfg, options(3, 1, true));
    for (std::size_t r = 0; r < 3; ++r) {
        RngStream stream(555, r);
        const auto sim = generate_panel(cfg.dgp, stream);
        const auto fit = fit_factor_model(sim.panel);
        const auto s = sum_test(fit, Bandwidth(2));
        const auto m = max_test(fit, Bandwidth(2));
        EXPECT_DOUBLE_EQ(res.raw[r].z_sum, *s.location_scale_adjusted());
        EXPECT_DOUBLE_EQ(res.raw[r].p_max, m.p_value());
        EXPECT_DOUBLE_EQ(res.raw[r].p_cc, cauchy_combine(m.p_value(), s.p_value()).p_value());
        EXPECT_DOUBLE_EQ(res.raw[r].p_minp, min_p_combine(m.p_value(), s.p_value()).p_value());
    }
}

TEST(RunStudy, FailingReplicationAbortsWithContext) {
    auto cfg = small_study();
    cfg.dgp.securities = 2;
    cfg.dgp.band.omega_band = 1.0;
    try {
        run_study(cfg, options(5, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionTooSmall);
        EXPECT_NE(std::string(e.what()).find("replication 0"), std::string::npos) << e.what();
    }
}

TEST(RunStudy, BandwidthOverrideIsUsed) {
    auto cfg = small_study();
    cfg.bandwidth = Bandwidth(0);
    EXPECT_EQ(run_study(cfg, options(2, 1)).bandwidth, 0);
}

TEST(RunStudy, DenseAlternativeShiftsSumStatistic) {
    auto cfg = small_study(Dependence::Independent);
    const auto null = run_study(cfg, options(150, 0, true));
    cfg.dgp.alpha = AlphaSpec::signal_strength(40, 0.5);
    const auto alt = run_study(cfg, options(150, 0, true));
    std::vector<double> z0, z1;
    for (const auto& r : null.raw) z0.push_back(r.z_sum);
    for (const auto& r : alt.raw) z1.push_back(r.z_sum);
    const double se = std::sqrt((std::pow(oracle::stddev(z0), 2) + std::pow(oracle::stddev(z1), 2)) / 150.0);
    EXPECT_GT(oracle::mean(z1) - oracle::mean(z0), 3.0 * se);
}

TEST(PowerProfile, GridPointsUseDerivedSeeds) {
    const auto cfg = small_study(Dependence::Independent);
    const auto o = options(4, 1);
    const auto prof = sparsity_profile(cfg, {2, 10}, 12.0, o);
    ASSERT_EQ(prof.size(), 2u);
    EXPECT_EQ(prof[0].config.dgp.alpha.count, 2);
    EXPECT_EQ(prof[1].config.dgp.alpha.count, 10);
    EXPECT_EQ(prof[1].base_seed, derive_seed(555, 1));
    auto point = cfg;
    point.dgp.alpha = AlphaSpec::sparse_uniform(10, 12.0);
    auto po = o;
    po.base_seed = derive_seed(555, 1);
    EXPECT_EQ(study_csv({prof[1]}), study_csv({run_study(point, po)}));
    const auto sig = signal_profile(cfg, 5, {1.0, 4.0}, o);
    EXPECT_EQ(sig[1].config.dgp.alpha.kind, AlphaSpec::Kind::SignalStrength);
    EXPECT_EQ(sig[1].config.dgp.alpha.scale, 4.0);
}

TEST(StudyOutput, CsvSchema) {
    const auto res = run_study(small_study(), options(3, 1));
    const std::string csv = study_csv({res});
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "method,reps,rejections,rate,stderr,gamma,N,T,dependence,innovation,M");
    std::string row;
    int rows = 0;
    while (std::getline(in, row)) {
        if (row.empty()) continue;
        ++rows;
        EXPECT_NE(row.find(",3,"), std::string::npos);
        EXPECT_NE(row.find(",m2,normal,2"), std::string::npos) << row;
    }
    EXPECT_EQ(rows, 4);
}

TEST(StudyOutput, JsonSchema) {
    const auto res = run_study(small_study(), options(3, 1, true));
    const auto j = nlohmann::json::parse(study_json({res}));
    EXPECT_EQ(j.at("schema_version"), 1);
    ASSERT_TRUE(j.contains("studies"));
    const auto& s = j["studies"][0];
    EXPECT_EQ(s.at("reps"), 3);
    EXPECT_EQ(s.at("methods").size(), 4u);
    EXPECT_EQ(s.at("raw").size(), 3u);
}

TEST(StudyConfigFile, ParsesAndFormatsRoundTrip) {
    const std::string text =
        "# design point\n"
        "N = 120\nT = 300\ndependence = infinite\ninnovation = t3\n"
        "omega_band = 0.5\nphi1 = 0.3\nphi2 = 0.2\n"
        "alpha_kind = sparse_uniform\ns = 7\nc = 45.5\ngamma = 0.1\nbandwidth = 3\n";
    const auto plan = parse_study_config(text);
    ASSERT_EQ(plan.grid.size(), 1u);
    const auto& d = plan.base.dgp;
    EXPECT_EQ(d.securities, 120);
    EXPECT_EQ(d.periods, 300);
    EXPECT_EQ(d.dependence, Dependence::Infinite);
    EXPECT_EQ(d.innovation, Innovation::StudentT3);
    EXPECT_EQ(d.band.omega_band, 0.5);
    EXPECT_EQ(plan.base.level, 0.1);
    EXPECT_EQ(plan.base.bandwidth->lags(), 3);
    EXPECT_EQ(plan.grid[0].count, 7);
    EXPECT_EQ(plan.grid[0].scale, 45.5);

    StudyConfig point = plan.base;
    point.dgp.alpha = plan.grid[0];
    const auto again = parse_study_config(format_study_config(point));
    EXPECT_EQ(format_study_config(point), [&] {
        StudyConfig p = again.base;
        p.dgp.alpha = again.grid[0];
        return format_study_config(p);
    }());
}

TEST(StudyConfigFile, ListsExpandIntoGrid) {
    const auto plan = parse_study_config("N=50\nT=100\nalpha_kind=signal_strength\ns=2,5\ndelta=1,2,4\n");
    ASSERT_EQ(plan.grid.size(), 6u);
    EXPECT_EQ(plan.grid[0].count, 2);
    EXPECT_EQ(plan.grid[2].scale, 4.0);
    EXPECT_EQ(plan.grid[3].count, 5);
}

TEST(StudyConfigFile, SparseScaleDefaultsByDependence) {
    const auto plan = parse_study_config("N=50\nT=100\ndependence=independent\nalpha_kind=sparse_uniform\ns=3\n");
    EXPECT_EQ(plan.grid[0].scale, 12.0);
    EXPECT_EQ(parse_study_config("N=50\nT=100\nalpha_kind=sparse_uniform\ns=3\n").grid[0].scale, 80.0);
}

TEST(StudyConfigFile, Errors) {
    const auto code_of = [](const std::string& text) {
        try {
            parse_study_config(text, "cfg");
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    EXPECT_EQ(code_of("N=50\nT=100\nfoo=1\n"), ErrorCode::Parse);
    EXPECT_EQ(code_of("N=50\nN=60\nT=100\n"), ErrorCode::Parse);
    EXPECT_EQ(code_of("N=abc\nT=100\n"), ErrorCode::Parse);
    EXPECT_EQ(code_of("N=50\n"), ErrorCode::Parse);
    EXPECT_EQ(code_of("N=50\nT=100\nno equals sign\n"), ErrorCode::Parse);
    try {
        parse_study_config("N=50\nT=100\n\nbogus=1\n", "cfg");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.row(), 4u);
        EXPECT_EQ(e.source(), "cfg");
    }
}
