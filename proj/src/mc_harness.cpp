#include "hdalpha/mc_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <json.hpp>
#include <sstream>

#include "hdalpha/combine.hpp"
#include "hdalpha/errors.hpp"
#include "hdalpha/max_test.hpp"
#include "hdalpha/parallel.hpp"
#include "hdalpha/sum_test.hpp"
#include "text_util.hpp"

namespace hdalpha {

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool wants(const std::vector<Method>& methods, Method m) {
    return std::find(methods.begin(), methods.end(), m) != methods.end();
}

std::string describe(const StudyConfig& config, std::size_t replication) {
    const auto& d = config.dgp;
    std::ostringstream os;
    os << "replication " << replication << " (N=" << d.securities << ", T=" << d.periods
       << ", dependence=" << dependence_name(d.dependence) << ", innovation=" << innovation_name(d.innovation)
       << ", alpha=" << alpha_kind_name(d.alpha.kind) << ")";
    return os.str();
}

ReplicationRecord run_replication(const StudyConfig& config, const BandMatrices& matrices, Bandwidth bandwidth,
                                  std::uint64_t base_seed, std::size_t r, bool need_sum, bool need_max) {
    RngStream stream(base_seed, r);
    const auto sim = generate_panel(config.dgp, matrices, stream);
    const auto fit = fit_factor_model(sim.panel);

    ReplicationRecord rec{r, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    if (need_sum) {
        const auto sum = sum_test(fit, bandwidth);
        rec.z_sum = *sum.location_scale_adjusted();
        rec.p_sum = sum.p_value();
    }
    if (need_max) {
        const auto max = max_test(fit, bandwidth);
        rec.centered_max = *max.location_scale_adjusted();
        rec.p_max = max.p_value();
    }
    if (need_sum && need_max) {
        rec.p_cc = cauchy_combine(rec.p_max, rec.p_sum).p_value();
        rec.p_minp = min_p_combine(rec.p_max, rec.p_sum).p_value();
    }
    return rec;
}

double record_p(const ReplicationRecord& rec, Method method) {
    switch (method) {
        case Method::Sum:
            return rec.p_sum;
        case Method::Max:
            return rec.p_max;
        case Method::CauchyCombo:
            return rec.p_cc;
        case Method::MinPCombo:
            return rec.p_minp;
    }
    return kNaN;
}

std::string fmt(double v) { return text::format_double(v); }

}  // namespace

const MethodTally& StudyResult::tally(Method method) const {
    for (const auto& t : methods)
        if (t.method == method) return t;
    throw Error(ErrorCode::InvalidArgument, "method " + std::string(method_name(method)) + " not in study");
}

StudyResult run_study(const StudyConfig& config, const StudyOptions& options) {
    config.validate();
    if (options.reps < 1) throw Error(ErrorCode::InvalidArgument, "reps must be >= 1");
    if (options.methods.empty()) throw Error(ErrorCode::InvalidArgument, "no methods requested");

    const auto& methods = options.methods;
    const bool combos = wants(methods, Method::CauchyCombo) || wants(methods, Method::MinPCombo);
    const bool need_sum = options.keep_raw || combos || wants(methods, Method::Sum);
    const bool need_max = options.keep_raw || combos || wants(methods, Method::Max);

    const Bandwidth bandwidth = config.resolved_bandwidth();
    const auto matrices = build_band_matrices(config.dgp.securities, config.dgp.band, config.dgp.dependence_order());

    std::vector<ReplicationRecord> records(options.reps);
    const unsigned threads = options.threads == 0 ? default_thread_count() : options.threads;
    parallel_for(options.reps, threads, [&](std::size_t r) {
        try {
            records[r] = run_replication(config, matrices, bandwidth, options.base_seed, r, need_sum, need_max);
        } catch (const Error& err) {
            throw with_context(err, describe(config, r));
        }
    });

    StudyResult result;
    result.config = config;
    result.bandwidth = bandwidth.lags();
    result.reps = options.reps;
    result.base_seed = options.base_seed;
    const double reps = static_cast<double>(options.reps);
    for (Method m : methods) {
        MethodTally tally{m};
        for (const auto& rec : records)
            if (record_p(rec, m) <= config.level) ++tally.rejections;
        tally.rate = static_cast<double>(tally.rejections) / reps;
        tally.mc_stderr = std::sqrt(tally.rate * (1.0 - tally.rate) / reps);
        result.methods.push_back(tally);
    }
    if (options.keep_raw) result.raw = std::move(records);
    return result;
}

std::vector<StudyResult> power_profile(const StudyConfig& base, const std::vector<AlphaSpec>& grid,
                                       const StudyOptions& options) {
    std::vector<StudyResult> out;
    out.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        StudyConfig point = base;
        point.dgp.alpha = grid[k];
        StudyOptions point_options = options;
        point_options.base_seed = derive_seed(options.base_seed, k);
        out.push_back(run_study(point, point_options));
    }
    return out;
}

std::vector<StudyResult> sparsity_profile(const StudyConfig& base, const std::vector<Index>& sparsity, double scale,
                                          const StudyOptions& options) {
    std::vector<AlphaSpec> grid;
    for (Index s : sparsity) grid.push_back(AlphaSpec::sparse_uniform(s, scale));
    return power_profile(base, grid, options);
}

std::vector<StudyResult> signal_profile(const StudyConfig& base, Index sparsity, const std::vector<double>& deltas,
                                        const StudyOptions& options) {
    std::vector<AlphaSpec> grid;
    for (double d : deltas) grid.push_back(AlphaSpec::signal_strength(sparsity, d));
    return power_profile(base, grid, options);
}

std::string study_csv(const std::vector<StudyResult>& results) {
    std::ostringstream os;
    os << "method,reps,rejections,rate,stderr,gamma,N,T,dependence,innovation,M\n";
    for (const auto& res : results) {
        const auto& d = res.config.dgp;
        for (const auto& t : res.methods) {
            os << method_name(t.method) << ',' << res.reps << ',' << t.rejections << ',' << fmt(t.rate) << ','
               << fmt(t.mc_stderr) << ',' << fmt(res.config.level) << ',' << d.securities << ',' << d.periods << ','
               << dependence_name(d.dependence) << ',' << innovation_name(d.innovation) << ',' << res.bandwidth
               << '\n';
        }
    }
    return os.str();
}

std::string study_json(const std::vector<StudyResult>& results) {
    using nlohmann::json;
    json studies = json::array();
    for (const auto& res : results) {
        const auto& d = res.config.dgp;
        json config = {
            {"N", d.securities},
            {"T", d.periods},
            {"dependence", dependence_name(d.dependence)},
            {"innovation", innovation_name(d.innovation)},
            {"omega_band", d.band.omega_band},
            {"phi1", d.band.phi1},
            {"phi2", d.band.phi2},
            {"alpha_kind", alpha_kind_name(d.alpha.kind)},
            {"gamma", res.config.level},
            {"M", res.bandwidth},
        };
        if (d.alpha.kind != AlphaSpec::Kind::Null) {
            config["s"] = d.alpha.count;
            config[d.alpha.kind == AlphaSpec::Kind::SparseUniform ? "c" : "delta"] = d.alpha.scale;
        }
        json methods = json::array();
        for (const auto& t : res.methods) {
            methods.push_back({{"method", method_name(t.method)},
                               {"rejections", t.rejections},
                               {"rate", t.rate},
                               {"stderr", t.mc_stderr}});
        }
        json study = {{"config", config}, {"reps", res.reps}, {"base_seed", res.base_seed}, {"methods", methods}};
        if (!res.raw.empty()) {
            json raw = json::array();
            for (const auto& rec : res.raw) {
                raw.push_back({{"replication", rec.replication},
                               {"z_sum", rec.z_sum},
                               {"centered_max", rec.centered_max},
                               {"p_sum", rec.p_sum},
                               {"p_max", rec.p_max},
                               {"p_cc", rec.p_cc}});
            }
            study["raw"] = raw;
        }
        studies.push_back(study);
    }
    json doc = {{"schema_version", kSchemaVersion}, {"studies", studies}};
    return doc.dump(2) + "\n";
}

}  // namespace hdalpha
