#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hdalpha/study_config.hpp"
#include "hdalpha/test_outcome.hpp"

namespace hdalpha {

/// Per-replication values kept when StudyOptions::keep_raw is set.
struct ReplicationRecord {
    std::size_t replication = 0;
    double z_sum = 0.0;
    double centered_max = 0.0;
    double p_sum = 0.0;
    double p_max = 0.0;
    double p_cc = 0.0;
    double p_minp = 0.0;
};

struct MethodTally {
    Method method;
    std::size_t rejections = 0;
    double rate = 0.0;
    double mc_stderr = 0.0;  ///< sqrt(rate (1 - rate) / reps)
};

struct StudyResult {
    StudyConfig config;
    int bandwidth = 0;  ///< lags actually used
    std::size_t reps = 0;
    std::uint64_t base_seed = 0;
    std::vector<MethodTally> methods;
    std::vector<ReplicationRecord> raw;  ///< sorted by replication; empty unless requested

    const MethodTally& tally(Method method) const;
};

struct StudyOptions {
    std::size_t reps = 1000;
    std::uint64_t base_seed = 20240101;
    std::vector<Method> methods{Method::Sum, Method::Max, Method::CauchyCombo};
    unsigned threads = 0;  ///< 0 selects the hardware concurrency
    bool keep_raw = false;
};

/// Replication r draws its panel from RngStream(base_seed, r), so the result
/// is bit-identical for any thread count. Any replication error aborts the
/// study; the rethrown Error names the replication and design point.
StudyResult run_study(const StudyConfig& config, const StudyOptions& options);

/// One study per alpha spec; grid point k uses derive_seed(base_seed, k).
std::vector<StudyResult> power_profile(const StudyConfig& base, const std::vector<AlphaSpec>& grid,
                                       const StudyOptions& options);
std::vector<StudyResult> sparsity_profile(const StudyConfig& base, const std::vector<Index>& sparsity, double scale,
                                          const StudyOptions& options);
std::vector<StudyResult> signal_profile(const StudyConfig& base, Index sparsity, const std::vector<double>& deltas,
                                        const StudyOptions& options);

/// Columns: method,reps,rejections,rate,stderr,gamma,N,T,dependence,innovation,M.
/// Rows follow the input order, one per method.
std::string study_csv(const std::vector<StudyResult>& results);
/// Full structure with a schema_version field.
std::string study_json(const std::vector<StudyResult>& results);

}  // namespace hdalpha
