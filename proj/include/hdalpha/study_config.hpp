#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hdalpha/dgp.hpp"
#include "hdalpha/regression.hpp"

namespace hdalpha {

/// One Monte Carlo design point: the data recipe, the bandwidth override and the nominal level.
struct StudyConfig {
    DgpConfig dgp;
    std::optional<Bandwidth> bandwidth;  ///< default ceil(min(N,T)^(1/8)) when empty
    double level = 0.05;

    Bandwidth resolved_bandwidth() const;
    void validate() const;
};

/// A parsed config file. `s`, `c` and `delta` may hold comma-separated lists,
/// which expand into one alpha spec per combination (s varies slowest).
struct StudyPlan {
    StudyConfig base;
    std::vector<AlphaSpec> grid;  ///< never empty; a single entry for plain configs
};

/// Flat `key = value` text; '#' starts a comment. Keys: N, T, dependence,
/// innovation, omega_band, phi1, phi2, alpha_kind, s, c, delta, gamma,
/// bandwidth. Unknown or repeated keys are parse errors.
StudyPlan parse_study_config(const std::string& text, const std::string& source = "<config>");
StudyPlan load_study_config(const std::string& path);

/// Inverse of parse_study_config for a single design point.
std::string format_study_config(const StudyConfig& config);

}  // namespace hdalpha
