#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hdalpha/panel.hpp"
#include "hdalpha/regression.hpp"

namespace hdalpha {

inline constexpr Index kDefaultRollingWindow = 260;

struct RollingEntry {
    std::string window_start_id;
    std::string window_end_id;
    double p_sum = 0.0;
    double p_max = 0.0;
    double p_cc = 0.0;
};

struct RollingReport {
    Index window_length = kDefaultRollingWindow;
    Index step = 1;
    std::vector<RollingEntry> entries;  ///< chronological
};

struct RollingOptions {
    Index window = kDefaultRollingWindow;
    Index step = 1;
    std::optional<Bandwidth> bandwidth;  ///< per-window default when empty
    unsigned threads = 0;
};

/// Number of windows: floor((T - window) / step) + 1.
Index rolling_window_count(Index periods, Index window, Index step);

/// Fits the factor model on every window and runs the sum, max and Cauchy
/// combination tests. Errors carry the failing window's start id.
RollingReport rolling_test(const PanelData& panel, const RollingOptions& options = {});

/// SUM, MAX and CC p-values on a whole panel, in that order.
struct PanelTestResult {
    double t_sum = 0.0;
    double z_sum = 0.0;
    double p_sum = 0.0;
    double t_max = 0.0;
    double centered_max = 0.0;
    double p_max = 0.0;
    double cc_statistic = 0.0;
    double p_cc = 0.0;
    int bandwidth = 0;
};
PanelTestResult test_panel(const PanelData& panel, std::optional<Bandwidth> bandwidth = std::nullopt);

std::string rolling_csv(const RollingReport& report);

}  // namespace hdalpha
