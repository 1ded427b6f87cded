#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hdalpha/panel.hpp"
#include "hdalpha/regression.hpp"

namespace hdalpha {

/// Factor file columns after `date`.
inline constexpr const char* kFactorColumns[] = {"mkt_rf", "smb", "hml", "rf"};

/// Parses a returns CSV (`date,<id1>,...,<idN>`) and a factors CSV
/// (`date,mkt_rf,smb,hml,rf`). Both files must carry the same set of dates;
/// rows are matched by date and kept in the returns file's order. Returns
/// become excess returns r_it - rf_t; factors are (mkt_rf, smb, hml).
/// Missing or non-numeric cells, duplicate ids or dates, and unmatched dates
/// raise ParseError with file coordinates.
PanelData parse_panel(const std::string& returns_csv, const std::string& factors_csv,
                      const std::string& returns_source = "<returns>", const std::string& factors_source = "<factors>");
PanelData load_panel(const std::string& returns_path, const std::string& factors_path);

/// Writes the panel as excess returns with rf = 0, using round-trip number
/// formatting. The panel must have exactly three factors.
void format_panel(const PanelData& panel, std::string& returns_csv, std::string& factors_csv);
void write_panel(const PanelData& panel, const std::string& returns_path, const std::string& factors_path);

/// Box-Pierce portmanteau p-value: Q = T sum_{h=1..L} rho_h^2 against chi-square(L).
struct BoxPierceResult {
    double q = 0.0;
    double p_value = 1.0;
};
BoxPierceResult box_pierce_test(const Eigen::Ref<const Eigen::VectorXd>& series, int lags);
double box_pierce(const Eigen::Ref<const Eigen::VectorXd>& series, int lags);

inline constexpr int kDefaultBoxPierceLags = 10;

struct DiagnosticsReport {
    int lags = kDefaultBoxPierceLags;
    std::vector<std::string> security_ids;
    std::vector<double> p_values;
    std::vector<double> bin_edges;         ///< bins + 1 equally spaced edges on [0, 1]
    std::vector<std::size_t> bin_counts;   ///< last bin is closed on the right
};

/// Box-Pierce p-value of every security's full-sample factor-model residuals, plus a histogram.
DiagnosticsReport diagnose_residuals(const PanelData& panel, int lags = kDefaultBoxPierceLags, int bins = 10);

}  // namespace hdalpha
