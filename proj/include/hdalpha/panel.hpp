#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace hdalpha {

using Index = Eigen::Index;
/// Time-major storage: row t holds all securities at period t contiguously.
using TimeMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Observed excess returns and factor realizations.
struct PanelData {
    Eigen::MatrixXd returns;  ///< T x N
    Eigen::MatrixXd factors;  ///< T x p
    std::vector<std::string> security_ids;
    std::vector<std::string> time_ids;

    Index periods() const { return returns.rows(); }
    Index securities() const { return returns.cols(); }
    Index factor_count() const { return factors.cols(); }

    /// Checks shapes, labels, T >= p + 2, N >= 1 and finiteness. Rank of the
    /// design is checked when the model is fitted.
    void validate() const;

    /// Periods [start, start + length) with the matching time labels.
    PanelData slice_periods(Index start, Index length) const;
};

/// Panel with default labels "s1".."sN" and "1".."T".
PanelData make_panel(Eigen::MatrixXd returns, Eigen::MatrixXd factors);

}  // namespace hdalpha
