#include "hdalpha/panel.hpp"

#include <string>

#include "hdalpha/errors.hpp"

namespace hdalpha {

void PanelData::validate() const {
    const Index t = periods();
    const Index n = securities();
    const Index p = factor_count();
    if (factors.rows() != t) {
        throw Error(ErrorCode::InvalidArgument, "returns have " + std::to_string(t) + " periods but factors have " +
                                                    std::to_string(factors.rows()));
    }
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "panel needs at least one security");
    if (t < p + 2) {
        throw Error(ErrorCode::InvalidArgument, "panel needs T >= p + 2 periods (T=" + std::to_string(t) +
                                                    ", p=" + std::to_string(p) + ")");
    }
    if (static_cast<Index>(security_ids.size()) != n || static_cast<Index>(time_ids.size()) != t) {
        throw Error(ErrorCode::InvalidArgument, "panel labels do not match matrix dimensions");
    }
    if (!returns.allFinite()) throw Error(ErrorCode::InvalidArgument, "returns contain non-finite entries");
    if (!factors.allFinite()) throw Error(ErrorCode::InvalidArgument, "factors contain non-finite entries");
}

PanelData PanelData::slice_periods(Index start, Index length) const {
    if (start < 0 || length < 0 || start + length > periods()) {
        throw Error(ErrorCode::InvalidArgument, "period slice out of range");
    }
    PanelData out;
    out.returns = returns.middleRows(start, length);
    out.factors = factors.middleRows(start, length);
    out.security_ids = security_ids;
    out.time_ids.assign(time_ids.begin() + start, time_ids.begin() + start + length);
    return out;
}

PanelData make_panel(Eigen::MatrixXd returns, Eigen::MatrixXd factors) {
    PanelData panel;
    panel.security_ids.reserve(static_cast<std::size_t>(returns.cols()));
    for (Index i = 0; i < returns.cols(); ++i) panel.security_ids.push_back("s" + std::to_string(i + 1));
    panel.time_ids.reserve(static_cast<std::size_t>(returns.rows()));
    for (Index t = 0; t < returns.rows(); ++t) panel.time_ids.push_back(std::to_string(t + 1));
    panel.returns = std::move(returns);
    panel.factors = std::move(factors);
    return panel;
}

}  // namespace hdalpha
