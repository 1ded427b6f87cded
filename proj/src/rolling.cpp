#include "hdalpha/rolling.hpp"

#include <sstream>

#include "hdalpha/combine.hpp"
#include "hdalpha/errors.hpp"
#include "hdalpha/max_test.hpp"
#include "hdalpha/parallel.hpp"
#include "hdalpha/sum_test.hpp"
#include "text_util.hpp"

namespace hdalpha {

Index rolling_window_count(Index periods, Index window, Index step) {
    if (window < 1 || step < 1) throw Error(ErrorCode::InvalidArgument, "window and step must be positive");
    if (periods < window) throw Error(ErrorCode::InvalidArgument, "panel shorter than the rolling window");
    return (periods - window) / step + 1;
}

PanelTestResult test_panel(const PanelData& panel, std::optional<Bandwidth> bandwidth) {
    const auto fit = fit_factor_model(panel);
    const Bandwidth m = bandwidth.value_or(Bandwidth::default_for(panel.securities(), panel.periods()));
    const auto sum = sum_test(fit, m);
    const auto max = max_test(fit, m);
    const auto cc = cauchy_combine(max.p_value(), sum.p_value());
    PanelTestResult out;
    out.t_sum = sum.statistic();
    out.z_sum = *sum.location_scale_adjusted();
    out.p_sum = sum.p_value();
    out.t_max = max.statistic();
    out.centered_max = *max.location_scale_adjusted();
    out.p_max = max.p_value();
    out.cc_statistic = cc.statistic();
    out.p_cc = cc.p_value();
    out.bandwidth = m.lags();
    return out;
}

RollingReport rolling_test(const PanelData& panel, const RollingOptions& options) {
    panel.validate();
    const Index count = rolling_window_count(panel.periods(), options.window, options.step);
    RollingReport report;
    report.window_length = options.window;
    report.step = options.step;
    report.entries.resize(static_cast<std::size_t>(count));
    const unsigned threads = options.threads == 0 ? default_thread_count() : options.threads;
    parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t k) {
        const Index start = static_cast<Index>(k) * options.step;
        const auto slice = panel.slice_periods(start, options.window);
        try {
            const auto res = test_panel(slice, options.bandwidth);
            report.entries[k] = {slice.time_ids.front(), slice.time_ids.back(), res.p_sum, res.p_max, res.p_cc};
        } catch (const Error& err) {
            throw with_context(err, "window starting at '" + slice.time_ids.front() + "'");
        }
    });
    return report;
}

std::string rolling_csv(const RollingReport& report) {
    std::ostringstream os;
    os << "window_start,window_end,p_sum,p_max,p_cc\n";
    for (const auto& e : report.entries) {
        os << e.window_start_id << ',' << e.window_end_id << ',' << text::format_double(e.p_sum) << ','
           << text::format_double(e.p_max) << ',' << text::format_double(e.p_cc) << '\n';
    }
    return os.str();
}

}  // namespace hdalpha
