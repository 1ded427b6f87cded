#include "hdalpha/panel_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "hdalpha/distributions.hpp"
#include "hdalpha/errors.hpp"
#include "text_util.hpp"

namespace hdalpha {

namespace {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::string> dates;
    std::vector<std::size_t> lines;  ///< 1-based file line of each data row
    std::vector<std::vector<double>> rows;
};

CsvTable parse_csv(const std::string& content, const std::string& source) {
    CsvTable table;
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::unordered_set<std::string> seen_dates;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        const auto cells = text::split(line, ',');
        if (!have_header) {
            for (auto c : cells) table.header.emplace_back(text::trim(c));
            if (table.header.empty() || table.header.front() != "date") {
                throw ParseError(source, line_no, 1, "header must start with 'date'");
            }
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw ParseError(source, line_no, 0,
                             "expected " + std::to_string(table.header.size()) + " cells, found " +
                                 std::to_string(cells.size()));
        }
        std::string date(text::trim(cells[0]));
        if (date.empty()) throw ParseError(source, line_no, 1, "missing date");
        if (!seen_dates.insert(date).second) throw ParseError(source, line_no, 1, "duplicate date '" + date + "'");
        std::vector<double> values;
        values.reserve(cells.size() - 1);
        for (std::size_t c = 1; c < cells.size(); ++c) {
            const auto cell = text::trim(cells[c]);
            if (cell.empty()) throw ParseError(source, line_no, c + 1, "missing value");
            const auto v = text::parse_double(cell);
            if (!v || !std::isfinite(*v)) {
                throw ParseError(source, line_no, c + 1, "non-numeric value '" + std::string(cell) + "'");
            }
            values.push_back(*v);
        }
        table.dates.push_back(std::move(date));
        table.lines.push_back(line_no);
        table.rows.push_back(std::move(values));
    }
    if (!have_header) throw ParseError(source, 0, 0, "empty file");
    if (table.rows.empty()) throw ParseError(source, 0, 0, "no data rows");
    return table;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, 0, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << content;
    if (!out) throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

}  // namespace

PanelData parse_panel(const std::string& returns_csv, const std::string& factors_csv,
                      const std::string& returns_source, const std::string& factors_source) {
    const auto returns = parse_csv(returns_csv, returns_source);
    const auto factors = parse_csv(factors_csv, factors_source);

    if (returns.header.size() < 2) throw ParseError(returns_source, 1, 0, "no security columns");
    std::unordered_set<std::string> ids;
    for (std::size_t c = 1; c < returns.header.size(); ++c) {
        if (returns.header[c].empty()) throw ParseError(returns_source, 1, c + 1, "empty security id");
        if (!ids.insert(returns.header[c]).second) {
            throw ParseError(returns_source, 1, c + 1, "duplicate security id '" + returns.header[c] + "'");
        }
    }
    const std::size_t expected_factor_cols = std::size(kFactorColumns) + 1;
    bool header_ok = factors.header.size() == expected_factor_cols;
    for (std::size_t c = 1; header_ok && c < expected_factor_cols; ++c) header_ok = factors.header[c] == kFactorColumns[c - 1];
    if (!header_ok) throw ParseError(factors_source, 1, 0, "factor header must be date,mkt_rf,smb,hml,rf");

    std::unordered_map<std::string, std::size_t> factor_row;
    for (std::size_t k = 0; k < factors.dates.size(); ++k) factor_row.emplace(factors.dates[k], k);
    std::unordered_set<std::string> return_dates(returns.dates.begin(), returns.dates.end());
    for (std::size_t k = 0; k < returns.dates.size(); ++k) {
        if (!factor_row.count(returns.dates[k])) {
            throw ParseError(returns_source, returns.lines[k], 1,
                             "date '" + returns.dates[k] + "' has no match in the factor file");
        }
    }
    for (std::size_t k = 0; k < factors.dates.size(); ++k) {
        if (!return_dates.count(factors.dates[k])) {
            throw ParseError(factors_source, factors.lines[k], 1,
                             "date '" + factors.dates[k] + "' has no match in the returns file");
        }
    }

    const auto t = static_cast<Index>(returns.rows.size());
    const auto n = static_cast<Index>(returns.header.size() - 1);
    PanelData panel;
    panel.returns.resize(t, n);
    panel.factors.resize(t, 3);
    panel.security_ids.assign(returns.header.begin() + 1, returns.header.end());
    panel.time_ids = returns.dates;
    for (Index r = 0; r < t; ++r) {
        const auto& f = factors.rows[factor_row.at(returns.dates[static_cast<std::size_t>(r)])];
        const double rf = f[3];
        for (Index i = 0; i < n; ++i) panel.returns(r, i) = returns.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] - rf;
        for (Index j = 0; j < 3; ++j) panel.factors(r, j) = f[static_cast<std::size_t>(j)];
    }
    return panel;
}

PanelData load_panel(const std::string& returns_path, const std::string& factors_path) {
    return parse_panel(read_file(returns_path), read_file(factors_path), returns_path, factors_path);
}

void format_panel(const PanelData& panel, std::string& returns_csv, std::string& factors_csv) {
    if (panel.factor_count() != 3) throw Error(ErrorCode::InvalidArgument, "panel files hold exactly three factors");
    panel.validate();
    std::ostringstream r;
    r << "date";
    for (const auto& id : panel.security_ids) r << ',' << id;
    r << '\n';
    std::ostringstream f;
    f << "date,mkt_rf,smb,hml,rf\n";
    for (Index t = 0; t < panel.periods(); ++t) {
        const auto& date = panel.time_ids[static_cast<std::size_t>(t)];
        r << date;
        for (Index i = 0; i < panel.securities(); ++i) r << ',' << text::format_double(panel.returns(t, i));
        r << '\n';
        f << date;
        for (Index j = 0; j < 3; ++j) f << ',' << text::format_double(panel.factors(t, j));
        f << ",0\n";
    }
    returns_csv = r.str();
    factors_csv = f.str();
}

void write_panel(const PanelData& panel, const std::string& returns_path, const std::string& factors_path) {
    std::string returns_csv, factors_csv;
    format_panel(panel, returns_csv, factors_csv);
    write_file(returns_path, returns_csv);
    write_file(factors_path, factors_csv);
}

BoxPierceResult box_pierce_test(const Eigen::Ref<const Eigen::VectorXd>& series, int lags) {
    const Index t = series.size();
    if (lags < 1) throw Error(ErrorCode::InvalidArgument, "Box-Pierce needs at least one lag");
    if (t <= lags) throw Error(ErrorCode::InvalidArgument, "Box-Pierce needs more observations than lags");
    const Eigen::VectorXd centered = series.array() - series.mean();
    const double denom = centered.squaredNorm();
    if (!(denom > 0.0)) throw Error(ErrorCode::ZeroVarianceSeries, "zero-variance series");
    double q = 0.0;
    for (int h = 1; h <= lags; ++h) {
        const double rho = centered.tail(t - h).dot(centered.head(t - h)) / denom;
        q += rho * rho;
    }
    q *= static_cast<double>(t);
    return {q, chi_square_sf(q, lags)};
}

double box_pierce(const Eigen::Ref<const Eigen::VectorXd>& series, int lags) {
    return box_pierce_test(series, lags).p_value;
}

DiagnosticsReport diagnose_residuals(const PanelData& panel, int lags, int bins) {
    if (bins < 1) throw Error(ErrorCode::InvalidArgument, "histogram needs at least one bin");
    const auto fit = fit_factor_model(panel);
    DiagnosticsReport report;
    report.lags = lags;
    report.security_ids = panel.security_ids;
    report.bin_counts.assign(static_cast<std::size_t>(bins), 0);
    for (int b = 0; b <= bins; ++b) report.bin_edges.push_back(static_cast<double>(b) / bins);
    for (Index i = 0; i < fit.securities(); ++i) {
        const Eigen::VectorXd column = fit.residuals.col(i);
        double p;
        try {
            p = box_pierce(column, lags);
        } catch (const Error& err) {
            throw with_context(err, "security '" + panel.security_ids[static_cast<std::size_t>(i)] + "'");
        }
        report.p_values.push_back(p);
        auto bin = static_cast<std::size_t>(p * bins);
        if (bin >= report.bin_counts.size()) bin = report.bin_counts.size() - 1;
        ++report.bin_counts[bin];
    }
    return report;
}

}  // namespace hdalpha
