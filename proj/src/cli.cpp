#include "hdalpha/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "hdalpha/combine.hpp"
#include "hdalpha/errors.hpp"
#include "hdalpha/max_test.hpp"
#include "hdalpha/mc_harness.hpp"
#include "hdalpha/panel_io.hpp"
#include "hdalpha/rolling.hpp"
#include "hdalpha/study_config.hpp"
#include "hdalpha/sum_test.hpp"
#include "text_util.hpp"

namespace hdalpha {

namespace {

constexpr int kSchemaVersion = 1;

struct PanelArgs {
    std::string returns;
    std::string factors;
};

void add_panel_options(CLI::App* cmd, PanelArgs& args) {
    cmd->add_option("--returns", args.returns, "returns CSV (date,<id1>,...,<idN>)")->required();
    cmd->add_option("--factors", args.factors, "factors CSV (date,mkt_rf,smb,hml,rf)")->required();
}

std::optional<Bandwidth> bandwidth_from(int lags) {
    if (lags < 0) return std::nullopt;
    return Bandwidth(lags);
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    file << content;
}

std::string fmt(double v) { return text::format_double(v); }

int run_test(const PanelArgs& io, int lags, bool csv, std::ostream& out) {
    const auto panel = load_panel(io.returns, io.factors);
    const auto res = test_panel(panel, bandwidth_from(lags));
    if (csv) {
        std::ostringstream os;
        os << "method,statistic,adjusted,p_value\n";
        os << "SUM," << fmt(res.t_sum) << ',' << fmt(res.z_sum) << ',' << fmt(res.p_sum) << '\n';
        os << "MAX," << fmt(res.t_max) << ',' << fmt(res.centered_max) << ',' << fmt(res.p_max) << '\n';
        os << "CC," << fmt(res.cc_statistic) << ",," << fmt(res.p_cc) << '\n';
        out << os.str();
        return kExitOk;
    }
    nlohmann::json doc = {
        {"schema_version", kSchemaVersion},
        {"N", panel.securities()},
        {"T", panel.periods()},
        {"M", res.bandwidth},
        {"tests",
         {{{"method", "SUM"}, {"statistic", res.t_sum}, {"adjusted", res.z_sum}, {"p_value", res.p_sum}},
          {{"method", "MAX"}, {"statistic", res.t_max}, {"adjusted", res.centered_max}, {"p_value", res.p_max}},
          {{"method", "CC"}, {"statistic", res.cc_statistic}, {"adjusted", nullptr}, {"p_value", res.p_cc}}}},
    };
    out << doc.dump(2) << '\n';
    return kExitOk;
}

int run_simulate(const std::string& config_path, const std::string& prefix, std::uint64_t seed, std::ostream& out) {
    const auto plan = load_study_config(config_path);
    if (plan.grid.size() != 1) throw Error(ErrorCode::InvalidArgument, "simulate needs a single design point");
    DgpConfig dgp = plan.base.dgp;
    dgp.seed = seed;
    const auto sim = generate_panel(dgp);
    const std::string returns_path = prefix + "_returns.csv";
    const std::string factors_path = prefix + "_factors.csv";
    const std::string truth_path = prefix + "_truth.csv";
    write_panel(sim.panel, returns_path, factors_path);

    std::ostringstream truth;
    truth << "security,alpha,beta_mkt,beta_smb,beta_hml\n";
    for (Index i = 0; i < dgp.securities; ++i) {
        truth << sim.panel.security_ids[static_cast<std::size_t>(i)] << ',' << fmt(sim.alpha(i));
        for (Index j = 0; j < 3; ++j) truth << ',' << fmt(sim.beta(i, j));
        truth << '\n';
    }
    emit(truth.str(), truth_path, out);

    nlohmann::json doc = {{"schema_version", kSchemaVersion},
                          {"returns", returns_path},
                          {"factors", factors_path},
                          {"truth", truth_path},
                          {"N", dgp.securities},
                          {"T", dgp.periods},
                          {"seed", seed}};
    out << doc.dump(2) << '\n';
    return kExitOk;
}

std::vector<Method> parse_methods(const std::string& list) {
    std::vector<Method> methods;
    for (auto part : text::split(list, ',')) methods.push_back(parse_method(text::trim(part)));
    return methods;
}

int run_mc(const std::string& config_path, std::size_t reps, std::uint64_t seed, const std::string& methods,
           unsigned threads, const std::string& format, bool keep_raw, const std::string& out_path,
           std::ostream& out) {
    const auto plan = load_study_config(config_path);
    StudyOptions options;
    options.reps = reps;
    options.base_seed = seed;
    options.methods = parse_methods(methods);
    options.threads = threads;
    options.keep_raw = keep_raw;
    std::vector<StudyResult> results;
    if (plan.grid.size() == 1) {
        results.push_back(run_study(plan.base, options));
    } else {
        results = power_profile(plan.base, plan.grid, options);
    }
    emit(format == "json" ? study_json(results) : study_csv(results), out_path, out);
    return kExitOk;
}

int run_rolling(const PanelArgs& io, Index window, Index step, int lags, unsigned threads,
                const std::string& out_path, std::ostream& out) {
    const auto panel = load_panel(io.returns, io.factors);
    RollingOptions options;
    options.window = window;
    options.step = step;
    options.bandwidth = bandwidth_from(lags);
    options.threads = threads;
    emit(rolling_csv(rolling_test(panel, options)), out_path, out);
    return kExitOk;
}

int run_diagnose(const PanelArgs& io, int lags, int bins, std::ostream& out) {
    const auto panel = load_panel(io.returns, io.factors);
    const auto report = diagnose_residuals(panel, lags, bins);
    nlohmann::json securities = nlohmann::json::array();
    for (std::size_t i = 0; i < report.p_values.size(); ++i) {
        securities.push_back({{"id", report.security_ids[i]}, {"p_value", report.p_values[i]}});
    }
    nlohmann::json doc = {{"schema_version", kSchemaVersion},
                          {"lags", report.lags},
                          {"securities", securities},
                          {"histogram", {{"edges", report.bin_edges}, {"counts", report.bin_counts}}}};
    out << doc.dump(2) << '\n';
    return kExitOk;
}

int exit_code_for(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::Usage:
            return kExitUsage;
        case ErrorCategory::Data:
            return kExitData;
        case ErrorCategory::Numerical:
            return kExitNumerical;
    }
    return kExitData;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hdalpha: joint alpha tests on large return panels",
                 "hdalpha"};
    app.require_subcommand(1);

    PanelArgs io;
    int lags = -1;
    bool as_csv = false;
    bool as_json = false;
    auto* test = app.add_subcommand("test", "run the SUM, MAX and CC tests on a CSV panel");
    add_panel_options(test, io);
    test->add_option("--bandwidth", lags, "truncation lag M (default ceil(min(N,T)^(1/8)))")->check(CLI::NonNegativeNumber);
    auto* json_flag = test->add_flag("--json", as_json, "JSON output (default)");
    test->add_flag("--csv", as_csv, "CSV output")->excludes(json_flag);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    auto* simulate = app.add_subcommand("simulate", "write a synthetic panel described by a config file");
    simulate->add_option("--config", config_path, "study config file")->required();
    simulate->add_option("--out", out_path, "output prefix for <prefix>_returns.csv etc.")->required();
    simulate->add_option("--seed", seed, "random seed");

    std::size_t reps = 1000;
    std::uint64_t mc_seed = 20240101;
    std::string methods = "sum,max,cc";
    unsigned threads = 0;
    std::string format = "csv";
    bool keep_raw = false;
    auto* mc = app.add_subcommand("mc", "run a Monte Carlo size/power study");
    mc->add_option("--config", config_path, "study config file")->required();
    mc->add_option("--reps", reps, "replications per design point")->check(CLI::PositiveNumber);
    mc->add_option("--seed", mc_seed, "base seed");
    mc->add_option("--out", out_path, "output file (default stdout)");
    mc->add_option("--methods", methods, "comma list of sum,max,cc,minp");
    mc->add_option("--threads", threads, "worker threads (0 = all cores)");
    mc->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    mc->add_flag("--raw", keep_raw, "include per-replication records (json only)");

    Index window = kDefaultRollingWindow;
    Index step = 1;
    auto* rolling = app.add_subcommand("rolling", "rolling-window SUM/MAX/CC p-values");
    add_panel_options(rolling, io);
    rolling->add_option("--window", window, "window length in periods")->check(CLI::PositiveNumber);
    rolling->add_option("--step", step, "step between windows")->check(CLI::PositiveNumber);
    rolling->add_option("--bandwidth", lags, "truncation lag M per window")->check(CLI::NonNegativeNumber);
    rolling->add_option("--threads", threads, "worker threads (0 = all cores)");
    rolling->add_option("--out", out_path, "output file (default stdout)");

    int bp_lags = kDefaultBoxPierceLags;
    int bins = 10;
    auto* diagnose = app.add_subcommand("diagnose", "Box-Pierce diagnostics of factor-model residuals");
    add_panel_options(diagnose, io);
    diagnose->add_option("--lags", bp_lags, "Box-Pierce lag count")->check(CLI::PositiveNumber);
    diagnose->add_option("--bins", bins, "histogram bins")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();  // program name
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        CLI::App* failing = &app;
        for (auto* sub : app.get_subcommands()) failing = sub;
        err << failing->help();
        return kExitUsage;
    }

    try {
        if (*test) return run_test(io, lags, as_csv, out);
        if (*simulate) return run_simulate(config_path, out_path, seed, out);
        if (*mc) return run_mc(config_path, reps, mc_seed, methods, threads, format, keep_raw, out_path, out);
        if (*rolling) return run_rolling(io, window, step, lags, threads, out_path, out);
        if (*diagnose) return run_diagnose(io, bp_lags, bins, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.category());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace hdalpha
