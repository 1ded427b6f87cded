#include "hdalpha/study_config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "hdalpha/errors.hpp"
#include "text_util.hpp"

namespace hdalpha {

namespace {

struct Entry {
    std::string value;
    std::size_t line;
};

const char* const kKnownKeys[] = {"N",         "T",  "dependence", "innovation", "omega_band", "phi1",     "phi2",
                                  "alpha_kind", "s", "c",          "delta",      "gamma",      "bandwidth"};

bool known_key(const std::string& key) {
    for (const char* k : kKnownKeys)
        if (key == k) return true;
    return false;
}

class Reader {
public:
    Reader(std::map<std::string, Entry> entries, std::string source)
        : entries_(std::move(entries)), source_(std::move(source)) {}

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    std::string str(const std::string& key) const { return entries_.at(key).value; }

    double real(const std::string& key) const {
        const auto& e = entries_.at(key);
        const auto v = text::parse_double(e.value);
        if (!v) throw ParseError(source_, e.line, 0, "key '" + key + "' expects a number, got '" + e.value + "'");
        return *v;
    }

    long long integer(const std::string& key) const {
        const auto& e = entries_.at(key);
        const auto v = text::parse_integer(e.value);
        if (!v) throw ParseError(source_, e.line, 0, "key '" + key + "' expects an integer, got '" + e.value + "'");
        return *v;
    }

    std::vector<double> reals(const std::string& key) const {
        const auto& e = entries_.at(key);
        std::vector<double> out;
        for (auto part : text::split(e.value, ',')) {
            const auto v = text::parse_double(part);
            if (!v) throw ParseError(source_, e.line, 0, "key '" + key + "' expects numbers, got '" + e.value + "'");
            out.push_back(*v);
        }
        return out;
    }

    std::vector<long long> integers(const std::string& key) const {
        const auto& e = entries_.at(key);
        std::vector<long long> out;
        for (auto part : text::split(e.value, ',')) {
            const auto v = text::parse_integer(part);
            if (!v) throw ParseError(source_, e.line, 0, "key '" + key + "' expects integers, got '" + e.value + "'");
            out.push_back(*v);
        }
        return out;
    }

    template <class Fn>
    auto convert(const std::string& key, Fn&& fn) const {
        try {
            return fn(str(key));
        } catch (const Error& err) {
            throw ParseError(source_, entries_.at(key).line, 0, err.what());
        }
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, 0, 0, what); }

private:
    std::map<std::string, Entry> entries_;
    std::string source_;
};

}  // namespace

Bandwidth StudyConfig::resolved_bandwidth() const {
    return bandwidth.value_or(Bandwidth::default_for(dgp.securities, dgp.periods));
}

void StudyConfig::validate() const {
    dgp.validate();
    if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must lie in (0, 1)");
}

StudyPlan parse_study_config(const std::string& content, const std::string& source) {
    std::map<std::string, Entry> entries;
    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = text::trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) throw ParseError(source, line_no, 0, "expected key = value");
        const std::string key(text::trim(view.substr(0, eq)));
        const std::string value(text::trim(view.substr(eq + 1)));
        if (!known_key(key)) throw ParseError(source, line_no, 0, "unknown key '" + key + "'");
        if (value.empty()) throw ParseError(source, line_no, 0, "empty value for key '" + key + "'");
        if (!entries.emplace(key, Entry{value, line_no}).second) {
            throw ParseError(source, line_no, 0, "duplicate key '" + key + "'");
        }
    }

    const Reader r(std::move(entries), source);
    StudyPlan plan;
    auto& cfg = plan.base;
    auto& dgp = cfg.dgp;
    if (!r.has("N") || !r.has("T")) r.fail("config must define N and T");
    dgp.securities = static_cast<Index>(r.integer("N"));
    dgp.periods = static_cast<Index>(r.integer("T"));
    if (r.has("dependence")) dgp.dependence = r.convert("dependence", parse_dependence);
    if (r.has("innovation")) dgp.innovation = r.convert("innovation", parse_innovation);
    if (r.has("omega_band")) dgp.band.omega_band = r.real("omega_band");
    if (r.has("phi1")) dgp.band.phi1 = r.real("phi1");
    if (r.has("phi2")) dgp.band.phi2 = r.real("phi2");
    if (r.has("gamma")) cfg.level = r.real("gamma");
    if (r.has("bandwidth")) {
        const auto lags = r.integer("bandwidth");
        if (lags < 0) r.fail("bandwidth must be non-negative");
        cfg.bandwidth = Bandwidth(static_cast<int>(lags));
    }

    const auto kind = r.has("alpha_kind") ? r.convert("alpha_kind", parse_alpha_kind) : AlphaSpec::Kind::Null;
    switch (kind) {
        case AlphaSpec::Kind::Null:
            if (r.has("s") || r.has("c") || r.has("delta")) r.fail("alpha_kind = null takes no s, c or delta");
            plan.grid.push_back(AlphaSpec::null());
            break;
        case AlphaSpec::Kind::SparseUniform: {
            if (!r.has("s")) r.fail("alpha_kind = sparse_uniform requires s");
            if (r.has("delta")) r.fail("alpha_kind = sparse_uniform takes c, not delta");
            const auto scales = r.has("c") ? r.reals("c") : std::vector<double>{default_sparse_scale(dgp.dependence)};
            for (auto s : r.integers("s"))
                for (double c : scales) plan.grid.push_back(AlphaSpec::sparse_uniform(static_cast<Index>(s), c));
            break;
        }
        case AlphaSpec::Kind::SignalStrength: {
            if (!r.has("s") || !r.has("delta")) r.fail("alpha_kind = signal_strength requires s and delta");
            if (r.has("c")) r.fail("alpha_kind = signal_strength takes delta, not c");
            for (auto s : r.integers("s"))
                for (double d : r.reals("delta")) plan.grid.push_back(AlphaSpec::signal_strength(static_cast<Index>(s), d));
            break;
        }
    }
    dgp.alpha = plan.grid.front();
    try {
        for (const auto& spec : plan.grid) {
            StudyConfig point = cfg;
            point.dgp.alpha = spec;
            point.validate();
        }
    } catch (const Error& err) {
        throw ParseError(source, 0, 0, err.what());
    }
    return plan;
}

StudyPlan load_study_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, 0, "cannot open config file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_study_config(buffer.str(), path);
}

std::string format_study_config(const StudyConfig& config) {
    const auto& d = config.dgp;
    std::ostringstream os;
    os << "N = " << d.securities << "\n";
    os << "T = " << d.periods << "\n";
    os << "dependence = " << dependence_name(d.dependence) << "\n";
    os << "innovation = " << innovation_name(d.innovation) << "\n";
    os << "omega_band = " << text::format_double(d.band.omega_band) << "\n";
    os << "phi1 = " << text::format_double(d.band.phi1) << "\n";
    os << "phi2 = " << text::format_double(d.band.phi2) << "\n";
    os << "alpha_kind = " << alpha_kind_name(d.alpha.kind) << "\n";
    if (d.alpha.kind == AlphaSpec::Kind::SparseUniform) {
        os << "s = " << d.alpha.count << "\n";
        os << "c = " << text::format_double(d.alpha.scale) << "\n";
    } else if (d.alpha.kind == AlphaSpec::Kind::SignalStrength) {
        os << "s = " << d.alpha.count << "\n";
        os << "delta = " << text::format_double(d.alpha.scale) << "\n";
    }
    os << "gamma = " << text::format_double(config.level) << "\n";
    if (config.bandwidth) os << "bandwidth = " << config.bandwidth->lags() << "\n";
    return os.str();
}

}  // namespace hdalpha
