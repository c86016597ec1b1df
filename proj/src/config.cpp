#include "rdpp/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "rdpp/errors.hpp"
#include "rdpp/report.hpp"

namespace rdpp {

namespace {

struct Entry {
    std::string value;
    int line;
};

using Entries = std::map<std::string, Entry, std::less<>>;

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_error(int line, const std::string& msg) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void semantic_error(const std::string& msg) { throw Error(ErrorCode::SemanticError, msg); }

Entries tokenize(std::string_view text) {
    Entries entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) parse_error(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) parse_error(line_no, "empty key");
        if (value.empty()) parse_error(line_no, "empty value for '" + key + "'");
        if (const auto it = entries.find(key); it != entries.end())
            parse_error(line_no, "duplicate key '" + key + "' (first on line " + std::to_string(it->second.line) +
                                     ", again on line " + std::to_string(line_no) + ")");
        entries.emplace(key, Entry{value, line_no});
    }
    return entries;
}

class Reader {
public:
    explicit Reader(Entries entries) : entries_(std::move(entries)) {}

    const Entry* find(std::string_view key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        used_.insert(it->first);
        return &it->second;
    }

    bool has(std::string_view key) const { return entries_.contains(key); }

    double number(std::string_view key, double fallback) {
        const Entry* e = find(key);
        return e ? to_double(*e, key) : fallback;
    }

    double required_number(std::string_view key) {
        const Entry* e = find(key);
        if (!e) semantic_error("missing required key '" + std::string(key) + "'");
        return to_double(*e, key);
    }

    template <class Int>
    Int integer(std::string_view key, Int fallback) {
        const Entry* e = find(key);
        if (!e) return fallback;
        Int v{};
        const auto* end = e->value.data() + e->value.size();
        const auto res = std::from_chars(e->value.data(), end, v);
        if (res.ec != std::errc{} || res.ptr != end)
            parse_error(e->line, "'" + std::string(key) + "' expects an integer, got '" + e->value + "'");
        return v;
    }

    bool boolean(std::string_view key, bool fallback) {
        const Entry* e = find(key);
        if (!e) return fallback;
        if (e->value == "true") return true;
        if (e->value == "false") return false;
        parse_error(e->line, "'" + std::string(key) + "' expects true or false");
    }

    std::vector<double> list(std::string_view key) {
        const Entry* e = find(key);
        if (!e) return {};
        std::vector<double> out;
        std::string_view rest = e->value;
        while (true) {
            const auto comma = rest.find(',');
            out.push_back(parse_double(trim(rest.substr(0, comma)), *e, key));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        return out;
    }

    void reject_unused() const {
        for (const auto& [key, entry] : entries_)
            if (!used_.contains(key)) parse_error(entry.line, "unknown key '" + key + "'");
    }

private:
    static double parse_double(std::string_view s, const Entry& e, std::string_view key) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
            parse_error(e.line, "'" + std::string(key) + "' expects a number, got '" + e.value + "'");
        return v;
    }

    static double to_double(const Entry& e, std::string_view key) { return parse_double(e.value, e, key); }

    Entries entries_;
    std::set<std::string, std::less<>> used_;
};

bool is_noise(std::string_view name) {
    return name == "sigma1" || name == "sigma2" || name == "rho1" || name == "rho2";
}

CoefficientFn read_coefficient(Reader& r, std::string_view name) {
    const std::string p = std::string(name) + ".";
    const std::array<std::string_view, 7> fields{"value", "mean", "amplitude", "period", "phase", "breakpoints", "values"};
    std::string kind;
    if (const Entry* e = r.find(p + "kind")) {
        kind = e->value;
        if (kind != "constant" && kind != "piecewise" && kind != "sinusoidal")
            parse_error(e->line, "unknown coefficient kind '" + kind + "'");
    } else if (r.has(p + "value")) {
        kind = "constant";
    } else if (r.has(p + "mean")) {
        kind = "sinusoidal";
    } else if (r.has(p + "breakpoints") || r.has(p + "values")) {
        kind = "piecewise";
    } else {
        if (is_noise(name)) return CoefficientFn::constant(0.0);
        semantic_error("missing required coefficient '" + std::string(name) + "' (set " + p + "value)");
    }

    std::set<std::string_view> allowed;
    if (kind == "constant") allowed = {"value"};
    if (kind == "sinusoidal") allowed = {"mean", "amplitude", "period", "phase"};
    if (kind == "piecewise") allowed = {"breakpoints", "values"};
    for (auto f : fields)
        if (!allowed.contains(f) && r.has(p + std::string(f))) {
            const Entry* e = r.find(p + std::string(f));
            parse_error(e->line, "'" + p + std::string(f) + "' is not used by kind " + kind);
        }

    if (kind == "constant") return CoefficientFn::constant(r.required_number(p + "value"));
    if (kind == "sinusoidal")
        return CoefficientFn::sinusoidal(r.required_number(p + "mean"), r.number(p + "amplitude", 0.0),
                                         r.number(p + "period", 1.0), r.number(p + "phase", 0.0));
    auto bps = r.list(p + "breakpoints");
    auto vals = r.list(p + "values");
    if (vals.empty()) semantic_error("missing required key '" + p + "values'");
    return CoefficientFn::piecewise(std::move(bps), std::move(vals));
}

void emit_coefficient(std::map<std::string, std::string>& out, std::string_view name, const CoefficientFn& f) {
    const std::string p = std::string(name) + ".";
    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
        return s;
    };
    switch (f.kind()) {
        case CoefficientFn::Kind::Constant:
            out[p + "kind"] = "constant";
            out[p + "value"] = format_double(f.value());
            break;
        case CoefficientFn::Kind::Sinusoidal:
            out[p + "kind"] = "sinusoidal";
            out[p + "mean"] = format_double(f.mean());
            out[p + "amplitude"] = format_double(f.amplitude());
            out[p + "period"] = format_double(f.period());
            out[p + "phase"] = format_double(f.phase());
            break;
        case CoefficientFn::Kind::PiecewiseConstant:
            out[p + "kind"] = "piecewise";
            if (!f.breakpoints().empty()) out[p + "breakpoints"] = join(f.breakpoints());
            out[p + "values"] = join(f.values());
            break;
    }
}

}  // namespace

void validate_manifest(const RunManifest& m) {
    try {
        m.sim.validate();
    } catch (const Error& e) {
        semantic_error(e.what());
    }
    for (std::size_t i = 0; i < CoefficientSet::names.size(); ++i)
        if (auto problem = m.coefficients[i].structural_problem(); !problem.empty())
            semantic_error(std::string(CoefficientSet::names[i]) + ": " + problem);
    if (!m.allow_degenerate) {
        const ValidationReport v = validate_coefficients(m.coefficients);
        if (!v.ok()) semantic_error(v.summary());
    }
    if (m.n_paths < 1) semantic_error("paths must be >= 1");
    if (!(m.harness.conv_dt_coarse > 0.0)) semantic_error("conv.dt_coarse must be positive");
}

RunManifest parse_config(std::string_view text) {
    Reader r(tokenize(text));
    RunManifest m;
    for (std::size_t i = 0; i < CoefficientSet::names.size(); ++i)
        m.coefficients[i] = read_coefficient(r, CoefficientSet::names[i]);

    SimConfig& s = m.sim;
    s.x0 = r.required_number("x0");
    s.y0 = r.required_number("y0");
    s.t_end = r.required_number("t_end");
    s.dt = r.number("dt", 1e-3);
    s.save_every = r.integer<std::int64_t>("save_every", 100);
    s.blowup_guard = r.number("blowup_guard", kDefaultBlowupGuard);
    if (const Entry* e = r.find("scheme")) {
        const auto v = parse_scheme(e->value);
        if (!v) parse_error(e->line, "unknown scheme '" + e->value + "'");
        s.scheme = *v;
    }
    if (const Entry* e = r.find("mode")) {
        const auto v = parse_mode(e->value);
        if (!v) parse_error(e->line, "unknown mode '" + e->value + "'");
        s.mode = *v;
    }
    m.master_seed = r.integer<std::uint64_t>("seed", 0);
    m.n_paths = r.integer<std::int64_t>("paths", 1000);
    m.allow_degenerate = r.boolean("allow_degenerate", false);

    HarnessParams& h = m.harness;
    h.theta1 = r.number("theta1", h.theta1);
    h.theta2 = r.number("theta2", h.theta2);
    h.varsigma1 = r.number("varsigma1", h.varsigma1);
    h.varsigma2 = r.number("varsigma2", h.varsigma2);
    h.varrho1 = r.number("varrho1", h.varrho1);
    h.varrho2 = r.number("varrho2", h.varrho2);
    h.average.theta1 = r.number("avg_theta1", h.average.theta1);
    h.average.theta2 = r.number("avg_theta2", h.average.theta2);
    h.average.varsigma1 = h.varsigma1;
    h.average.varsigma2 = h.varsigma2;
    h.conv_dt_coarse = r.number("conv.dt_coarse", h.conv_dt_coarse);
    h.conv_levels = r.integer<int>("conv.levels", h.conv_levels);

    r.reject_unused();
    validate_manifest(m);
    return m;
}

RunManifest load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot read config " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    RunManifest m = parse_config(ss.str());
    m.config_path = path;
    return m;
}

std::string emit_config(const RunManifest& m) {
    std::map<std::string, std::string> kvs;
    for (std::size_t i = 0; i < CoefficientSet::names.size(); ++i)
        emit_coefficient(kvs, CoefficientSet::names[i], m.coefficients[i]);
    const SimConfig& s = m.sim;
    kvs["x0"] = format_double(s.x0);
    kvs["y0"] = format_double(s.y0);
    kvs["t_end"] = format_double(s.t_end);
    kvs["dt"] = format_double(s.dt);
    kvs["save_every"] = std::to_string(s.save_every);
    kvs["blowup_guard"] = format_double(s.blowup_guard);
    kvs["scheme"] = std::string(to_string(s.scheme));
    kvs["mode"] = std::string(to_string(s.mode));
    kvs["seed"] = std::to_string(m.master_seed);
    kvs["paths"] = std::to_string(m.n_paths);
    kvs["allow_degenerate"] = m.allow_degenerate ? "true" : "false";
    const HarnessParams& h = m.harness;
    kvs["theta1"] = format_double(h.theta1);
    kvs["theta2"] = format_double(h.theta2);
    kvs["varsigma1"] = format_double(h.varsigma1);
    kvs["varsigma2"] = format_double(h.varsigma2);
    kvs["varrho1"] = format_double(h.varrho1);
    kvs["varrho2"] = format_double(h.varrho2);
    kvs["avg_theta1"] = format_double(h.average.theta1);
    kvs["avg_theta2"] = format_double(h.average.theta2);
    kvs["conv.dt_coarse"] = format_double(h.conv_dt_coarse);
    kvs["conv.levels"] = std::to_string(h.conv_levels);

    std::string out;
    for (const auto& [k, v] : kvs) out += k + " = " + v + "\n";
    return out;
}

std::string RunManifest::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : emit_config(*this)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace rdpp
