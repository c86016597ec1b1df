#include "rdpp/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "rdpp/errors.hpp"

namespace rdpp {

namespace {

void append_row(std::string& out, std::initializer_list<double> fields) {
    bool first = true;
    for (double v : fields) {
        if (!first) out += ',';
        out += format_double(v);
        first = false;
    }
    out += '\n';
}

void kv(std::string& out, std::string_view key, std::string_view value) {
    out.append(key).append(" = ").append(value).append("\n");
}

void kv(std::string& out, std::string_view key, double value) { kv(out, key, format_double(value)); }

std::string one_line(std::string s) {
    for (char& ch : s)
        if (ch == '\n' || ch == '\r') ch = ' ';
    return s;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::string fingerprint_line(std::string_view fingerprint) {
    return "# fingerprint=" + std::string(fingerprint) + "\n";
}

std::string render_path_csv(const PathRecord& path, std::string_view fingerprint) {
    std::string out = fingerprint_line(fingerprint);
    switch (path.mode) {
        case Mode::Full: out += "t,x,y\n"; break;
        case Mode::PreyAbsent: out += "t,y\n"; break;
        case Mode::PredatorAbsent: out += "t,x\n"; break;
    }
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        switch (path.mode) {
            case Mode::Full: append_row(out, {path.times[i], path.xs[i], path.ys[i]}); break;
            case Mode::PreyAbsent: append_row(out, {path.times[i], path.ys[i]}); break;
            case Mode::PredatorAbsent: append_row(out, {path.times[i], path.xs[i]}); break;
        }
    }
    if (path.blew_up) out += "# blew_up_at=" + format_double(path.blowup_time) + "\n";
    return out;
}

std::string render_moments_csv(const EnsembleSummary& s, std::string_view fingerprint) {
    std::string out = fingerprint_line(fingerprint);
    out += "t,mean_x,mean_y,moment,se,ci_low,ci_high,n_blowups\n";
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        const MomentEstimate m = estimate_at(s, 2, i);
        append_row(out, {s.times[i], s.stats[0].mean[i], s.stats[1].mean[i], m.point_estimate,
                         m.standard_error, m.ci_low, m.ci_high});
        out.pop_back();
        out += ',' + std::to_string(s.n_blowups) + '\n';
    }
    return out;
}

std::string render_report(const TheoremReport& r, std::uint64_t master_seed) {
    std::string out = fingerprint_line(r.fingerprint);
    kv(out, "artifact_version", kArtifactVersion);
    kv(out, "theorem_id", to_string(r.theorem_id));
    kv(out, "verdict", to_string(r.verdict));
    kv(out, "master_seed", std::to_string(master_seed));
    kv(out, "n_paths", std::to_string(r.n_paths));
    kv(out, "n_blowups", std::to_string(r.n_blowups));
    if (r.tail_window) {
        kv(out, "tail_window.t_lo", r.tail_window->t_lo);
        kv(out, "tail_window.t_hi", r.tail_window->t_hi);
    }
    kv(out, "runtime_seconds", r.runtime_seconds);
    for (const auto& b : r.bounds) {
        kv(out, "bound." + b.name, b.value);
        kv(out, "bound." + b.name + ".formula", b.formula);
    }
    for (const auto& e : r.estimates) {
        kv(out, "estimate." + e.name, e.value);
        kv(out, "estimate." + e.name + ".ci_low", e.ci_low);
        kv(out, "estimate." + e.name + ".ci_high", e.ci_high);
    }
    for (std::size_t i = 0; i < r.offenses.size(); ++i) {
        const auto& o = r.offenses[i];
        const std::string p = "offense." + std::to_string(i) + ".";
        kv(out, p + "check", o.check);
        kv(out, p + "time", o.time);
        kv(out, p + "bound", o.bound);
        kv(out, p + "estimate", o.estimate);
        kv(out, p + "ci_low", o.ci_low);
        kv(out, p + "ci_high", o.ci_high);
    }
    for (std::size_t i = 0; i < r.notes.size(); ++i) kv(out, "note." + std::to_string(i), one_line(r.notes[i]));
    return out;
}

std::string render_envelope_csv(const TheoremReport& r) {
    std::string out = fingerprint_line(r.fingerprint);
    out += "t,bound,estimate,ci_low,ci_high\n";
    for (const auto& row : r.envelope) append_row(out, {row.t, row.bound, row.estimate, row.ci_low, row.ci_high});
    return out;
}

std::string render_order_csv(const StrongOrderResult& r, std::string_view fingerprint) {
    std::string out = fingerprint_line(fingerprint);
    out += "dt,strong_error\n";
    for (const auto& l : r.levels) append_row(out, {l.dt, l.strong_error});
    out += "# slope=" + format_double(r.order) + "\n";
    out += "# fit_residual=" + format_double(r.fit_residual) + "\n";
    out += "# reference_dt=" + format_double(r.reference_dt) + "\n";
    out += "# n_paths_used=" + std::to_string(r.n_paths_used) + "\n";
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.close();
    if (!f) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace rdpp
