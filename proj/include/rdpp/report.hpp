#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rdpp/integrate.hpp"
#include "rdpp/montecarlo.hpp"
#include "rdpp/verify.hpp"

namespace rdpp {

/// Shortest locale-independent text with 17 significant digits (%.17g).
std::string format_double(double v);

/// `# fingerprint=<hex>` header line, newline included.
std::string fingerprint_line(std::string_view fingerprint);

/// path.csv body: `t,x,y` (or `t,y` / `t,x` when a species is absent).
std::string render_path_csv(const PathRecord& path, std::string_view fingerprint);

/// moments.csv body: `t,mean_x,mean_y,moment,se,ci_low,ci_high,n_blowups`.
/// Expects functionals {prey, predator, moment} in that order.
std::string render_moments_csv(const EnsembleSummary& s, std::string_view fingerprint);

/// Key-value theorem report.
std::string render_report(const TheoremReport& r, std::uint64_t master_seed);

/// envelope.csv body: `t,bound,estimate,ci_low,ci_high`.
std::string render_envelope_csv(const TheoremReport& r);

/// order.csv body: `dt,strong_error` rows with `# slope=` footer.
std::string render_order_csv(const StrongOrderResult& r, std::string_view fingerprint);

/// Writes `text` to `path`; throws Error(IoError) naming the path.
void write_text_file(const std::filesystem::path& path, std::string_view text);

inline constexpr std::string_view kArtifactVersion = "0.1.0";

}  // namespace rdpp
