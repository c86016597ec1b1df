#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rdpp/coefficients.hpp"
#include "rdpp/integrate.hpp"
#include "rdpp/model.hpp"
#include "rdpp/verify.hpp"

namespace rdpp {

struct HarnessParams {
    /// Moment exponents for `ensemble`, T3_2, T3_3 (with the weights below) and T4_1.
    double theta1 = 1.0;
    double theta2 = 1.0;
    double varsigma1 = 1.0;
    double varsigma2 = 1.0;
    double varrho1 = 1.0;
    double varrho2 = 1.0;
    TimeAverageSpec average;
    double conv_dt_coarse = 1.0 / 64.0;
    int conv_levels = 4;

    MomentSpec moment_spec() const { return {theta1, theta2, varsigma1, varsigma2, varrho1, varrho2}; }
};

struct RunManifest {
    std::string config_path;
    SimConfig sim;
    CoefficientSet coefficients;
    HarnessParams harness;
    std::uint64_t master_seed = 0;
    std::int64_t n_paths = 1000;
    bool allow_degenerate = false;
    std::string output_dir = ".";
    unsigned threads = 0;

    /// FNV-1a 64-bit hash of emit_config(*this), as 16 hex digits.
    std::string fingerprint() const;
};

/// Parses the flat `key = value` format. Throws Error(ParseError) with a line
/// number for malformed, unknown or duplicate keys and Error(SemanticError)
/// for values that do not form a valid configuration.
RunManifest parse_config(std::string_view text);

/// Reads and parses a config file; records its path in the manifest.
RunManifest load_config(const std::string& path);

/// Canonical text: every key, sorted, numbers with 17 significant digits.
std::string emit_config(const RunManifest& m);

/// Throws Error(SemanticError) unless the manifest is runnable.
void validate_manifest(const RunManifest& m);

}  // namespace rdpp
