#pragma once

#include "rdpp/config.hpp"
#include "rdpp/verify.hpp"

namespace rdpp {

/// Writes path.csv (path index 0 under the manifest seed) into the output directory.
void cmd_simulate(const RunManifest& m);

/// Writes moments.csv for the configured (theta1, theta2).
void cmd_ensemble(const RunManifest& m);

/// Runs one theorem harness, writes report_<ID>.txt (and envelope.csv when the
/// check is time-resolved) and returns the verdict's exit status.
int cmd_verify(const RunManifest& m, TheoremId id);

/// Harness dispatch without file output.
TheoremReport run_harness(const RunManifest& m, TheoremId id);

/// Writes order.csv from estimate_strong_order.
StrongOrderResult cmd_convergence(const RunManifest& m);

}  // namespace rdpp
