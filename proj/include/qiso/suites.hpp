#pragma once

#include "qiso/config.hpp"
#include "qiso/report.hpp"

// Verification suites over one deformation matrix: level-space checks
// (positivity, adjointness, relations, embeddings), tail-window checks
// (positivity, adjointness, relations, cross-class orthogonality),
// duality checks (biorthogonality, prefix-projection decay, kernel
// probe) and the normal-ordering self-checks.

namespace qiso::suites {

std::vector<CheckResult> fock_suite(const QMatrix& Q, const RunConfig& cfg);
std::vector<CheckResult> tail_suite(const QMatrix& Q, const RunConfig& cfg);
std::vector<CheckResult> dual_suite(const QMatrix& Q, const RunConfig& cfg,
                                    std::vector<DecayTable>* decay);
std::vector<CheckResult> normal_order_suite(const QMatrix& Q, const RunConfig& cfg);

/// Dispatches on cfg.mode, writes the report (and decay CSV when the
/// duality suite ran) to cfg.out, and returns the report.
Report run(const RunConfig& cfg);

}  // namespace qiso::suites
