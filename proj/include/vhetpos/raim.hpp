#pragma once

#include <utility>
#include <vector>

#include "vhetpos/solver.hpp"

namespace vhetpos {

struct RaimConfig {
    double alpha_global = 0.001;
    double alpha_local = 0.001;
    int max_exclusions = 3;
    int min_redundancy_after = 1;  // minimum (m - 4) remaining after any exclusion
};

struct RaimOutcome {
    bool passed = false;
    std::vector<SourceId> excluded_ids;  // in exclusion order
    double global_statistic = 0.0;
    double global_threshold = 0.0;
    std::vector<double> standardized_residuals;  // at the final solve
};

struct GlobalTestResult {
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

// Global model test: T = sum(w_i * v_i^2) against the chi-square (1 - alpha)
// quantile with dof degrees of freedom. Throws ZeroRedundancy for dof < 1.
GlobalTestResult global_test(const std::vector<double>& residuals,
                             const std::vector<double>& weights, int dof, double alpha);

struct LocalTestResult {
    std::vector<double> standardized;  // |v_i| / sqrt(Qv_ii); 0 where unprotected
    int worst_index = -1;
    bool flagged = false;
};

// Data-snooping local test on the residual cofactor Qv = W^-1 - H(H'WH)^-1 H'.
// Measurements whose Qv diagonal is <= 1e-12 are unprotected and excluded from
// candidacy. Ties on the maximum break toward the lower index.
LocalTestResult local_test(const std::vector<double>& residuals, const GeometryMatrix& geometry,
                           double alpha);

// Fault detection and exclusion around the SPP solver: solve, run the global
// test, and while it fails (and redundancy allows) exclude the local-test
// worst measurement and re-solve.
std::pair<PositionFix, RaimOutcome> fde_solve(const std::vector<PseudorangeMeasurement>& meas,
                                              const EcefCoord& init, double init_clock_m,
                                              const RaimConfig& raim_cfg,
                                              const SolverOptions& solver_opts = {});

}  // namespace vhetpos
