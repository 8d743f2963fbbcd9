#include "vhetpos/raim.hpp"

#include <cmath>

#include "vhetpos/errors.hpp"
#include "vhetpos/stats.hpp"

namespace vhetpos {

GlobalTestResult global_test(const std::vector<double>& residuals,
                             const std::vector<double>& weights, int dof, double alpha) {
    if (dof < 1) {
        throw ZeroRedundancy("global_test: dof < 1");
    }
    double t = 0.0;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        t += weights[i] * residuals[i] * residuals[i];
    }
    const double threshold = chi2_quantile(1.0 - alpha, dof);
    return {t, threshold, t <= threshold};
}

LocalTestResult local_test(const std::vector<double>& residuals, const GeometryMatrix& geometry,
                           double alpha) {
    const auto m = static_cast<Eigen::Index>(residuals.size());
    const Eigen::Matrix4d q = (geometry.h.transpose() * geometry.w.asDiagonal() * geometry.h)
                                  .inverse();
    // Qv = W^-1 - H (H'WH)^-1 H'
    LocalTestResult result;
    result.standardized.assign(residuals.size(), 0.0);
    double worst = -1.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::RowVector4d hi = geometry.h.row(i);
        const double qv_ii = 1.0 / geometry.w(i) - hi * q * hi.transpose();
        if (qv_ii <= 1e-12) continue;  // unprotected measurement, not a candidate
        const double w = std::abs(residuals[i]) / std::sqrt(qv_ii);
        result.standardized[i] = w;
        if (w > worst) {
            worst = w;
            result.worst_index = static_cast<int>(i);
        }
    }
    const double quantile = normal_quantile(1.0 - alpha / 2.0);
    result.flagged = result.worst_index >= 0 && worst > quantile;
    return result;
}

std::pair<PositionFix, RaimOutcome> fde_solve(const std::vector<PseudorangeMeasurement>& meas,
                                              const EcefCoord& init, double init_clock_m,
                                              const RaimConfig& raim_cfg,
                                              const SolverOptions& solver_opts) {
    std::vector<PseudorangeMeasurement> current = meas;
    RaimOutcome outcome;

    while (true) {
        PositionFix fix = spp_solve(current, init, init_clock_m, solver_opts);
        const int dof = static_cast<int>(current.size()) - 4;

        GeometryMatrix g = build_geometry(current, fix.position, solver_opts.weighting);
        std::vector<double> weights(current.size());
        for (std::size_t i = 0; i < current.size(); ++i) weights[i] = g.w(static_cast<Eigen::Index>(i));

        if (dof < 1) {
            // No redundancy left: the solution cannot be verified.
            outcome.passed = false;
            outcome.global_statistic = 0.0;
            outcome.global_threshold = 0.0;
            outcome.standardized_residuals.assign(current.size(), 0.0);
            return {fix, outcome};
        }

        const GlobalTestResult global =
            global_test(fix.residuals_m, weights, dof, raim_cfg.alpha_global);
        const LocalTestResult local = local_test(fix.residuals_m, g, raim_cfg.alpha_local);
        outcome.global_statistic = global.statistic;
        outcome.global_threshold = global.threshold;
        outcome.standardized_residuals = local.standardized;

        if (global.pass) {
            outcome.passed = true;
            return {fix, outcome};
        }

        const int remaining_after = static_cast<int>(current.size()) - 1;
        const bool can_exclude =
            static_cast<int>(outcome.excluded_ids.size()) < raim_cfg.max_exclusions &&
            remaining_after - 4 >= raim_cfg.min_redundancy_after && remaining_after >= 5 &&
            local.worst_index >= 0;
        if (!can_exclude) {
            outcome.passed = false;
            return {fix, outcome};
        }

        const auto victim = static_cast<std::size_t>(local.worst_index);
        outcome.excluded_ids.push_back({current[victim].kind, current[victim].id});
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(victim));
    }
}

}  // namespace vhetpos
