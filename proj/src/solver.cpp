#include "vhetpos/solver.hpp"

#include <cmath>

#include "vhetpos/errors.hpp"

namespace vhetpos {

namespace {

// Condition number of a symmetric positive semi-definite 4x4.
double condition_number(const Eigen::Matrix4d& n) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(n);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

Eigen::Matrix4d inverted_normal(const Eigen::MatrixXd& h, const Eigen::VectorXd& w) {
    const Eigen::Matrix4d n = h.transpose() * w.asDiagonal() * h;
    if (condition_number(n) > 1e12) {
        throw SingularGeometry("spp: normal matrix condition number exceeds 1e12");
    }
    return n.inverse();
}

}  // namespace

GeometryMatrix build_geometry(const std::vector<PseudorangeMeasurement>& meas,
                              const EcefCoord& linearization_point, Weighting weighting) {
    const auto m = static_cast<Eigen::Index>(meas.size());
    GeometryMatrix g{Eigen::MatrixXd(m, 4), Eigen::VectorXd(m)};
    const Eigen::Vector3d x = linearization_point.vec();
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Vector3d u = (meas[i].source_pos.vec() - x).normalized();
        g.h.row(i) << -u.x(), -u.y(), -u.z(), 1.0;
        g.w(i) = weighting == Weighting::InverseVariance
                     ? 1.0 / (meas[i].sigma_m * meas[i].sigma_m)
                     : 1.0;
    }
    return g;
}

PositionFix spp_solve(const std::vector<PseudorangeMeasurement>& meas, const EcefCoord& init,
                      double init_clock_m, const SolverOptions& opts) {
    if (meas.size() < 4) {
        throw InsufficientMeasurements("spp: need at least 4 measurements, got " +
                                       std::to_string(meas.size()));
    }

    PositionFix fix;
    fix.position = init;
    fix.clock_m = init_clock_m;

    auto weighted_ssr = [&](const Eigen::Vector3d& pos, double clk, const Eigen::VectorXd& w) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < meas.size(); ++i) {
            const double v = meas[i].pr_m - ((meas[i].source_pos.vec() - pos).norm() + clk);
            ssr += w(static_cast<Eigen::Index>(i)) * v * v;
        }
        return ssr;
    };

    Eigen::VectorXd residuals(meas.size());
    GeometryMatrix g;
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        g = build_geometry(meas, fix.position, opts.weighting);
        for (std::size_t i = 0; i < meas.size(); ++i) {
            const double predicted =
                (meas[i].source_pos.vec() - fix.position.vec()).norm() + fix.clock_m;
            residuals(static_cast<Eigen::Index>(i)) = meas[i].pr_m - predicted;
        }
        const Eigen::Matrix4d q = inverted_normal(g.h, g.w);
        Eigen::Vector4d delta = q * (g.h.transpose() * g.w.asDiagonal() * residuals);

        // Backtracking line search: a full Gauss-Newton step can overshoot
        // badly when a source sits within a few hundred meters (near-field
        // gNB), where the range model is strongly nonlinear, and a plain step
        // then oscillates across the minimum. Keep the direction and halve the
        // length while that keeps lowering the weighted cost; in the
        // well-conditioned regime the full step already wins and is kept.
        const Eigen::Vector3d pos0 = fix.position.vec();
        const double clk0 = fix.clock_m;
        double best_cost = weighted_ssr(pos0 + delta.head<3>(), clk0 + delta(3), g.w);
        Eigen::Vector4d trial = delta;
        for (int half = 0; half < 8; ++half) {
            trial *= 0.5;
            const double c = weighted_ssr(pos0 + trial.head<3>(), clk0 + trial(3), g.w);
            if (c >= best_cost) break;
            best_cost = c;
            delta = trial;
        }

        fix.position = EcefCoord::from(pos0 + delta.head<3>());
        fix.clock_m = clk0 + delta(3);
        fix.iterations = iter;
        if (delta.head<3>().norm() < opts.tol_m) {
            fix.converged = true;
            break;
        }
    }
    if (!fix.converged) {
        throw NoConvergence("spp: no convergence after " + std::to_string(opts.max_iter) +
                            " iterations");
    }

    // Final linearization at the solution: post-fit residuals and cofactors.
    g = build_geometry(meas, fix.position, opts.weighting);
    fix.residuals_m.resize(meas.size());
    for (std::size_t i = 0; i < meas.size(); ++i) {
        const double predicted =
            (meas[i].source_pos.vec() - fix.position.vec()).norm() + fix.clock_m;
        fix.residuals_m[i] = meas[i].pr_m - predicted;
    }
    fix.cofactor = inverted_normal(g.h, g.w);
    fix.cofactor_unweighted = inverted_normal(g.h, Eigen::VectorXd::Ones(g.h.rows()));
    fix.used_ids.reserve(meas.size());
    for (const auto& m : meas) fix.used_ids.push_back({m.kind, m.id});
    return fix;
}

DopValues compute_dop(const PositionFix& fix, const GeodeticCoord& receiver_lla) {
    const Eigen::Matrix3d r = ned_rotation(receiver_lla);
    DopValues dop;
    dop.ned_cofactor = r * fix.cofactor_unweighted.topLeftCorner<3, 3>() * r.transpose();
    dop.hdop = std::sqrt(dop.ned_cofactor(0, 0) + dop.ned_cofactor(1, 1));
    dop.vdop = std::sqrt(dop.ned_cofactor(2, 2));
    dop.pdop = std::sqrt(dop.ned_cofactor.trace());
    dop.tdop = std::sqrt(fix.cofactor_unweighted(3, 3));
    return dop;
}

NedError position_errors(const PositionFix& fix, const EcefCoord& truth,
                         const GeodeticCoord& truth_lla) {
    const NedVector ned = ecef_delta_to_ned(truth_lla, fix.position.vec() - truth.vec());
    NedError err;
    err.n_m = ned.n_m;
    err.e_m = ned.e_m;
    err.d_m = ned.d_m;
    err.horizontal_m = ned.horizontal();
    err.vertical_m = std::abs(ned.d_m);
    return err;
}

}  // namespace vhetpos
