#pragma once

#include <vector>

#include <Eigen/Dense>

#include "vhetpos/measurement.hpp"

namespace vhetpos {

enum class Weighting { InverseVariance, Uniform };

struct SolverOptions {
    double tol_m = 1e-4;
    int max_iter = 20;
    Weighting weighting = Weighting::InverseVariance;
};

struct SourceId {
    SourceKind kind = SourceKind::Gps;
    int id = 0;

    bool operator==(const SourceId&) const = default;
};

// Linearized design matrix: one row [-ux, -uy, -uz, 1] per measurement, with
// u the unit receiver->source vector at the linearization point, plus the
// per-row weights.
struct GeometryMatrix {
    Eigen::MatrixXd h;  // m x 4
    Eigen::VectorXd w;  // m
};

GeometryMatrix build_geometry(const std::vector<PseudorangeMeasurement>& meas,
                              const EcefCoord& linearization_point, Weighting weighting);

struct PositionFix {
    EcefCoord position;
    double clock_m = 0.0;      // estimated c*dt
    int iterations = 0;
    bool converged = false;
    std::vector<double> residuals_m;       // post-fit, observed - predicted
    Eigen::Matrix4d cofactor;              // unit-weight (H'WH)^-1 at the solution
    Eigen::Matrix4d cofactor_unweighted;   // (H'H)^-1 at the solution, for DOP
    std::vector<SourceId> used_ids;
};

// Iterative weighted least squares (Gauss-Newton) on linearized pseudoranges.
// Throws InsufficientMeasurements (< 4), SingularGeometry (condition number of
// the normal matrix above 1e12) or NoConvergence.
PositionFix spp_solve(const std::vector<PseudorangeMeasurement>& meas, const EcefCoord& init,
                      double init_clock_m = 0.0, const SolverOptions& opts = {});

struct DopValues {
    double hdop = 0.0;
    double vdop = 0.0;
    double pdop = 0.0;
    double tdop = 0.0;
    Eigen::Matrix3d ned_cofactor;  // position block of (H'H)^-1 rotated to NED
};

// Geometry-only DOP from the unweighted cofactor carried on the fix.
DopValues compute_dop(const PositionFix& fix, const GeodeticCoord& receiver_lla);

struct NedError {
    double n_m = 0.0;
    double e_m = 0.0;
    double d_m = 0.0;
    double horizontal_m = 0.0;  // sqrt(n^2 + e^2)
    double vertical_m = 0.0;    // |d|
};

NedError position_errors(const PositionFix& fix, const EcefCoord& truth,
                         const GeodeticCoord& truth_lla);

}  // namespace vhetpos
