#include "doctest.h"

#include <cmath>
#include <vector>

#include "vhetpos/errors.hpp"
#include "vhetpos/raim.hpp"
#include "vhetpos/rng.hpp"
#include "vhetpos/stats.hpp"

using namespace vhetpos;

namespace {

const GeodeticCoord kRxLla{45.0, -75.0, 100.0};

const std::vector<std::pair<double, double>> kGeometry9 = {
    {15, 30}, {25, 110}, {40, 200}, {60, 315}, {75, 45},
    {35, 260}, {20, 170}, {55, 90}, {45, 0}};

std::vector<PseudorangeMeasurement> make_measurements(const EcefCoord& rx, double sigma_m,
                                                      KeyedRng* noise = nullptr) {
    const Eigen::Matrix3d r = ned_rotation(kRxLla);
    std::vector<PseudorangeMeasurement> meas;
    int id = 1;
    for (const auto& [el, az] : kGeometry9) {
        const double e = el * constants::deg2rad;
        const double a = az * constants::deg2rad;
        const Eigen::Vector3d u_ned(std::cos(e) * std::cos(a), std::cos(e) * std::sin(a),
                                    -std::sin(e));
        PseudorangeMeasurement m;
        m.kind = SourceKind::Gps;
        m.id = id++;
        m.source_pos = EcefCoord::from(rx.vec() + r.transpose() * (u_ned * 2.3e7));
        m.true_range_m = (m.source_pos.vec() - rx.vec()).norm();
        m.pr_m = m.true_range_m + (noise ? sigma_m * noise->gaussian() : 0.0);
        m.sigma_m = sigma_m;
        meas.push_back(m);
    }
    return meas;
}

}  // namespace

TEST_CASE("global_test statistic and threshold") {
    const std::vector<double> residuals{1.0, -2.0, 0.5};
    const std::vector<double> weights{1.0, 0.25, 4.0};
    const GlobalTestResult r = global_test(residuals, weights, 4, 0.001);
    CHECK(r.statistic == doctest::Approx(1.0 + 1.0 + 1.0).epsilon(1e-12));
    CHECK(std::abs(r.threshold - 18.466826952903) < 1e-7);  // chi2(0.999, 4)
    CHECK(r.pass);
    const GlobalTestResult fail = global_test({10.0, 10.0, 10.0}, weights, 4, 0.001);
    CHECK_FALSE(fail.pass);
    CHECK_THROWS_AS(global_test(residuals, weights, 0, 0.001), ZeroRedundancy);
}

TEST_CASE("local_test flags the largest standardized residual") {
    const EcefCoord rx = lla_to_ecef(kRxLla);
    auto meas = make_measurements(rx, 5.0);
    meas[4].pr_m += 200.0;
    const PositionFix fix = spp_solve(meas, rx, 0.0);
    const GeometryMatrix g = build_geometry(meas, fix.position, Weighting::InverseVariance);
    const LocalTestResult lt = local_test(fix.residuals_m, g, 0.001);
    CHECK(lt.flagged);
    CHECK(lt.worst_index == 4);
    CHECK(lt.standardized[4] > normal_quantile(1.0 - 0.001 / 2.0));
}

TEST_CASE("fde_solve passes clean data without exclusions") {
    const EcefCoord rx = lla_to_ecef(kRxLla);
    KeyedRng noise(314);
    int excluded = 0;
    for (int t = 0; t < 200; ++t) {
        const auto meas = make_measurements(rx, 5.0, &noise);
        const auto [fix, outcome] = fde_solve(meas, rx, 0.0, RaimConfig{});
        CHECK(fix.converged);
        excluded += static_cast<int>(outcome.excluded_ids.size());
    }
    // alpha_global = alpha_local = 0.001: exclusions should be very rare
    CHECK(excluded <= 3);
}

TEST_CASE("fde_solve excludes a 50-sigma fault and repairs the fix") {
    const EcefCoord rx = lla_to_ecef(kRxLla);
    KeyedRng noise(2718);
    int correct = 0;
    const int n = 200;
    for (int t = 0; t < n; ++t) {
        auto meas = make_measurements(rx, 5.0, &noise);
        const int victim = t % 9;
        meas[static_cast<std::size_t>(victim)].pr_m += 50.0 * 5.0;
        const auto [fix, outcome] = fde_solve(meas, rx, 0.0, RaimConfig{});
        bool hit = false;
        for (const auto& sid : outcome.excluded_ids) hit |= sid.id == victim + 1;
        if (hit && outcome.passed) {
            ++correct;
            const double err = (fix.position.vec() - rx.vec()).norm();
            CHECK(err < 40.0);  // repaired solution is back at noise level
        }
    }
    CHECK(correct >= n - 2);
}

TEST_CASE("fde_solve stops excluding at the redundancy floor") {
    const EcefCoord rx = lla_to_ecef(kRxLla);
    // 5 measurements: one exclusion would leave 4 (redundancy 0), which the
    // min_redundancy_after = 1 default forbids, so no exclusion may happen.
    auto meas = make_measurements(rx, 5.0);
    meas.resize(5);
    meas[2].pr_m += 500.0;
    const auto [fix, outcome] = fde_solve(meas, rx, 0.0, RaimConfig{});
    CHECK(outcome.excluded_ids.empty());
    CHECK_FALSE(outcome.passed);  // fault detected but not excludable
}
