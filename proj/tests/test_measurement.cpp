#include "doctest.h"

#include <cmath>

#include "vhetpos/measurement.hpp"

using namespace vhetpos;

namespace {

SourceState make_gnb(int id, const GeodeticCoord& lla) {
    SourceState s;
    s.kind = SourceKind::Gnb;
    s.id = id;
    s.position = lla_to_ecef(lla);
    return s;
}

}  // namespace

TEST_CASE("sigma_for picks the (kind, region) cell") {
    const SigmaTable t;
    CHECK(t.sigma_for(SourceKind::Gps, Region::Suburban) == 3.0);
    CHECK(t.sigma_for(SourceKind::Gps, Region::Urban) == 7.0);
    CHECK(t.sigma_for(SourceKind::Haps, Region::Suburban) == 2.0);
    CHECK(t.sigma_for(SourceKind::Haps, Region::Urban) == 5.0);
    CHECK(t.sigma_for(SourceKind::Gnb, Region::Suburban) == 0.5);
    CHECK(t.sigma_for(SourceKind::Gnb, Region::Urban) == 0.5);
}

TEST_CASE("zero sigma yields an exact pseudorange with the sigma floor stored") {
    const EcefCoord rx = lla_to_ecef({45.0, -75.0, 2.0});
    const SourceState src = make_gnb(3, {45.003, -75.0, 27.0});
    const ReceiverClock clock{12345.678, 0.5};
    KeyedRng rng(1);

    const PseudorangeMeasurement m = synthesize(src, rx, clock, 0.0, 0.01, 7.0, rng);
    const double rho = (src.position.vec() - rx.vec()).norm();
    CHECK(m.pr_m == rho + clock.dt_m);  // bitwise: no noise term at sigma 0
    CHECK(m.sigma_m == 0.01);           // floored for weighting
    CHECK(m.true_range_m == rho);
    CHECK(m.epoch_s == 7.0);
    CHECK(m.kind == SourceKind::Gnb);
    CHECK(m.id == 3);
}

TEST_CASE("source clock offset is subtracted") {
    const EcefCoord rx = lla_to_ecef({45.0, -75.0, 2.0});
    SourceState src = make_gnb(3, {45.003, -75.0, 27.0});
    src.clock_offset_m = 250.0;
    const ReceiverClock clock{0.0, 0.0};
    KeyedRng rng(1);
    const PseudorangeMeasurement m = synthesize(src, rx, clock, 0.0, 0.01, 0.0, rng);
    CHECK(m.pr_m == doctest::Approx(m.true_range_m - 250.0).epsilon(1e-12));
}

TEST_CASE("noise scale matches the requested sigma") {
    const EcefCoord rx = lla_to_ecef({45.0, -75.0, 2.0});
    const SourceState src = make_gnb(3, {45.003, -75.0, 27.0});
    const ReceiverClock clock{0.0, 0.0};
    KeyedRng rng(77);
    const double sigma = 5.0;
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const PseudorangeMeasurement m = synthesize(src, rx, clock, sigma, 0.01, 0.0, rng);
        const double err = m.pr_m - m.true_range_m;
        sum += err;
        sq += err * err;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean) < 0.15);
    CHECK(std::abs(std::sqrt(sq / n - mean * mean) - sigma) < 0.1);
}

TEST_CASE("advance_clock is a random walk in sqrt(dt)") {
    const ReceiverClock c0{1000.0, 0.5};
    {
        KeyedRng rng(5);
        const ReceiverClock c1 = advance_clock({1000.0, 0.0}, 10.0, rng);
        CHECK(c1.dt_m == 1000.0);  // zero drift moves nothing
    }
    double sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        KeyedRng rng(1000 + static_cast<std::uint64_t>(i));
        const ReceiverClock c1 = advance_clock(c0, 4.0, rng);
        const double step = c1.dt_m - c0.dt_m;
        sq += step * step;
    }
    // std of the step should be drift * sqrt(dt) = 0.5 * 2 = 1
    CHECK(std::abs(std::sqrt(sq / n) - 1.0) < 0.02);
}

TEST_CASE("batch_synthesize preserves order and applies per-kind sigmas") {
    const GeodeticCoord rx_lla{45.0, -75.0, 2.0};
    const EcefCoord rx = lla_to_ecef(rx_lla);

    VisibleSource a;
    a.source = make_gnb(4, {45.003, -75.0, 27.0});
    VisibleSource b;
    b.source.kind = SourceKind::Haps;
    b.source.id = 2;
    b.source.position = lla_to_ecef({45.1, -75.0, 20000.0});

    const SigmaTable sigmas;
    const ReceiverClock clock{0.0, 0.0};
    const EpochRng rng(9, 1, 33);
    const auto meas = batch_synthesize({a, b}, rx, clock, sigmas, Region::Urban, 33.0, rng);
    REQUIRE(meas.size() == 2);
    CHECK(meas[0].kind == SourceKind::Gnb);
    CHECK(meas[0].sigma_m == 0.5);
    CHECK(meas[1].kind == SourceKind::Haps);
    CHECK(meas[1].sigma_m == 5.0);  // urban HAPS

    // noise for one source does not depend on the other being present
    const auto solo = batch_synthesize({b}, rx, clock, sigmas, Region::Urban, 33.0, rng);
    CHECK(solo[0].pr_m == meas[1].pr_m);
}
