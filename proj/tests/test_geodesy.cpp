#include "doctest.h"

#include <cmath>

#include "vhetpos/errors.hpp"
#include "vhetpos/geodesy.hpp"
#include "vhetpos/rng.hpp"

using namespace vhetpos;

TEST_CASE("lla_to_ecef matches reference values") {
    // Reference ECEF computed with an independent implementation of the
    // closed-form WGS84 transform.
    struct Case {
        GeodeticCoord lla;
        double x, y, z;
    };
    const Case cases[] = {
        {{45.0, -75.0, 100.0}, 1169256.858698, -4363726.003758, 4487419.119544},
        {{-33.8688, 151.2093, 58.0}, -4646093.477288, 2553229.535817, -3534404.710910},
        {{0.0, 0.0, 0.0}, 6378137.0, 0.0, 0.0},
        {{89.9, 10.0, 1000.0}, 11001.422819, 1939.847669, 6357742.565586},
    };
    for (const auto& c : cases) {
        const EcefCoord e = lla_to_ecef(c.lla);
        CHECK(std::abs(e.x_m - c.x) < 1e-5);
        CHECK(std::abs(e.y_m - c.y) < 1e-5);
        CHECK(std::abs(e.z_m - c.z) < 1e-5);
    }
}

TEST_CASE("lla/ecef round trip over random coordinates") {
    KeyedRng rng(2024);
    for (int i = 0; i < 2000; ++i) {
        GeodeticCoord g;
        g.lat_deg = -89.9 + 179.8 * rng.uniform();
        g.lon_deg = -180.0 + 360.0 * rng.uniform();
        g.height_m = -5000.0 + 35000.0 * rng.uniform();
        const GeodeticCoord back = ecef_to_lla(lla_to_ecef(g));
        CHECK(std::abs(back.lat_deg - g.lat_deg) < 1e-9);
        CHECK(std::abs(back.lon_deg - g.lon_deg) < 1e-9);
        CHECK(std::abs(back.height_m - g.height_m) < 1e-6);
    }
}

TEST_CASE("ecef_to_lla pole and near-center behavior") {
    const GeodeticCoord pole = ecef_to_lla({0.0, 0.0, constants::wgs84_b_m});
    CHECK(pole.lat_deg == doctest::Approx(90.0));
    CHECK(pole.lon_deg == 0.0);  // longitude is undefined there; 0 by contract
    CHECK_THROWS_AS(ecef_to_lla({100.0, 100.0, 100.0}), NearSingular);
}

TEST_CASE("ned_rotation is orthonormal with unit determinant") {
    const Eigen::Matrix3d r = ned_rotation({37.5, 12.25, 0.0});
    CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-14);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ecef_delta_to_ned maps up to negative down") {
    const GeodeticCoord origin{45.0, -75.0, 100.0};
    const Eigen::Vector3d up =
        lla_to_ecef({45.0, -75.0, 600.0}).vec() - lla_to_ecef(origin).vec();
    const NedVector ned = ecef_delta_to_ned(origin, up);
    CHECK(std::abs(ned.d_m + 500.0) < 1e-6);
    CHECK(ned.horizontal() < 1e-6);
}

TEST_CASE("elevation_azimuth matches a frozen reference target") {
    // Target placed 3 km north, 4 km east, 1.2 km up of the receiver; its
    // ECEF position and the resulting angles were computed independently.
    const GeodeticCoord rx_lla{45.0, -75.0, 100.0};
    const EcefCoord rx = lla_to_ecef(rx_lla);
    const EcefCoord target{1172791.139139, -4361461.304714, 4490388.968025};
    const ElAzRange ear = elevation_azimuth(rx, rx_lla, target);
    CHECK(std::abs(ear.el_deg - 13.495733280796) < 1e-7);
    CHECK(std::abs(ear.az_deg - 53.130102354156) < 1e-7);
    CHECK(std::abs(ear.range_m - 5141.984053) < 1e-4);
}

TEST_CASE("elevation_azimuth rejects coincident points") {
    const GeodeticCoord rx_lla{10.0, 20.0, 30.0};
    const EcefCoord rx = lla_to_ecef(rx_lla);
    CHECK_THROWS_AS(elevation_azimuth(rx, rx_lla, rx), ZeroRange);
}
