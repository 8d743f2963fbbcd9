#pragma once

#include <Eigen/Dense>

namespace vhetpos {

namespace constants {
inline constexpr double c_mps = 299792458.0;
inline constexpr double wgs84_a_m = 6378137.0;
inline constexpr double wgs84_f = 1.0 / 298.257223563;
inline constexpr double wgs84_b_m = wgs84_a_m * (1.0 - wgs84_f);
inline constexpr double wgs84_e2 = wgs84_f * (2.0 - wgs84_f);  // first eccentricity squared
inline constexpr double gm_earth = 3.986005e14;                // m^3/s^2
inline constexpr double earth_rotation_rate = 7.2921151467e-5; // rad/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double deg2rad = pi / 180.0;
inline constexpr double rad2deg = 180.0 / pi;
}  // namespace constants

struct GeodeticCoord {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double height_m = 0.0;
};

struct EcefCoord {
    double x_m = 0.0;
    double y_m = 0.0;
    double z_m = 0.0;

    Eigen::Vector3d vec() const { return {x_m, y_m, z_m}; }
    static EcefCoord from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
};

struct NedVector {
    double n_m = 0.0;
    double e_m = 0.0;
    double d_m = 0.0;

    double horizontal() const { return std::hypot(n_m, e_m); }
};

// Closed-form WGS84 geodetic -> ECEF.
EcefCoord lla_to_ecef(const GeodeticCoord& g);

// Iterative inverse (Bowring-style start, tolerance 1e-12 rad, max 10 iterations).
// Longitude at the poles is reported as 0. Throws NearSingular within 1 km of
// the Earth center.
GeodeticCoord ecef_to_lla(const EcefCoord& e);

// Rotation mapping ECEF deltas to local north-east-down at the given origin.
Eigen::Matrix3d ned_rotation(const GeodeticCoord& origin);

// ECEF delta expressed in the NED frame of `origin`.
NedVector ecef_delta_to_ned(const GeodeticCoord& origin, const Eigen::Vector3d& delta_ecef);

struct ElAzRange {
    double el_deg = 0.0;   // [-90, 90]
    double az_deg = 0.0;   // [0, 360) clockwise from north
    double range_m = 0.0;
};

// Elevation/azimuth/range of `source` as seen from the receiver. The receiver
// is given in both frames so the local rotation does not have to be recomputed
// by every caller. Throws ZeroRange when the positions coincide.
ElAzRange elevation_azimuth(const EcefCoord& receiver, const GeodeticCoord& receiver_lla,
                            const EcefCoord& source);

}  // namespace vhetpos
