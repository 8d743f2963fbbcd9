#include "vhetpos/geodesy.hpp"

#include <cmath>

#include "vhetpos/errors.hpp"

namespace vhetpos {

using namespace constants;

EcefCoord lla_to_ecef(const GeodeticCoord& g) {
    const double lat = g.lat_deg * deg2rad;
    const double lon = g.lon_deg * deg2rad;
    const double slat = std::sin(lat);
    const double clat = std::cos(lat);
    const double n = wgs84_a_m / std::sqrt(1.0 - wgs84_e2 * slat * slat);
    return {(n + g.height_m) * clat * std::cos(lon),
            (n + g.height_m) * clat * std::sin(lon),
            (n * (1.0 - wgs84_e2) + g.height_m) * slat};
}

GeodeticCoord ecef_to_lla(const EcefCoord& e) {
    const double p = std::hypot(e.x_m, e.y_m);
    const double r = std::hypot(p, e.z_m);
    if (r < 1000.0) {
        throw NearSingular("ecef_to_lla: point within 1 km of Earth center");
    }

    // Bowring's starting value, then fixed-point refinement of the latitude.
    double lat = std::atan2(e.z_m, p * (1.0 - wgs84_e2));
    double h = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double slat = std::sin(lat);
        const double n = wgs84_a_m / std::sqrt(1.0 - wgs84_e2 * slat * slat);
        h = p * std::cos(lat) + e.z_m * slat - n * (1.0 - wgs84_e2 * slat * slat);
        const double next = std::atan2(e.z_m, p * (1.0 - wgs84_e2 * n / (n + h)));
        const double delta = std::abs(next - lat);
        lat = next;
        if (delta < 1e-12) break;
    }

    const double lon = (p < 1e-9) ? 0.0 : std::atan2(e.y_m, e.x_m);
    return {lat * rad2deg, lon * rad2deg, h};
}

Eigen::Matrix3d ned_rotation(const GeodeticCoord& origin) {
    const double lat = origin.lat_deg * deg2rad;
    const double lon = origin.lon_deg * deg2rad;
    const double sl = std::sin(lat), cl = std::cos(lat);
    const double so = std::sin(lon), co = std::cos(lon);
    Eigen::Matrix3d r;
    r << -sl * co, -sl * so, cl,
         -so,       co,      0.0,
         -cl * co, -cl * so, -sl;
    return r;
}

NedVector ecef_delta_to_ned(const GeodeticCoord& origin, const Eigen::Vector3d& delta_ecef) {
    const Eigen::Vector3d ned = ned_rotation(origin) * delta_ecef;
    return {ned.x(), ned.y(), ned.z()};
}

ElAzRange elevation_azimuth(const EcefCoord& receiver, const GeodeticCoord& receiver_lla,
                            const EcefCoord& source) {
    const Eigen::Vector3d delta = source.vec() - receiver.vec();
    const double range = delta.norm();
    if (range <= 0.0) {
        throw ZeroRange("elevation_azimuth: source coincides with receiver");
    }
    const NedVector ned = ecef_delta_to_ned(receiver_lla, delta);
    const double horiz = ned.horizontal();
    const double el = std::atan2(-ned.d_m, horiz) * rad2deg;
    double az = std::atan2(ned.e_m, ned.n_m) * rad2deg;
    if (az < 0.0) az += 360.0;
    if (az >= 360.0) az = 0.0;
    return {el, az, range};
}

}  // namespace vhetpos
