#include "podreliab/projection.hpp"

#include <cmath>

namespace podreliab {

namespace {
constexpr double kSemiMajor = 6378137.0;
constexpr double kFlattening = 1.0 / 298.257223563;
constexpr double kDegToRad = M_PI / 180.0;
}  // namespace

TransverseMercator TransverseMercator::utm(int zone, bool northern_hemisphere) {
    TransverseMercator tm;
    tm.central_meridian_deg = -183.0 + 6.0 * zone;
    tm.false_northing = northern_hemisphere ? 0.0 : 10000000.0;
    return tm;
}

Vec2 TransverseMercator::forward(double lat_deg, double lon_deg) const {
    const double e2 = kFlattening * (2.0 - kFlattening);
    const double ep2 = e2 / (1.0 - e2);
    const double e4 = e2 * e2;
    const double e6 = e4 * e2;

    const double phi = lat_deg * kDegToRad;
    const double dlam = (lon_deg - central_meridian_deg) * kDegToRad;
    const double sin_phi = std::sin(phi);
    const double cos_phi = std::cos(phi);
    const double tan_phi = std::tan(phi);

    const double n = kSemiMajor / std::sqrt(1.0 - e2 * sin_phi * sin_phi);
    const double t = tan_phi * tan_phi;
    const double c = ep2 * cos_phi * cos_phi;
    const double a = cos_phi * dlam;

    // Meridian arc length from the equator.
    const double m = kSemiMajor *
                     ((1.0 - e2 / 4.0 - 3.0 * e4 / 64.0 - 5.0 * e6 / 256.0) * phi -
                      (3.0 * e2 / 8.0 + 3.0 * e4 / 32.0 + 45.0 * e6 / 1024.0) * std::sin(2.0 * phi) +
                      (15.0 * e4 / 256.0 + 45.0 * e6 / 1024.0) * std::sin(4.0 * phi) -
                      (35.0 * e6 / 3072.0) * std::sin(6.0 * phi));

    const double a2 = a * a;
    const double a3 = a2 * a;
    const double a4 = a3 * a;
    const double a5 = a4 * a;
    const double a6 = a5 * a;

    const double x = scale_factor * n *
                     (a + (1.0 - t + c) * a3 / 6.0 +
                      (5.0 - 18.0 * t + t * t + 72.0 * c - 58.0 * ep2) * a5 / 120.0);
    const double y =
        scale_factor *
        (m + n * tan_phi *
                 (a2 / 2.0 + (5.0 - t + 9.0 * c + 4.0 * c * c) * a4 / 24.0 +
                  (61.0 - 58.0 * t + t * t + 600.0 * c - 330.0 * ep2) * a6 / 720.0));

    return {x + false_easting, y + false_northing};
}

}  // namespace podreliab
