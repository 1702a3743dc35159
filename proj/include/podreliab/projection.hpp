#pragma once

#include "podreliab/geometry.hpp"

namespace podreliab {

// Forward transverse Mercator on the WGS84 ellipsoid (series expansion after
// Snyder, USGS PP 1395). Sub-millimetre within a UTM zone.
struct TransverseMercator {
    double central_meridian_deg = 9.0;
    double scale_factor = 0.9996;
    double false_easting = 500000.0;
    double false_northing = 0.0;

    static TransverseMercator utm(int zone, bool northern_hemisphere = true);

    // Returns (easting, northing) in meters.
    Vec2 forward(double lat_deg, double lon_deg) const;
};

}  // namespace podreliab
