#pragma once

#include <cmath>
#include <string>

#include "redistrict/errors.hpp"
#include "redistrict/geometry.hpp"

namespace redistrict {

// Forward and inverse Universal Transverse Mercator on the WGS84 ellipsoid,
// using the classic USGS series (Snyder). Good to well under a meter inside
// a zone, which is all the repair and adjacency work needs.

namespace wgs84 {
constexpr double kSemiMajor = 6378137.0;
constexpr double kFlattening = 1.0 / 298.257223563;
constexpr double kE2 = kFlattening * (2.0 - kFlattening);       // first eccentricity²
constexpr double kEp2 = kE2 / (1.0 - kE2);                      // second eccentricity²
}  // namespace wgs84

constexpr double kUtmScale = 0.9996;
constexpr double kUtmFalseEasting = 500000.0;
constexpr double kUtmFalseNorthingSouth = 10000000.0;

inline double utm_central_meridian_deg(int zone) {
    return -183.0 + 6.0 * zone;
}

/// Meridian arc length from the equator (Snyder 3-21).
inline double meridian_arc(double lat_rad) {
    using namespace wgs84;
    const double e2 = kE2, e4 = e2 * e2, e6 = e4 * e2;
    return kSemiMajor *
           ((1.0 - e2 / 4.0 - 3.0 * e4 / 64.0 - 5.0 * e6 / 256.0) * lat_rad -
            (3.0 * e2 / 8.0 + 3.0 * e4 / 32.0 + 45.0 * e6 / 1024.0) * std::sin(2.0 * lat_rad) +
            (15.0 * e4 / 256.0 + 45.0 * e6 / 1024.0) * std::sin(4.0 * lat_rad) -
            (35.0 * e6 / 3072.0) * std::sin(6.0 * lat_rad));
}

/// Forward transverse Mercator projection into the given UTM zone.
/// Latitudes south of the equator get the southern false northing.
inline Point utm_project(double lon_deg, double lat_deg, int zone) {
    if (zone < 1 || zone > 60) {
        throw OutOfDomain("utm_project: zone " + std::to_string(zone) + " outside 1..60");
    }
    if (!(std::abs(lat_deg) < 84.0)) {
        throw OutOfDomain("utm_project: latitude " + std::to_string(lat_deg) +
                          " outside the UTM domain (|lat| < 84)");
    }
    using namespace wgs84;
    const double deg = M_PI / 180.0;
    const double lat = lat_deg * deg;
    const double dlon = (lon_deg - utm_central_meridian_deg(zone)) * deg;

    const double sin_lat = std::sin(lat);
    const double cos_lat = std::cos(lat);
    const double tan_lat = std::tan(lat);

    const double nu = kSemiMajor / std::sqrt(1.0 - kE2 * sin_lat * sin_lat);
    const double t = tan_lat * tan_lat;
    const double c = kEp2 * cos_lat * cos_lat;
    const double a1 = dlon * cos_lat;
    const double a2 = a1 * a1, a3 = a2 * a1, a4 = a3 * a1, a5 = a4 * a1, a6 = a5 * a1;

    const double m = meridian_arc(lat);

    double x = kUtmScale * nu *
               (a1 + (1.0 - t + c) * a3 / 6.0 +
                (5.0 - 18.0 * t + t * t + 72.0 * c - 58.0 * kEp2) * a5 / 120.0);
    double y = kUtmScale *
               (m + nu * tan_lat *
                        (a2 / 2.0 + (5.0 - t + 9.0 * c + 4.0 * c * c) * a4 / 24.0 +
                         (61.0 - 58.0 * t + t * t + 600.0 * c - 330.0 * kEp2) * a6 / 720.0));

    Point p;
    p.x = x + kUtmFalseEasting;
    p.y = lat_deg < 0.0 ? y + kUtmFalseNorthingSouth : y;
    return p;
}

struct LonLat {
    double lon_deg;
    double lat_deg;
};

/// Inverse projection (Snyder footpoint-latitude series).
inline LonLat utm_unproject(const Point& p, int zone, bool southern) {
    if (zone < 1 || zone > 60) {
        throw OutOfDomain("utm_unproject: zone " + std::to_string(zone) + " outside 1..60");
    }
    using namespace wgs84;
    const double x = p.x - kUtmFalseEasting;
    const double y = southern ? p.y - kUtmFalseNorthingSouth : p.y;

    const double m = y / kUtmScale;
    const double e2 = kE2, e4 = e2 * e2, e6 = e4 * e2;
    const double mu = m / (kSemiMajor * (1.0 - e2 / 4.0 - 3.0 * e4 / 64.0 - 5.0 * e6 / 256.0));
    const double sq = std::sqrt(1.0 - e2);
    const double e1 = (1.0 - sq) / (1.0 + sq);
    const double e1_2 = e1 * e1, e1_3 = e1_2 * e1, e1_4 = e1_3 * e1;

    const double phi1 = mu + (3.0 * e1 / 2.0 - 27.0 * e1_3 / 32.0) * std::sin(2.0 * mu) +
                        (21.0 * e1_2 / 16.0 - 55.0 * e1_4 / 32.0) * std::sin(4.0 * mu) +
                        (151.0 * e1_3 / 96.0) * std::sin(6.0 * mu) +
                        (1097.0 * e1_4 / 512.0) * std::sin(8.0 * mu);

    const double sin1 = std::sin(phi1), cos1 = std::cos(phi1), tan1 = std::tan(phi1);
    const double c1 = kEp2 * cos1 * cos1;
    const double t1 = tan1 * tan1;
    const double n1 = kSemiMajor / std::sqrt(1.0 - e2 * sin1 * sin1);
    const double r1 = kSemiMajor * (1.0 - e2) / std::pow(1.0 - e2 * sin1 * sin1, 1.5);
    const double d = x / (n1 * kUtmScale);
    const double d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d, d6 = d5 * d;

    const double lat = phi1 - (n1 * tan1 / r1) *
                                  (d2 / 2.0 -
                                   (5.0 + 3.0 * t1 + 10.0 * c1 - 4.0 * c1 * c1 - 9.0 * kEp2) *
                                       d4 / 24.0 +
                                   (61.0 + 90.0 * t1 + 298.0 * c1 + 45.0 * t1 * t1 -
                                    252.0 * kEp2 - 3.0 * c1 * c1) *
                                       d6 / 720.0);
    const double dlon = (d - (1.0 + 2.0 * t1 + c1) * d3 / 6.0 +
                         (5.0 - 2.0 * c1 + 28.0 * t1 - 3.0 * c1 * c1 + 8.0 * kEp2 +
                          24.0 * t1 * t1) *
                             d5 / 120.0) /
                        cos1;

    const double rad = 180.0 / M_PI;
    return {utm_central_meridian_deg(zone) + dlon * rad, lat * rad};
}

}  // namespace redistrict
