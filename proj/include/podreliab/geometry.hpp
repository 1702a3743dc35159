#pragma once

#include <cmath>

namespace podreliab {

// Position or displacement in a projected plane, meters.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// Point at fraction `t` along the segment a->b. t == 0 returns a exactly.
inline Vec2 lerp(Vec2 a, Vec2 b, double t) {
    return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

// Left-hand normal of a unit vector.
inline Vec2 perpendicular(Vec2 v) { return {-v.y, v.x}; }

// Compass bearing of a displacement (east = x, north = y), degrees in [0, 360).
inline double bearing_deg(Vec2 d) {
    double deg = std::atan2(d.x, d.y) * 180.0 / M_PI;
    if (deg < 0.0) deg += 360.0;
    if (deg >= 360.0) deg -= 360.0;
    return deg;
}

// Smallest absolute difference between two bearings, in [0, 180].
inline double bearing_difference_deg(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 360.0);
    return d > 180.0 ? 360.0 - d : d;
}

}  // namespace podreliab
