#pragma once

#include <cmath>

namespace preho {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kEarthMuKm3PerS2 = 398600.4418;
inline constexpr double kEarthRotationRadPerS = 7.2921159e-5;
inline constexpr double kSpeedOfLightKmPerS = 299792.458;

struct Geodetic {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double alt_m = 0.0;

    friend bool operator==(const Geodetic&, const Geodetic&) = default;
};

// Earth-centered Earth-fixed position in kilometres.
struct Ecef {
    double x_km = 0.0;
    double y_km = 0.0;
    double z_km = 0.0;

    friend bool operator==(const Ecef&, const Ecef&) = default;

    friend Ecef operator+(const Ecef& a, const Ecef& b) { return {a.x_km + b.x_km, a.y_km + b.y_km, a.z_km + b.z_km}; }
    friend Ecef operator-(const Ecef& a, const Ecef& b) { return {a.x_km - b.x_km, a.y_km - b.y_km, a.z_km - b.z_km}; }
    friend Ecef operator*(double s, const Ecef& a) { return {s * a.x_km, s * a.y_km, s * a.z_km}; }

    double norm() const { return std::sqrt(x_km * x_km + y_km * y_km + z_km * z_km); }
};

inline double dot(const Ecef& a, const Ecef& b) { return a.x_km * b.x_km + a.y_km * b.y_km + a.z_km * b.z_km; }

inline double distance_km(const Ecef& a, const Ecef& b) { return (a - b).norm(); }

inline double deg2rad(double d) { return d * (M_PI / 180.0); }
inline double rad2deg(double r) { return r * (180.0 / M_PI); }

// Spherical Earth of radius kEarthRadiusKm.
inline Ecef to_ecef(const Geodetic& g) {
    const double r = kEarthRadiusKm + g.alt_m / 1000.0;
    const double lat = deg2rad(g.lat_deg);
    const double lon = deg2rad(g.lon_deg);
    return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon), r * std::sin(lat)};
}

inline double propagation_ms(const Ecef& a, const Ecef& b) { return distance_km(a, b) / kSpeedOfLightKmPerS * 1000.0; }

}  // namespace preho
