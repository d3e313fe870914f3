#pragma once

#include <cmath>

namespace leograph {

// Spherical Earth model. Elevation errors versus WGS84 stay below 0.2 deg,
// well under the 25 deg visibility thresholds this toolkit works with.
inline constexpr double kMuEarthKm3S2 = 398600.4418;      // gravitational parameter
inline constexpr double kEarthRadiusKm = 6371.0;          // mean radius
inline constexpr double kEarthRotationRadS = 7.2921159e-5;
inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

// Geodetic site on the spherical Earth. Altitude is measured in meters
// above the mean radius.
struct GeodeticPoint {
  double latitude_deg = 0.0;   // [-90, 90]
  double longitude_deg = 0.0;  // [-180, 180)
  double altitude_m = 0.0;

  bool valid() const {
    return latitude_deg >= -90.0 && latitude_deg <= 90.0 &&
           longitude_deg >= -180.0 && longitude_deg < 180.0;
  }
};

// Rotates an inertial vector into the Earth-fixed frame at simulation time
// t (seconds since epoch). The frames coincide at t = 0.
Vec3 eci_to_ecef(const Vec3& r_eci, double t_s);

Vec3 geodetic_to_ecef(const GeodeticPoint& p);

// Elevation of `sat` above the local horizontal plane at `gs`, in degrees,
// range [-90, 90]. Throws std::domain_error for coincident points or a
// ground vector at the Earth's center.
double elevation_angle_deg(const Vec3& gs_ecef, const Vec3& sat_ecef);

// True iff the elevation angle is at or above the threshold.
bool visible(const Vec3& gs_ecef, const Vec3& sat_ecef, double threshold_deg);

double slant_range_km(const Vec3& gs_ecef, const Vec3& sat_ecef);

// Largest central angle (degrees) between a ground point and a satellite at
// `altitude_km` such that the satellite is still at or above
// `elevation_deg`. Controls the visibility search radius.
double max_central_angle_deg(double altitude_km, double elevation_deg);

}  // namespace leograph
