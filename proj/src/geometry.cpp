#include "leograph/geometry.hpp"

#include <stdexcept>

namespace leograph {

Vec3 eci_to_ecef(const Vec3& r_eci, double t_s) {
  // The Earth-fixed frame rotates eastward under the inertial frame, so an
  // inertial vector acquires a decreasing longitude in ECEF.
  const double theta = kEarthRotationRadS * t_s;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * r_eci.x + s * r_eci.y, -s * r_eci.x + c * r_eci.y, r_eci.z};
}

Vec3 geodetic_to_ecef(const GeodeticPoint& p) {
  const double r = kEarthRadiusKm + p.altitude_m / 1000.0;
  const double lat = deg_to_rad(p.latitude_deg);
  const double lon = deg_to_rad(p.longitude_deg);
  const double clat = std::cos(lat);
  return {r * clat * std::cos(lon), r * clat * std::sin(lon), r * std::sin(lat)};
}

double elevation_angle_deg(const Vec3& gs_ecef, const Vec3& sat_ecef) {
  const double gs_norm = norm(gs_ecef);
  if (gs_norm == 0.0) {
    throw std::domain_error("elevation angle undefined for a ground vector at the Earth's center");
  }
  const Vec3 d = sat_ecef - gs_ecef;
  const double d_norm = norm(d);
  if (d_norm == 0.0) {
    throw std::domain_error("elevation angle undefined for coincident ground and satellite points");
  }
  double s = dot(d, gs_ecef) / (d_norm * gs_norm);
  if (s > 1.0) s = 1.0;
  if (s < -1.0) s = -1.0;
  return rad_to_deg(std::asin(s));
}

bool visible(const Vec3& gs_ecef, const Vec3& sat_ecef, double threshold_deg) {
  return elevation_angle_deg(gs_ecef, sat_ecef) >= threshold_deg;
}

double slant_range_km(const Vec3& gs_ecef, const Vec3& sat_ecef) {
  return norm(sat_ecef - gs_ecef);
}

double max_central_angle_deg(double altitude_km, double elevation_deg) {
  const double e = deg_to_rad(elevation_deg);
  const double ratio = kEarthRadiusKm * std::cos(e) / (kEarthRadiusKm + altitude_km);
  return rad_to_deg(std::acos(ratio) - e);
}

}  // namespace leograph
