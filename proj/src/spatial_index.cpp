#include "leograph/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace leograph {

namespace {

constexpr double kCellDeg = 10.0;

int lat_row(double lat_deg) {
  int r = static_cast<int>(std::floor((lat_deg + 90.0) / kCellDeg));
  return std::clamp(r, 0, 17);
}

int lon_col(double lon_deg) {
  int c = static_cast<int>(std::floor((lon_deg + 180.0) / kCellDeg));
  return ((c % 36) + 36) % 36;
}

}  // namespace

SphereGrid::SphereGrid(std::span<const Vec3> points) : cells_(kLatCells * kLonCells) {
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    const Vec3& p = points[i];
    const double r = norm(p);
    const double lat = rad_to_deg(std::asin(p.z / r));
    const double lon = rad_to_deg(std::atan2(p.y, p.x));
    cells_[static_cast<std::size_t>(lat_row(lat)) * kLonCells + lon_col(lon)].push_back(i);
  }
}

void SphereGrid::query(const Vec3& center, double max_angle_deg,
                       std::vector<std::uint32_t>& out) const {
  const double r = norm(center);
  const double lat = rad_to_deg(std::asin(center.z / r));
  const double lon = rad_to_deg(std::atan2(center.y, center.x));

  const int row_lo = lat_row(lat - max_angle_deg);
  const int row_hi = lat_row(lat + max_angle_deg);
  for (int row = row_lo; row <= row_hi; ++row) {
    // Widest latitude (closest to a pole) the row band can reach, used to
    // bound the longitude window conservatively.
    const double band_lo = -90.0 + row * kCellDeg;
    const double band_hi = band_lo + kCellDeg;
    const double extreme = std::max(std::abs(band_lo), std::abs(band_hi));
    int span_cols;
    if (extreme >= 80.0 || lat - max_angle_deg <= -80.0 || lat + max_angle_deg >= 80.0) {
      span_cols = kLonCells;  // polar rows: scan every column
    } else {
      const double min_cos = std::cos(deg_to_rad(extreme));
      const double dlon = max_angle_deg / std::max(min_cos, 0.05);
      span_cols = std::min(kLonCells, 2 * (static_cast<int>(dlon / kCellDeg) + 1) + 1);
    }
    const int col0 = lon_col(lon);
    const int half = span_cols / 2;
    for (int dc = -half; dc < span_cols - half; ++dc) {
      const int col = ((col0 + dc) % kLonCells + kLonCells) % kLonCells;
      const auto& cell = cells_[static_cast<std::size_t>(row) * kLonCells + col];
      out.insert(out.end(), cell.begin(), cell.end());
    }
  }
}

}  // namespace leograph
