#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "leograph/geometry.hpp"

namespace leograph {

// Bucket grid over the unit sphere used to prune visibility candidates.
// Queries are conservative: they may return extra points but never miss one
// within the requested angular radius.
class SphereGrid {
 public:
  explicit SphereGrid(std::span<const Vec3> points);

  // Appends the indices of all points within `max_angle_deg` of the
  // direction of `center` (plus grid slop) to `out`.
  void query(const Vec3& center, double max_angle_deg, std::vector<std::uint32_t>& out) const;

 private:
  static constexpr int kLatCells = 18;  // 10 degree rows
  static constexpr int kLonCells = 36;  // 10 degree columns

  std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace leograph
