#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "leograph/geometry.hpp"

namespace leograph {

// Static description of one Walker-delta shell.
struct ShellSpec {
  std::string name;
  double altitude_km = 0.0;
  double inclination_deg = 0.0;
  int num_planes = 0;
  int sats_per_plane = 0;
  int phasing_factor = 1;  // Walker F, inter-plane phase offset multiplier

  int size() const { return num_planes * sats_per_plane; }

  // Throws ConfigError naming the violated bound.
  void validate() const;
};

// Address of one satellite: shell, orbital plane, slot within the plane.
struct SatelliteId {
  int shell = 0;
  int plane = 0;
  int slot = 0;

  bool operator==(const SatelliteId&) const = default;
};

struct OrbitalElements {
  double semi_major_axis_km = 0.0;
  double inclination_rad = 0.0;
  double raan_rad = 0.0;
  double initial_phase_rad = 0.0;  // argument of latitude at epoch
  double mean_motion_rad_s = 0.0;
};

struct StateVector {
  Vec3 position_km;   // Earth-centered inertial
  Vec3 velocity_km_s;
  double time_s = 0.0;
};

// Circular-orbit elements for the given geometry. RAAN and phase in degrees.
OrbitalElements make_orbital_elements(double altitude_km, double inclination_deg,
                                      double raan_deg, double phase_deg);

double orbital_period_s(const OrbitalElements& el);

// Two-body propagation on the circular orbit. t in seconds since epoch.
StateVector propagate(const OrbitalElements& el, double t_s);

// Lays out one shell: RAAN of plane p is p * (360/P); the in-plane phase of
// slot s in plane p is s * (360/S) + p * F * (360/(P*S)). Angles reduced to
// [0, 360).
std::vector<std::pair<SatelliteId, OrbitalElements>> generate_walker_shell(
    const ShellSpec& spec, int shell_index);

// Ephemeris table over one or more shells, addressable by SatelliteId or by
// a dense flat index (shells in order, plane-major within a shell).
class Constellation {
 public:
  Constellation() = default;  // empty table, no shells
  explicit Constellation(std::vector<ShellSpec> specs);

  std::uint32_t size() const { return static_cast<std::uint32_t>(elements_.size()); }
  std::size_t shell_count() const { return shells_.size(); }
  const std::vector<ShellSpec>& shells() const { return shells_; }

  std::uint32_t flat_index(const SatelliteId& id) const;
  SatelliteId sat_id(std::uint32_t flat) const;
  int shell_of(std::uint32_t flat) const;
  std::uint32_t shell_begin(int shell) const { return offsets_[static_cast<std::size_t>(shell)]; }
  std::uint32_t shell_end(int shell) const { return offsets_[static_cast<std::size_t>(shell) + 1]; }

  const OrbitalElements& elements(std::uint32_t flat) const { return elements_[flat]; }

  // Positions of every satellite at time t, indexed by flat index.
  std::vector<Vec3> positions_eci(double t_s) const;
  std::vector<Vec3> positions_ecef(double t_s) const;

 private:
  std::vector<ShellSpec> shells_;
  std::vector<OrbitalElements> elements_;
  std::vector<std::uint32_t> offsets_ = {0};  // size shell_count()+1
};

// Validates all specs (duplicate names rejected) and builds the table.
Constellation generate_constellation(std::vector<ShellSpec> specs);

// The six-shell reference configuration used throughout the sample configs.
std::vector<ShellSpec> reference_shells();

}  // namespace leograph
