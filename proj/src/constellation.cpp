#include "leograph/constellation.hpp"

#include <set>
#include <sstream>

#include "leograph/errors.hpp"

namespace leograph {

namespace {

double reduce_deg(double angle) {
  angle = std::fmod(angle, 360.0);
  if (angle < 0.0) angle += 360.0;
  return angle;
}

}  // namespace

void ShellSpec::validate() const {
  std::ostringstream err;
  if (num_planes < 1) {
    err << "shell '" << name << "': num_planes must be >= 1, got " << num_planes;
  } else if (sats_per_plane < 1) {
    err << "shell '" << name << "': sats_per_plane must be >= 1, got " << sats_per_plane;
  } else if (altitude_km <= 0.0) {
    err << "shell '" << name << "': altitude must be > 0, got " << altitude_km;
  } else if (inclination_deg < 0.0 || inclination_deg > 180.0) {
    err << "shell '" << name << "': inclination must be in [0, 180], got " << inclination_deg;
  } else if (phasing_factor < 0 || phasing_factor >= num_planes) {
    err << "shell '" << name << "': phasing_factor must be in [0, num_planes), got "
        << phasing_factor;
  } else {
    return;
  }
  throw ConfigError(err.str());
}

OrbitalElements make_orbital_elements(double altitude_km, double inclination_deg,
                                      double raan_deg, double phase_deg) {
  OrbitalElements el;
  el.semi_major_axis_km = kEarthRadiusKm + altitude_km;
  el.inclination_rad = deg_to_rad(inclination_deg);
  el.raan_rad = deg_to_rad(reduce_deg(raan_deg));
  el.initial_phase_rad = deg_to_rad(reduce_deg(phase_deg));
  const double a = el.semi_major_axis_km;
  el.mean_motion_rad_s = std::sqrt(kMuEarthKm3S2 / (a * a * a));
  return el;
}

double orbital_period_s(const OrbitalElements& el) {
  return 2.0 * kPi / el.mean_motion_rad_s;
}

StateVector propagate(const OrbitalElements& el, double t_s) {
  const double u = el.initial_phase_rad + el.mean_motion_rad_s * t_s;
  const double cu = std::cos(u);
  const double su = std::sin(u);
  const double co = std::cos(el.raan_rad);
  const double so = std::sin(el.raan_rad);
  const double ci = std::cos(el.inclination_rad);
  const double si = std::sin(el.inclination_rad);

  // Orbit-plane basis: p points at the ascending node, q a quarter orbit
  // ahead of it.
  const Vec3 p{co, so, 0.0};
  const Vec3 q{-so * ci, co * ci, si};

  const double a = el.semi_major_axis_km;
  const double speed = a * el.mean_motion_rad_s;

  StateVector sv;
  sv.position_km = p * (a * cu) + q * (a * su);
  sv.velocity_km_s = q * (speed * cu) - p * (speed * su);
  sv.time_s = t_s;
  return sv;
}

std::vector<std::pair<SatelliteId, OrbitalElements>> generate_walker_shell(
    const ShellSpec& spec, int shell_index) {
  spec.validate();
  const int planes = spec.num_planes;
  const int slots = spec.sats_per_plane;
  const double raan_step = 360.0 / planes;
  const double slot_step = 360.0 / slots;
  const double phasing_step = 360.0 * spec.phasing_factor / (static_cast<double>(planes) * slots);

  std::vector<std::pair<SatelliteId, OrbitalElements>> out;
  out.reserve(static_cast<std::size_t>(spec.size()));
  for (int p = 0; p < planes; ++p) {
    const double raan = p * raan_step;
    for (int s = 0; s < slots; ++s) {
      const double phase = s * slot_step + p * phasing_step;
      out.emplace_back(SatelliteId{shell_index, p, s},
                       make_orbital_elements(spec.altitude_km, spec.inclination_deg, raan, phase));
    }
  }
  return out;
}

Constellation::Constellation(std::vector<ShellSpec> specs) : shells_(std::move(specs)) {
  if (shells_.empty()) {
    throw ConfigError("constellation requires at least one shell");
  }
  std::set<std::string> names;
  for (const auto& spec : shells_) {
    spec.validate();
    if (!names.insert(spec.name).second) {
      throw ConfigError("duplicate shell name '" + spec.name + "'");
    }
  }
  offsets_.reserve(shells_.size() + 1);
  for (std::size_t i = 0; i < shells_.size(); ++i) {
    auto shell = generate_walker_shell(shells_[i], static_cast<int>(i));
    for (auto& [id, el] : shell) {
      elements_.push_back(el);
    }
    offsets_.push_back(static_cast<std::uint32_t>(elements_.size()));
  }
}

std::uint32_t Constellation::flat_index(const SatelliteId& id) const {
  const auto& spec = shells_[static_cast<std::size_t>(id.shell)];
  return offsets_[static_cast<std::size_t>(id.shell)] +
         static_cast<std::uint32_t>(id.plane * spec.sats_per_plane + id.slot);
}

SatelliteId Constellation::sat_id(std::uint32_t flat) const {
  const int shell = shell_of(flat);
  const auto& spec = shells_[static_cast<std::size_t>(shell)];
  const std::uint32_t local = flat - offsets_[static_cast<std::size_t>(shell)];
  return {shell, static_cast<int>(local) / spec.sats_per_plane,
          static_cast<int>(local) % spec.sats_per_plane};
}

int Constellation::shell_of(std::uint32_t flat) const {
  int shell = 0;
  while (offsets_[static_cast<std::size_t>(shell) + 1] <= flat) ++shell;
  return shell;
}

std::vector<Vec3> Constellation::positions_eci(double t_s) const {
  std::vector<Vec3> out(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    out[i] = propagate(elements_[i], t_s).position_km;
  }
  return out;
}

std::vector<Vec3> Constellation::positions_ecef(double t_s) const {
  std::vector<Vec3> out(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    out[i] = eci_to_ecef(propagate(elements_[i], t_s).position_km, t_s);
  }
  return out;
}

Constellation generate_constellation(std::vector<ShellSpec> specs) {
  return Constellation(std::move(specs));
}

std::vector<ShellSpec> reference_shells() {
  return {
      {"S1", 550.0, 53.0, 72, 22, 1},
      {"S2", 540.0, 53.2, 72, 22, 1},
      {"S3", 570.0, 70.0, 36, 20, 1},
      {"S4", 560.0, 97.6, 6, 58, 1},
      {"S5", 530.0, 43.0, 56, 60, 1},
      {"S6", 535.0, 33.0, 56, 60, 1},
  };
}

}  // namespace leograph
