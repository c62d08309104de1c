#pragma once

#include <utility>
#include <vector>

#include "coexsim/geometry.hpp"
#include "coexsim/spectrum.hpp"

namespace coexsim {

struct trajectory_waypoint {
  double t_s = 0.0;
  geo_point position;
  double altitude_m = 0.0;
};

/// Piecewise-linear ground track at a known constant Earth-relative speed.
struct satellite_trajectory {
  int id = 0;
  std::vector<trajectory_waypoint> waypoints; // strictly increasing times
  double ground_speed_mps = 7800.0;
  double beamwidth_deg = 60.0;
  std::vector<carrier_tone> carriers;
};

/// Circular nadir projection of the satellite antenna cone.
struct satellite_footprint {
  plane_point center;
  double radius_m = 0.0;
};

/// Interpolated position and altitude at time `t_s`; exact at waypoints.
std::pair<geo_point, double> position_at(const satellite_trajectory& traj, double t_s);

/// Radius of the projected coverage circle: altitude * (1 - cos(bw)) / sin(bw).
double footprint_radius(double altitude_m, double beamwidth_deg);

satellite_footprint footprint_at(const satellite_trajectory& traj, double t_s, const geo_point& origin);

/// Sign of the range rate between the footprint center and a sector point,
/// from the distance change over [t, t + dt].
motion_sign range_rate_sign(const satellite_trajectory& traj, const plane_point& sector_pos, double t_s,
                            double dt_s, const geo_point& origin);

} // namespace coexsim
