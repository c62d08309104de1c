#include "coexsim/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coexsim {

std::pair<geo_point, double> position_at(const satellite_trajectory& traj, double t_s) {
  if (traj.waypoints.size() < 2) {
    throw std::invalid_argument("position_at: trajectory needs at least two waypoints");
  }
  if (t_s < traj.waypoints.front().t_s || t_s > traj.waypoints.back().t_s) {
    throw std::out_of_range("position_at: time outside trajectory span");
  }
  const auto it = std::upper_bound(traj.waypoints.begin(), traj.waypoints.end(), t_s,
                                   [](double t, const trajectory_waypoint& w) { return t < w.t_s; });
  const trajectory_waypoint& b = (it == traj.waypoints.end()) ? traj.waypoints.back() : *it;
  const trajectory_waypoint& a = (it == traj.waypoints.end()) ? traj.waypoints[traj.waypoints.size() - 2]
                                                              : *(it - 1);
  const double u = (b.t_s == a.t_s) ? 0.0 : (t_s - a.t_s) / (b.t_s - a.t_s);
  geo_point p{a.position.lon_deg + u * (b.position.lon_deg - a.position.lon_deg),
              a.position.lat_deg + u * (b.position.lat_deg - a.position.lat_deg)};
  return {p, a.altitude_m + u * (b.altitude_m - a.altitude_m)};
}

double footprint_radius(double altitude_m, double beamwidth_deg) {
  if (altitude_m <= 0.0) {
    throw std::invalid_argument("footprint_radius: altitude must be positive");
  }
  if (beamwidth_deg <= 0.0 || beamwidth_deg >= 180.0) {
    throw std::invalid_argument("footprint_radius: beamwidth must be in (0, 180) degrees");
  }
  const double theta = beamwidth_deg * deg_to_rad;
  return altitude_m * (1.0 - std::cos(theta)) / std::sin(theta);
}

satellite_footprint footprint_at(const satellite_trajectory& traj, double t_s, const geo_point& origin) {
  const auto [pos, alt] = position_at(traj, t_s);
  return {project_to_plane(pos, origin), footprint_radius(alt, traj.beamwidth_deg)};
}

motion_sign range_rate_sign(const satellite_trajectory& traj, const plane_point& sector_pos, double t_s,
                            double dt_s, const geo_point& origin) {
  if (dt_s <= 0.0) {
    throw std::invalid_argument("range_rate_sign: dt must be positive");
  }
  const plane_point c0 = project_to_plane(position_at(traj, t_s).first, origin);
  const plane_point c1 = project_to_plane(position_at(traj, t_s + dt_s).first, origin);
  const double dd = distance(c1, sector_pos) - distance(c0, sector_pos);
  if (dd < -1e-9) {
    return motion_sign::approaching;
  }
  if (dd > 1e-9) {
    return motion_sign::departing;
  }
  return motion_sign::stationary;
}

} // namespace coexsim
