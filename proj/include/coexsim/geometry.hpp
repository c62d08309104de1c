#pragma once

#include <cstddef>
#include <vector>

namespace coexsim {

inline constexpr double earth_radius_m = 6371000.0;
inline constexpr double deg_to_rad = 3.141592653589793238462643383279502884 / 180.0;

/// Horizontal geodetic coordinate, degrees.
struct geo_point {
  double lon_deg = 0.0;
  double lat_deg = 0.0;
};

/// Local planar coordinate, meters east/north of the scenario origin.
struct plane_point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const plane_point& a, const plane_point& b);
double distance_sq(const plane_point& a, const plane_point& b);

/// Equirectangular projection around `origin`. Valid for points within 2
/// degrees of the origin in both coordinates; beyond that the flat-plane
/// distortion is no longer negligible and the call is rejected.
plane_point project_to_plane(const geo_point& p, const geo_point& origin);

/// Closed-form inverse of project_to_plane.
geo_point plane_to_geo(const plane_point& p, const geo_point& origin);

/// Convex polygon, counter-clockwise vertex order, used both for service
/// regions and for clip bounds.
class region {
public:
  explicit region(std::vector<plane_point> vertices);

  static region rectangle(const plane_point& lo, const plane_point& hi);

  const std::vector<plane_point>& vertices() const { return vertices_; }
  double area() const { return area_; }

  /// Closed membership: boundary points count as inside.
  bool contains(const plane_point& p) const;

  /// Strict interior membership (at least `margin` meters from every edge).
  bool contains_interior(const plane_point& p, double margin = 1e-9) const;

  /// Distance from `p` to the closed polygon; 0 when `p` is inside.
  double distance_to(const plane_point& p) const;

  /// Largest distance from `p` to any vertex.
  double max_vertex_distance(const plane_point& p) const;

  region translated(double dx, double dy) const;

private:
  std::vector<plane_point> vertices_;
  double area_ = 0.0;
};

struct tessellation {
  std::vector<plane_point> sites;
  std::vector<region> cells; // same order as sites
  region bounds;
};

/// Voronoi tessellation of `sites` clipped to `bounds`. Built by half-plane
/// intersection per site, visiting competitors in increasing distance and
/// stopping once the bisector can no longer cut the current cell; quadratic
/// in the worst case, near-linear with a log-factor for spread-out sites.
tessellation voronoi_tessellate(const std::vector<plane_point>& sites, const region& bounds);

/// Index of the site closest to `p`; ties break to the lowest index.
std::size_t nearest_site(const plane_point& p, const tessellation& t);

/// 1 iff the closed polygon and the closed disc intersect (boundary contact
/// counts).
bool region_circle_overlap(const region& r, const plane_point& center, double radius_m);

} // namespace coexsim
