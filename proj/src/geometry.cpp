#include "coexsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coexsim {

namespace {

constexpr double projection_guard_deg = 2.0;
constexpr double clip_eps = 1e-9;

double cross(const plane_point& o, const plane_point& a, const plane_point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double polygon_area(const std::vector<plane_point>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const plane_point& a = v[i];
    const plane_point& b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

double point_segment_distance(const plane_point& p, const plane_point& a, const plane_point& b) {
  const double abx = b.x - a.x;
  const double aby = b.y - a.y;
  const double len_sq = abx * abx + aby * aby;
  if (len_sq == 0.0) {
    return std::hypot(p.x - a.x, p.y - a.y);
  }
  double t = ((p.x - a.x) * abx + (p.y - a.y) * aby) / len_sq;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * abx), p.y - (a.y + t * aby));
}

std::vector<plane_point> dedupe(std::vector<plane_point> v) {
  std::vector<plane_point> out;
  out.reserve(v.size());
  for (const plane_point& p : v) {
    if (out.empty() || std::abs(out.back().x - p.x) > clip_eps || std::abs(out.back().y - p.y) > clip_eps) {
      out.push_back(p);
    }
  }
  while (out.size() > 1 && std::abs(out.front().x - out.back().x) <= clip_eps &&
         std::abs(out.front().y - out.back().y) <= clip_eps) {
    out.pop_back();
  }
  return out;
}

/// Keep the side of the bisector with (p - mid) . n <= 0, boundary included.
std::vector<plane_point> clip_halfplane(const std::vector<plane_point>& poly, const plane_point& mid,
                                        double nx, double ny) {
  std::vector<plane_point> out;
  out.reserve(poly.size() + 2);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const plane_point& a = poly[i];
    const plane_point& b = poly[(i + 1) % n];
    const double sa = (a.x - mid.x) * nx + (a.y - mid.y) * ny;
    const double sb = (b.x - mid.x) * nx + (b.y - mid.y) * ny;
    if (sa <= clip_eps) {
      out.push_back(a);
    }
    if ((sa < -clip_eps && sb > clip_eps) || (sa > clip_eps && sb < -clip_eps)) {
      const double t = sa / (sa - sb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return dedupe(std::move(out));
}

} // namespace

double distance(const plane_point& a, const plane_point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double distance_sq(const plane_point& a, const plane_point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

plane_point project_to_plane(const geo_point& p, const geo_point& origin) {
  const double dlon = p.lon_deg - origin.lon_deg;
  const double dlat = p.lat_deg - origin.lat_deg;
  if (std::abs(dlon) > projection_guard_deg || std::abs(dlat) > projection_guard_deg) {
    throw std::invalid_argument("project_to_plane: point more than 2 degrees from origin");
  }
  const double lat0_rad = origin.lat_deg * deg_to_rad;
  return {dlon * deg_to_rad * earth_radius_m * std::cos(lat0_rad),
          dlat * deg_to_rad * earth_radius_m};
}

geo_point plane_to_geo(const plane_point& p, const geo_point& origin) {
  const double lat0_rad = origin.lat_deg * deg_to_rad;
  return {origin.lon_deg + p.x / (deg_to_rad * earth_radius_m * std::cos(lat0_rad)),
          origin.lat_deg + p.y / (deg_to_rad * earth_radius_m)};
}

region::region(std::vector<plane_point> vertices) : vertices_(dedupe(std::move(vertices))) {
  if (vertices_.size() < 3) {
    throw std::invalid_argument("region: needs at least 3 distinct vertices");
  }
  area_ = polygon_area(vertices_);
  if (area_ <= 0.0) {
    throw std::invalid_argument("region: vertices must be counter-clockwise with nonzero area");
  }
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double c = cross(vertices_[i], vertices_[(i + 1) % n], vertices_[(i + 2) % n]);
    if (c < -clip_eps * std::max(1.0, std::abs(area_))) {
      throw std::invalid_argument("region: polygon is not convex");
    }
  }
}

region region::rectangle(const plane_point& lo, const plane_point& hi) {
  if (!(hi.x > lo.x) || !(hi.y > lo.y)) {
    throw std::invalid_argument("region::rectangle: empty extent");
  }
  return region({{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}});
}

bool region::contains(const plane_point& p) const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(vertices_[i], vertices_[(i + 1) % n], p) < -clip_eps) {
      return false;
    }
  }
  return true;
}

bool region::contains_interior(const plane_point& p, double margin) const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const plane_point& a = vertices_[i];
    const plane_point& b = vertices_[(i + 1) % n];
    const double len = distance(a, b);
    if (len == 0.0 || cross(a, b, p) < margin * len) {
      return false;
    }
  }
  return true;
}

double region::distance_to(const plane_point& p) const {
  if (contains(p)) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, vertices_[i], vertices_[(i + 1) % n]));
  }
  return best;
}

double region::max_vertex_distance(const plane_point& p) const {
  double best = 0.0;
  for (const plane_point& v : vertices_) {
    best = std::max(best, distance(p, v));
  }
  return best;
}

region region::translated(double dx, double dy) const {
  std::vector<plane_point> v = vertices_;
  for (plane_point& p : v) {
    p.x += dx;
    p.y += dy;
  }
  return region(std::move(v));
}

tessellation voronoi_tessellate(const std::vector<plane_point>& sites, const region& bounds) {
  if (sites.empty()) {
    throw std::invalid_argument("voronoi_tessellate: no sites");
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!bounds.contains_interior(sites[i])) {
      throw std::invalid_argument("voronoi_tessellate: site " + std::to_string(i) + " outside bounds");
    }
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      if (distance(sites[i], sites[j]) < 1e-9) {
        throw std::invalid_argument("voronoi_tessellate: duplicate sites " + std::to_string(i) + " and " +
                                    std::to_string(j));
      }
    }
  }

  std::vector<region> cells;
  cells.reserve(sites.size());
  std::vector<std::size_t> order(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double da = distance_sq(sites[i], sites[a]);
      const double db = distance_sq(sites[i], sites[b]);
      return da != db ? da < db : a < b;
    });

    std::vector<plane_point> poly = bounds.vertices();
    double reach = 0.0;
    for (const plane_point& v : poly) {
      reach = std::max(reach, distance(sites[i], v));
    }
    for (std::size_t j : order) {
      if (j == i) {
        continue;
      }
      const double d = distance(sites[i], sites[j]);
      if (d > 2.0 * reach) {
        break; // bisector cannot cut the remaining cell
      }
      const plane_point mid{0.5 * (sites[i].x + sites[j].x), 0.5 * (sites[i].y + sites[j].y)};
      poly = clip_halfplane(poly, mid, sites[j].x - sites[i].x, sites[j].y - sites[i].y);
      if (poly.size() < 3) {
        throw std::runtime_error("voronoi_tessellate: cell collapsed");
      }
      reach = 0.0;
      for (const plane_point& v : poly) {
        reach = std::max(reach, distance(sites[i], v));
      }
    }
    cells.emplace_back(std::move(poly));
  }
  return tessellation{sites, std::move(cells), bounds};
}

std::size_t nearest_site(const plane_point& p, const tessellation& t) {
  if (!t.bounds.contains(p)) {
    throw std::invalid_argument("nearest_site: point outside bounds");
  }
  std::size_t best = 0;
  double best_d = distance_sq(p, t.sites[0]);
  for (std::size_t i = 1; i < t.sites.size(); ++i) {
    const double d = distance_sq(p, t.sites[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

bool region_circle_overlap(const region& r, const plane_point& center, double radius_m) {
  if (radius_m < 0.0) {
    throw std::invalid_argument("region_circle_overlap: negative radius");
  }
  return r.distance_to(center) <= radius_m;
}

} // namespace coexsim
