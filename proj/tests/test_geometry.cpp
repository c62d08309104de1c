#include "doctest.h"

#include <cmath>

#include "coexsim/geometry.hpp"
#include "coexsim/rng.hpp"

using namespace coexsim;

TEST_CASE("projection maps the origin to (0, 0)") {
  const geo_point o{10.0, 50.0};
  const plane_point p = project_to_plane(o, o);
  CHECK(p.x == 0.0);
  CHECK(p.y == 0.0);
}

TEST_CASE("projection arc length at the equator") {
  // 0.01 degrees of longitude at latitude 0 is 0.01 * pi/180 * R_E meters.
  const double expected = 0.01 * deg_to_rad * earth_radius_m;
  CHECK(expected == doctest::Approx(1111.9492664).epsilon(1e-9));
  const plane_point p = project_to_plane({10.01, 0.0}, {10.0, 0.0});
  CHECK(p.x == doctest::Approx(expected).epsilon(1e-12));
  CHECK(p.y == 0.0);
}

TEST_CASE("projection round trip recovers coordinates") {
  const geo_point origin{12.3, 47.1};
  counter_rng rng{42};
  for (int i = 0; i < 200; ++i) {
    const geo_point g{origin.lon_deg + (rng.next_double() - 0.5) * 3.0,
                      origin.lat_deg + (rng.next_double() - 0.5) * 3.0};
    const geo_point back = plane_to_geo(project_to_plane(g, origin), origin);
    CHECK(back.lon_deg == doctest::Approx(g.lon_deg).epsilon(1e-12));
    CHECK(std::abs(back.lat_deg - g.lat_deg) < 1e-9);
  }
}

TEST_CASE("projection rejects far points") {
  CHECK_THROWS_AS(project_to_plane({14.5, 0.0}, {12.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(project_to_plane({12.0, 2.5}, {12.0, 0.0}), std::invalid_argument);
}

TEST_CASE("single-site tessellation returns the bounds") {
  const region bounds = region::rectangle({0, 0}, {100, 100});
  const tessellation t = voronoi_tessellate({{40, 60}}, bounds);
  REQUIRE(t.cells.size() == 1);
  CHECK(t.cells[0].area() == doctest::Approx(bounds.area()));
}

TEST_CASE("two mirror sites split the square down the bisector") {
  const region bounds = region::rectangle({0, 0}, {100, 100});
  const tessellation t = voronoi_tessellate({{25, 50}, {75, 50}}, bounds);
  CHECK(t.cells[0].area() == doctest::Approx(5000.0));
  CHECK(t.cells[1].area() == doctest::Approx(5000.0));
  CHECK(t.cells[0].contains({10, 50}));
  CHECK(!t.cells[0].contains({60, 50}));
}

TEST_CASE("tessellation rejects duplicates and out-of-bounds sites") {
  const region bounds = region::rectangle({0, 0}, {100, 100});
  CHECK_THROWS_AS(voronoi_tessellate({{10, 10}, {10, 10}}, bounds), std::invalid_argument);
  CHECK_THROWS_AS(voronoi_tessellate({{10, 10}, {120, 10}}, bounds), std::invalid_argument);
  CHECK_THROWS_AS(voronoi_tessellate({}, bounds), std::invalid_argument);
}

TEST_CASE("partition property against brute-force nearest neighbor") {
  counter_rng rng{7, 7};
  std::vector<plane_point> sites;
  for (int i = 0; i < 15; ++i) {
    sites.push_back({rng.next_double() * 9000.0 - 4500.0, rng.next_double() * 9000.0 - 4500.0});
  }
  const region bounds = region::rectangle({-10000, -10000}, {10000, 10000});
  const tessellation t = voronoi_tessellate(sites, bounds);

  double area_sum = 0.0;
  for (const region& c : t.cells) {
    area_sum += c.area();
  }
  CHECK(area_sum == doctest::Approx(bounds.area()).epsilon(1e-6));

  for (std::size_t i = 0; i < sites.size(); ++i) {
    CHECK(t.cells[i].contains_interior(sites[i]));
  }

  int mismatches = 0;
  for (int probe = 0; probe < 10000; ++probe) {
    const plane_point p{rng.next_double() * 20000.0 - 10000.0, rng.next_double() * 20000.0 - 10000.0};
    const std::size_t nearest = nearest_site(p, t);
    std::size_t containing = sites.size();
    for (std::size_t c = 0; c < t.cells.size(); ++c) {
      if (t.cells[c].contains(p)) {
        containing = c;
        break;
      }
    }
    REQUIRE(containing < sites.size());
    // ties on shared boundaries may resolve to any adjacent cell
    if (distance(p, sites[containing]) > distance(p, sites[nearest]) + 1e-9) {
      ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("nearest site matches brute force and breaks ties low") {
  std::vector<plane_point> sites{{0, 900}, {400, -400}, {-100, 0}, {300, 300}, {-800, 200}, {100, 0}};
  const region bounds = region::rectangle({-1000, -1000}, {1000, 1000});
  const tessellation t = voronoi_tessellate(sites, bounds);

  CHECK(nearest_site(sites[3], t) == 3);
  // (0, 0) is exactly 100 m from sites 2 and 5; the lower index wins.
  CHECK(nearest_site({0, 0}, t) == 2);
  CHECK_THROWS_AS(nearest_site({5000, 0}, t), std::invalid_argument);

  counter_rng rng{99};
  for (int i = 0; i < 2000; ++i) {
    const plane_point p{rng.next_double() * 2000.0 - 1000.0, rng.next_double() * 2000.0 - 1000.0};
    std::size_t best = 0;
    for (std::size_t s = 1; s < sites.size(); ++s) {
      if (distance_sq(p, sites[s]) < distance_sq(p, sites[best])) {
        best = s;
      }
    }
    CHECK(nearest_site(p, t) == best);
  }
}

TEST_CASE("region/circle overlap basics") {
  const region r = region::rectangle({0, 0}, {10, 10});
  CHECK(region_circle_overlap(r, {5, 5}, 0.0));        // containment
  CHECK(!region_circle_overlap(r, {15, 5}, 4.999));    // separation
  CHECK(region_circle_overlap(r, {15, 5}, 5.0));       // exact boundary contact
  CHECK_THROWS_AS(region_circle_overlap(r, {0, 0}, -1.0), std::invalid_argument);
}

TEST_CASE("overlap is monotone in radius") {
  const region r = region::rectangle({0, 0}, {10, 10});
  counter_rng rng{5};
  for (int i = 0; i < 500; ++i) {
    const plane_point c{rng.next_double() * 60.0 - 30.0, rng.next_double() * 60.0 - 30.0};
    const double rho = rng.next_double() * 30.0;
    if (region_circle_overlap(r, c, rho)) {
      CHECK(region_circle_overlap(r, c, rho * 1.5 + 1.0));
    }
  }
}

TEST_CASE("translation invariance") {
  counter_rng rng{11};
  std::vector<plane_point> sites;
  for (int i = 0; i < 8; ++i) {
    sites.push_back({rng.next_double() * 1000.0, rng.next_double() * 1000.0});
  }
  const region bounds = region::rectangle({-500, -500}, {1500, 1500});
  const tessellation t = voronoi_tessellate(sites, bounds);

  const double dx = 12345.0, dy = -678.0;
  std::vector<plane_point> moved = sites;
  for (plane_point& p : moved) {
    p.x += dx;
    p.y += dy;
  }
  const tessellation t2 = voronoi_tessellate(moved, bounds.translated(dx, dy));

  for (std::size_t i = 0; i < sites.size(); ++i) {
    CHECK(t.cells[i].area() == doctest::Approx(t2.cells[i].area()).epsilon(1e-9));
  }
  for (int i = 0; i < 200; ++i) {
    const plane_point c{rng.next_double() * 2000.0 - 500.0, rng.next_double() * 2000.0 - 500.0};
    const double rho = rng.next_double() * 800.0;
    for (std::size_t cell = 0; cell < sites.size(); ++cell) {
      CHECK(region_circle_overlap(t.cells[cell], c, rho) ==
            region_circle_overlap(t2.cells[cell], {c.x + dx, c.y + dy}, rho));
    }
  }
}
