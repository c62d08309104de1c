#include "doctest.h"

#include "coexsim/metrics.hpp"
#include "test_support.hpp"

using namespace coexsim;
using namespace coexsim::testsupport;

namespace {
run_result rr_with(const run_result& base, const slot_record& rec) {
  run_result out = base;
  out.slots = {rec};
  return out;
}
} // namespace

TEST_CASE("collision counts match the exhaustive recount") {
  const scenario sc = mini_scenario(true);
  for (sim_policy p : {sim_policy::epa, sim_policy::proposed}) {
    for (std::uint64_t seed : {1ull, 2ull}) {
      const run_result r = run(sc, p, seed, 1.0, {.record_rates = false});
      long total = 0;
      for (const auto& rec : r.slots) {
        const auto oracle = brute_force_collisions(rec, *r.tess, sc);
        CHECK(same_events(rec.collisions, oracle));
        total += static_cast<long>(rec.collisions.size());
      }
      if (p == sim_policy::epa) {
        CHECK(total > 0); // the pass must actually produce collisions
      }
    }
  }
}

TEST_CASE("blanking suppresses the baseline's collisions") {
  scenario sc = mini_scenario(true);
  sc.association = association_mode::voronoi_ideal;
  sc.non_blankable.clear();
  const run_result epa = run(sc, sim_policy::epa, 1, 1.0, {.record_rates = false});
  const run_result prop = run(sc, sim_policy::proposed, 1, 1.0, {.record_rates = false});
  long epa_total = 0, prop_total = 0;
  for (std::size_t t = 0; t < epa.slots.size(); ++t) {
    epa_total += static_cast<long>(epa.slots[t].collisions.size());
    prop_total += static_cast<long>(prop.slots[t].collisions.size());
  }
  CHECK(epa_total > 0);
  CHECK(prop_total == 0);
}

TEST_CASE("full-load baseline collisions equal the overlapped-sector-slot count") {
  // Slow satellite so the Doppler shift (v/c * f0 ~ 62 kHz) keeps the
  // zero-width carrier inside PRB 7: exactly one matched PRB per sector.
  scenario sc = mini_scenario(true);
  sc.association = association_mode::voronoi_ideal;
  sc.satellites[0].ground_speed_mps = 5000.0;
  sc.satellites[0].carriers[0].occupied_bandwidth_hz = 0.0;
  const freq_interval k7 = prb_interval({7, link_direction::downlink}, sc.band);
  sc.satellites[0].carriers[0].sky_frequency_hz = 0.5 * (k7.lo_hz + k7.hi_hz);

  const run_result r = run(sc, sim_policy::epa, 11, 1.0, {.record_rates = false});
  long dl_collisions = 0, dl_overlapped_sector_slots = 0, ul_collisions = 0, ul_overlapped = 0;
  for (const auto& rec : r.slots) {
    long overlapped = 0;
    if (rec.sat_in_zone[0]) {
      for (std::size_t q = 0; q < rec.sectors.size(); ++q) {
        overlapped += region_circle_overlap(r.tess->cells[q], rec.footprints[0].center,
                                            rec.footprints[0].radius_m);
      }
    }
    if (rec.direction_active[0]) {
      dl_overlapped_sector_slots += overlapped;
      dl_collisions += static_cast<long>(rec.collisions.size());
    } else {
      ul_overlapped += overlapped;
      ul_collisions += static_cast<long>(rec.collisions.size());
    }
  }
  REQUIRE(dl_overlapped_sector_slots > 0);
  // at full load the matched PRB is always transmitted, so every overlapped
  // sector-slot is exactly one downlink collision
  CHECK(dl_collisions == dl_overlapped_sector_slots);
  // uplink additionally requires the transmitting UE inside the footprint
  CHECK(ul_collisions <= ul_overlapped);
  CHECK(ul_collisions > 0);
}

TEST_CASE("collision windows bracket the baseline's collision slots") {
  const scenario sc = mini_scenario(true);
  const run_result epa = run(sc, sim_policy::epa, 1, 1.0, {.record_rates = false});
  const auto windows = collision_windows(epa, 2);
  REQUIRE(!windows.empty());
  long first = 1 << 30, last = -1;
  for (const auto& rec : epa.slots) {
    if (!rec.collisions.empty()) {
      first = std::min(first, rec.slot);
      last = std::max(last, rec.slot);
    }
  }
  CHECK(windows.front().first == std::max(0l, first - 2));
  CHECK(windows.back().last == std::min<long>(static_cast<long>(epa.slots.size()) - 1, last + 2));
  for (const auto& seg : windows) {
    CHECK(!seg.satellite_ids.empty());
    CHECK(!(seg.sectors[0].empty() && seg.sectors[1].empty()));
  }
  CHECK(collision_windows(run(mini_scenario(false), sim_policy::epa, 1, 1.0), 2).empty());
}

TEST_CASE("sum-rate sums scheduled rates and zeroes collided sectors") {
  // hand-built single-slot record: two affected sectors, one of them collided
  const scenario sc = mini_scenario(true);
  run_result rr;
  rr.policy = sim_policy::epa;
  rr.sectors = sector_sites(sc);

  slot_record rec;
  rec.slot = 0;
  rec.direction_active = {true, false};
  rec.sectors.resize(rr.sectors.size());
  auto& s0 = rec.sectors[0].dir[0];
  s0.rates.push_back({7, 3.0, 2.0});
  s0.rates.push_back({20, 7.0, 3.0});
  auto& s1 = rec.sectors[1].dir[0];
  s1.rates.push_back({4, 1.0, 1.0});

  window_segment seg;
  seg.first = 0;
  seg.last = 0;
  seg.sectors[0] = {0, 1};
  seg.satellite_ids = {1};

  const auto clean = sum_rate(rr_with(rr, rec), {seg}, sc);
  REQUIRE(clean.size() == 1);
  CHECK(clean[0].direction == link_direction::downlink);
  CHECK(clean[0].value_bits == doctest::Approx(6.0));

  // a collision puts sector 1 in outage for the slot
  rec.collisions.push_back({1, 1, 4, link_direction::downlink});
  const auto outaged = sum_rate(rr_with(rr, rec), {seg}, sc);
  REQUIRE(outaged.size() == 1);
  CHECK(outaged[0].value_bits == doctest::Approx(5.0));

  // every affected sector collided -> zero sample
  rec.collisions.push_back({0, 1, 7, link_direction::downlink});
  const auto zeroed = sum_rate(rr_with(rr, rec), {seg}, sc);
  REQUIRE(zeroed.size() == 1);
  CHECK(zeroed[0].value_bits == 0.0);
}

TEST_CASE("empirical cdf golden values") {
  const empirical_cdf cdf({0.0, 0.0, 1.0});
  CHECK(cdf.value(0.0) == doctest::Approx(2.0 / 3.0));
  CHECK(cdf.value(-0.5) == 0.0);
  CHECK(cdf.value(1.0) == 1.0);
  CHECK(cdf.quantile(0.6) == 0.0);
  CHECK(cdf.quantile(1.0) == 1.0);
  CHECK_THROWS_AS(empirical_cdf({}), std::invalid_argument);
  CHECK_THROWS_AS(cdf.quantile(1.5), std::invalid_argument);
}

TEST_CASE("cdf is monotone and quantiles invert it") {
  counter_rng rng{88};
  std::vector<double> samples;
  for (int i = 0; i < 500; ++i) {
    samples.push_back(rng.next_double() * 10.0);
  }
  const empirical_cdf cdf(samples);
  double prev = -1.0;
  for (double w = 0.0; w <= 10.0; w += 0.25) {
    const double f = cdf.value(w);
    CHECK(f >= prev);
    prev = f;
  }
  for (double p : {0.05, 0.3, 0.6, 0.8, 0.95, 1.0}) {
    CHECK(cdf.value(cdf.quantile(p)) >= p);
  }
}

TEST_CASE("collision summary aggregates per policy and utilization") {
  std::vector<run_total> runs;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    runs.emplace_back("epa", seed, 0.5, 10 + static_cast<long>(seed));
    runs.emplace_back("proposed", seed, 0.5, 2);
  }
  const auto table = collision_summary(runs);
  REQUIRE(table.size() == 2);
  const auto& epa = table.at({"epa", 0.5});
  CHECK(epa.mean == doctest::Approx(12.5));
  CHECK(epa.n_seeds == 4);
  CHECK(epa.std_error > 0.0);
  CHECK(table.at({"proposed", 0.5}).mean == doctest::Approx(2.0));
  CHECK(table.at({"proposed", 0.5}).std_error == 0.0);

  runs.emplace_back("epa", 99, 0.7, 1); // grid mismatch
  CHECK_THROWS_AS(collision_summary(runs), std::invalid_argument);
}

TEST_CASE("zero-satellite scenario summarizes to all-zero cells") {
  const scenario sc = mini_scenario(false);
  std::vector<run_total> runs;
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    for (const char* policy : {"epa", "proposed"}) {
      const run_result r =
          run(sc, policy == std::string("epa") ? sim_policy::epa : sim_policy::proposed, seed, 1.0);
      long total = 0;
      for (const auto& rec : r.slots) {
        total += static_cast<long>(rec.collisions.size());
      }
      runs.emplace_back(policy, seed, 1.0, total);
    }
  }
  for (const auto& [key, cell] : collision_summary(runs)) {
    CHECK(cell.mean == 0.0);
  }
}
