// Acceptance suite: end-to-end checks of the simulator against its frozen
// formula values, an exhaustive collision recount, the expected blanking-vs-
// baseline behavior on the bundled scenario, determinism and runtime scaling.
// Each check prints one PASS/FAIL line; the process exits nonzero if any
// check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "coexsim/cli.hpp"
#include "coexsim/metrics.hpp"
#include "coexsim/persist.hpp"
#include "coexsim/report.hpp"
#include "coexsim/scenario.hpp"
#include "test_support.hpp"

using namespace coexsim;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("C%d %-4s %s%s%s\n", id, ok ? "PASS" : "FAIL", name.c_str(), detail.empty() ? "" : " — ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) {
    ++failures;
  }
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) {
    return "<missing " + p.string() + ">";
  }
  return std::string(std::istreambuf_iterator<char>(f), {});
}

bool approx(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(b), 1.0); }

// ---- C1: formula golden values ---------------------------------------------

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream why;

  // Doppler magnitude: independent arithmetic oracle
  const double doppler_oracle = 7800.0 / 299792458.0 * 3.5e9;
  if (!approx(doppler_correction(7800.0, 3.5e9), doppler_oracle, 1e-9)) {
    ok = false;
    why << "doppler mismatch; ";
  }

  // Footprint radius: 60 deg at 550 km, and the 90 deg identity
  if (std::abs(footprint_radius(550000.0, 60.0) - 317542.6) > 0.1) {
    ok = false;
    why << "footprint(60deg) = " << footprint_radius(550000.0, 60.0) << "; ";
  }
  if (!approx(footprint_radius(550000.0, 90.0), 550000.0, 1e-9)) {
    ok = false;
    why << "footprint(90deg) != altitude; ";
  }

  // PRB mapping on the default plan
  const band_plan plan = testsupport::default_band();
  if (prb_start_frequency({1, link_direction::downlink}, plan) != 3.700e9) {
    ok = false;
    why << "k=1 start; ";
  }
  if (!approx(prb_start_frequency({50, link_direction::downlink}, plan), 3.7e9 + 9e6 / 50.0 * 49.0, 1e-9)) {
    ok = false;
    why << "k=50 start; ";
  }
  for (int d = 0; d < 2 && ok; ++d) {
    for (int k = 1; k <= plan.n_prb; ++k) {
      const auto back = frequency_to_prb(
          prb_start_frequency({k, static_cast<link_direction>(d)}, plan), plan, static_cast<link_direction>(d));
      if (!back || *back != k) {
        ok = false;
        why << "round trip failed at k=" << k << "; ";
        break;
      }
    }
  }
  const double dt = elapsed_s(t0);
  if (dt >= 1.0) {
    ok = false;
    why << "took " << dt << " s";
  }
  report(1, "formula golden values", ok, why.str());
}

// ---- C2: oracle equivalence -------------------------------------------------

void criterion_2(const scenario& sc) {
  const auto t0 = std::chrono::steady_clock::now();
  long slots_checked = 0, mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (sim_policy p : {sim_policy::epa, sim_policy::proposed}) {
      const run_result r = run(sc, p, seed, 1.0, {.record_rates = false});
      for (const auto& rec : r.slots) {
        ++slots_checked;
        if (!testsupport::same_events(rec.collisions, testsupport::brute_force_collisions(rec, *r.tess, sc))) {
          ++mismatches;
        }
      }
    }
  }
  std::ostringstream d;
  d << slots_checked << " slots, " << mismatches << " mismatches, " << elapsed_s(t0) << " s";
  report(2, "collision counts equal the brute-force recount", mismatches == 0 && elapsed_s(t0) < 300.0,
         d.str());
}

// ---- C3: Voronoi correctness ------------------------------------------------

void criterion_3(const scenario& sc) {
  const auto sites_full = sector_sites(sc);
  std::vector<plane_point> sites;
  for (const auto& s : sites_full) {
    sites.push_back(s.position);
  }
  const region bounds = scenario_bounds(sc);
  const tessellation tess = voronoi_tessellate(sites, bounds);

  int mismatches = 0;
  counter_rng rng{314159};
  const auto& bv = bounds.vertices();
  const double lo_x = bv[0].x, lo_y = bv[0].y, hi_x = bv[2].x, hi_y = bv[2].y;
  for (int i = 0; i < 10000; ++i) {
    const plane_point p{lo_x + rng.next_double() * (hi_x - lo_x), lo_y + rng.next_double() * (hi_y - lo_y)};
    const std::size_t nearest = nearest_site(p, tess);
    std::size_t containing = sites.size();
    for (std::size_t c = 0; c < tess.cells.size(); ++c) {
      if (tess.cells[c].contains(p)) {
        containing = c;
        break;
      }
    }
    if (containing >= sites.size() ||
        distance(p, sites[containing]) > distance(p, sites[nearest]) + 1e-9) {
      ++mismatches;
    }
  }
  double area = 0.0;
  for (const region& c : tess.cells) {
    area += c.area();
  }
  const bool area_ok = std::abs(area - bounds.area()) <= 1e-6 * bounds.area();
  std::ostringstream d;
  d << sites.size() << " sites, " << mismatches << " probe mismatches, area rel err "
    << std::abs(area - bounds.area()) / bounds.area();
  report(3, "voronoi partition matches brute-force nearest neighbor", mismatches == 0 && area_ok, d.str());
}

// ---- C4: zero collisions under ideal association -----------------------------

void criterion_4(scenario sc) {
  sc.association = association_mode::voronoi_ideal;
  sc.non_blankable.clear();
  long total = 0, runs = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (double util : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
      const run_result r = run(sc, sim_policy::proposed, seed, util, {.record_rates = false});
      ++runs;
      for (const auto& rec : r.slots) {
        total += static_cast<long>(rec.collisions.size());
        if (rec.satellite_interference_w != 0.0) {
          total += 1000000; // interference without a counted collision
        }
      }
    }
  }
  std::ostringstream d;
  d << runs << " runs, " << total << " collisions";
  report(4, "ideal association with all PRBs blankable yields zero collisions", total == 0, d.str());
}

// ---- C5 + C6 + C7: the full grid --------------------------------------------

struct grid_outputs {
  fs::path dir;
  report_inputs inputs;
  double seconds = 0.0;
};

grid_outputs run_grid(const std::string& scenario_path, const fs::path& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  run_spec spec;
  spec.scenario_path = scenario_path;
  spec.policies = {sim_policy::epa, sim_policy::proposed};
  spec.seeds.clear();
  for (std::uint64_t s = 1; s <= 20; ++s) {
    spec.seeds.push_back(s);
  }
  spec.out_dir = out_dir.string();
  if (cmd_run(spec) != exit_ok) {
    throw std::runtime_error("grid run failed");
  }
  grid_outputs out;
  out.dir = out_dir;
  out.inputs = read_result_dirs({out_dir.string()});
  out.seconds = elapsed_s(t0);
  return out;
}

void criterion_5(const grid_outputs& grid) {
  bool ok = true;
  std::ostringstream why;
  const auto table = collision_summary(grid.inputs.collision_totals);
  double gap_low = 0.0, gap_high = 0.0, prop_mean_total = 0.0;
  for (double util : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    const auto epa = table.at({"epa", util});
    const auto prop = table.at({"proposed", util});
    if (!(epa.mean > prop.mean)) {
      ok = false;
      why << "no dominance at u=" << util << " (" << epa.mean << " vs " << prop.mean << "); ";
    }
    if (util == 0.1) {
      gap_low = epa.mean - prop.mean;
    }
    if (util == 1.0) {
      gap_high = epa.mean - prop.mean;
    }
    prop_mean_total += prop.mean;
  }
  if (!(gap_high > gap_low)) {
    ok = false;
    why << "gap did not grow (" << gap_low << " -> " << gap_high << "); ";
  }
  if (!(prop_mean_total > 0.0)) {
    ok = false;
    why << "no residual collisions under the proposed policy; ";
  }
  if (grid.seconds >= 900.0) {
    ok = false;
    why << "grid took " << grid.seconds << " s; ";
  }
  std::ostringstream d;
  d << "gap " << gap_low << " -> " << gap_high << ", grid " << grid.seconds << " s";
  report(5, "baseline collides more at every utilization, gap grows with load", ok,
         why.str().empty() ? d.str() : why.str() + d.str());
}

void criterion_6(const grid_outputs& grid) {
  bool ok = true;
  std::ostringstream why;
  double dl_q8[2] = {0, 0}; // epa, proposed
  bool outage_seen = false;
  for (int d = 0; d < 2; ++d) {
    const auto& src = d == 0 ? grid.inputs.sumrate_dl : grid.inputs.sumrate_ul;
    const char* dname = d == 0 ? "dl" : "ul";
    const auto epa_it = src.find({"epa", 1.0});
    const auto prop_it = src.find({"proposed", 1.0});
    if (epa_it == src.end() || prop_it == src.end()) {
      report(6, "sum-rate CDFs", false, std::string("missing samples for ") + dname);
      return;
    }
    const empirical_cdf epa(epa_it->second);
    const empirical_cdf prop(prop_it->second);

    if (epa.value(0.0) >= 0.4) {
      outage_seen = true;
    }

    // stochastic dominance at 512 evenly spaced abscissae
    const double hi = std::max(epa.sorted_samples().back(), prop.sorted_samples().back());
    for (int i = 0; i < 512; ++i) {
      const double w = hi * i / 511.0;
      if (prop.value(w) > epa.value(w) + 0.02) {
        ok = false;
        why << "dominance broken at w=" << w << " (" << dname << "); ";
        break;
      }
    }

    const double e8 = epa.quantile(0.8);
    const double p8 = prop.quantile(0.8);
    if (!(p8 > e8)) {
      ok = false;
      why << dname << " q80: proposed " << p8 << " <= epa " << e8 << "; ";
    }
    if (d == 0) {
      dl_q8[0] = e8;
      dl_q8[1] = p8;
    } else {
      if (!(e8 <= dl_q8[0] / 10.0) || !(p8 <= dl_q8[1] / 10.0)) {
        ok = false;
        why << "uplink q80 not 10x below downlink (" << e8 << "/" << dl_q8[0] << ", " << p8 << "/"
            << dl_q8[1] << "); ";
      }
    }
  }
  if (!outage_seen) {
    ok = false;
    why << "baseline outage mass below 0.4 in both directions; ";
  }
  report(6, "sum-rate CDFs: outage mass, dominance, quantile gains", ok, why.str());
}

void criterion_7(const std::string& scenario_path, const grid_outputs& first, const fs::path& second_dir) {
  const grid_outputs second = run_grid(scenario_path, second_dir);
  bool ok = true;
  std::ostringstream why;
  for (const char* name :
       {"collisions.csv", "sumrate_dl.csv", "sumrate_ul.csv", "actions.csv", "manifest.txt",
        "scenario_echo.scn"}) {
    if (slurp(first.dir / name) != slurp(second.dir / name)) {
      ok = false;
      why << name << " differs; ";
    }
  }
  report(7, "re-running the full grid is byte-identical", ok, why.str());
}

// ---- C8: runtime scaling ------------------------------------------------------

void criterion_8() {
  auto per_slot = [](int nx, int ny) {
    const scenario sc = testsupport::grid_scenario(nx, ny);
    double best = 1e9;
    for (int rep = 0; rep < 2; ++rep) {
      const run_result r = run(sc, sim_policy::proposed, 1, 0.1);
      best = std::min(best, r.slot_seconds / static_cast<double>(r.slots.size()));
    }
    return best;
  };
  const double t30 = per_slot(2, 5);     // 10 sites, 30 sectors
  const double t300 = per_slot(10, 10);  // 100 sites, 300 sectors
  const double t3000 = per_slot(25, 40); // 1000 sites, 3000 sectors
  const double lhs = t3000 / t300;
  const double rhs = 10.0 * (t300 / t30);
  std::ostringstream d;
  d << "per-slot " << t30 << " / " << t300 << " / " << t3000 << " s; ratio " << lhs << " < " << rhs;
  report(8, "per-slot engine time grows sub-quadratically in sector count", lhs < rhs, d.str());
}

// ---- C9: channel statistics ----------------------------------------------------

void criterion_9() {
  counter_rng rng{271828};
  double acc = 0.0;
  for (int i = 0; i < 10000; ++i) {
    for (const auto& e : draw_channel_vector(rng, 4)) {
      acc += std::norm(e);
    }
  }
  const double mean = acc / 10000.0;

  const beam_codebook cb = grid_of_beams(4, 8);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    channel_realization ch;
    ch.h = draw_channel_vector(rng, 4);
    ch.large_scale_gain = 1.0;
    std::size_t expect = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < cb.beams.size(); ++j) {
      const double p = beamformed_power(ch.h, cb.beams[j]);
      if (p > best) {
        best = p;
        expect = j;
      }
    }
    if (best_beam(ch, cb) != expect) {
      ++mismatches;
    }
  }
  std::ostringstream d;
  d << "mean |h|^2 = " << mean << ", beam mismatches " << mismatches;
  report(9, "channel normalization and beam selection", mean > 0.97 && mean < 1.03 && mismatches == 0,
         d.str());
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <scenario.scn> <work-dir>\n";
    return 2;
  }
  const std::string scenario_path = argv[1];
  const fs::path work_dir = argv[2];
  fs::remove_all(work_dir);
  fs::create_directories(work_dir);

  try {
    const load_result loaded = load_scenario(scenario_path);

    criterion_1();
    criterion_2(loaded.sc);
    criterion_3(loaded.sc);
    criterion_4(loaded.sc);
    const grid_outputs grid = run_grid(scenario_path, work_dir / "grid1");
    criterion_5(grid);
    criterion_6(grid);
    criterion_7(scenario_path, grid, work_dir / "grid2");
    criterion_8();
    criterion_9();
  } catch (const std::exception& e) {
    std::cerr << "acceptance aborted: " << e.what() << "\n";
    return 1;
  }

  std::printf("%s (%d failure%s)\n", failures == 0 ? "ALL ACCEPTANCE CRITERIA PASS" : "ACCEPTANCE FAILURES",
              failures, failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}
