#include "coexsim/engine.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "coexsim/metrics.hpp"

namespace coexsim {

namespace {

constexpr double in_zone_guard_deg = 1.99;

enum rng_tag : std::uint64_t {
  rk_sched = 1,
  rk_uepos,
  rk_shadow,
  rk_pick,
  rk_ch_serving,
  rk_ch_interferer,
  rk_ch_satellite,
  rk_own_beam,
};

int dir_idx(link_direction d) { return static_cast<int>(d); }

/// Bearing from `from` toward `to`, degrees clockwise from north.
double bearing_deg(const plane_point& from, const plane_point& to) {
  return std::atan2(to.x - from.x, to.y - from.y) / deg_to_rad;
}

double wrap180(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d > 180.0) {
    d -= 360.0;
  }
  if (d < -180.0) {
    d += 360.0;
  }
  return d;
}

/// Horizontal panel attenuation on the base-station side of a link.
double pattern_gain_db(const scenario& sc, const sector_site& sector, const plane_point& endpoint) {
  if (sc.antenna_3db_beamwidth_deg <= 0.0) {
    return 0.0;
  }
  const double phi = std::abs(wrap180(bearing_deg(sector.position, endpoint) - sector.azimuth_deg));
  const double att = 12.0 * (phi / sc.antenna_3db_beamwidth_deg) * (phi / sc.antenna_3db_beamwidth_deg);
  return -std::min(att, sc.antenna_max_attenuation_db);
}

/// Uniform point in a convex polygon through fan triangulation.
plane_point sample_in_region(const region& r, counter_rng& rng) {
  const auto& v = r.vertices();
  const std::size_t n = v.size();
  std::vector<double> cum(n - 2);
  double total = 0.0;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const double area = 0.5 * std::abs((v[i + 1].x - v[0].x) * (v[i + 2].y - v[0].y) -
                                       (v[i + 2].x - v[0].x) * (v[i + 1].y - v[0].y));
    total += area;
    cum[i] = total;
  }
  const double pick = rng.next_double() * total;
  std::size_t tri = std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin();
  tri = std::min(tri, n - 3);
  double a = rng.next_double();
  double b = rng.next_double();
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  const plane_point& p0 = v[0];
  const plane_point& p1 = v[tri + 1];
  const plane_point& p2 = v[tri + 2];
  return {p0.x + a * (p1.x - p0.x) + b * (p2.x - p0.x), p0.y + a * (p1.y - p0.y) + b * (p2.y - p0.y)};
}

struct engine_ctx {
  const scenario& sc;
  std::uint64_t seed;
  double utilization;

  std::shared_ptr<const tessellation> tess;
  std::vector<sector_site> sectors;
  std::vector<std::vector<int>> interferers; // per sector, nearest-first
  std::vector<std::vector<int>> candidates;  // per home sector, self first
  beam_codebook codebook;
  long n_slots = 0;
  int n_prb = 0;
  double bs_prb_power_w = 0.0;

  engine_ctx(const scenario& s, std::uint64_t sd, double util) : sc(s), seed(sd), utilization(util) {
    validate_scenario(sc);
    if (!(utilization > 0.0 && utilization <= 1.0)) {
      throw std::invalid_argument("run: utilization outside (0, 1]");
    }
    sectors = sector_sites(sc);
    std::vector<plane_point> sites;
    sites.reserve(sectors.size());
    for (const auto& s2 : sectors) {
      sites.push_back(s2.position);
    }
    tess = std::make_shared<tessellation>(voronoi_tessellate(sites, scenario_bounds(sc)));
    codebook = grid_of_beams(sc.antennas, sc.beams);
    n_slots = std::llround(sc.horizon_s / sc.slot_s);
    n_prb = sc.band.n_prb;
    bs_prb_power_w = sc.bs_power_w / n_prb;

    const int q = static_cast<int>(sectors.size());
    interferers.resize(q);
    candidates.resize(q);
    std::vector<int> order(q);
    for (int i = 0; i < q; ++i) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = distance_sq(sectors[i].position, sectors[a].position);
        const double db = distance_sq(sectors[i].position, sectors[b].position);
        return da != db ? da < db : a < b;
      });
      // order[0] == i (distance 0)
      const int icap = sc.max_interferer_sectors > 0 ? std::min(sc.max_interferer_sectors, q - 1) : q - 1;
      interferers[i].assign(order.begin() + 1, order.begin() + 1 + icap);
      const int ccap = sc.association_candidates > 0 ? std::min(sc.association_candidates, q) : q;
      candidates[i].assign(order.begin(), order.begin() + ccap);
    }
  }

  counter_rng key(std::initializer_list<std::uint64_t> parts) const { return counter_rng(parts); }

  double shadowing_db(long slot, int ue, int sector) const {
    counter_rng r{seed, static_cast<std::uint64_t>(slot), static_cast<std::uint64_t>(ue),
                  static_cast<std::uint64_t>(sector), rk_shadow};
    return sc.pathloss.shadowing_sigma_db * r.next_normal();
  }

  /// Base-station-side link gain between a sector and a UE position:
  /// pathloss + shadowing + panel pattern, linear.
  double link_gain(long slot, int sector, int ue, const plane_point& ue_pos) const {
    const double d = distance(sectors[sector].position, ue_pos);
    const double pl = large_scale_gain(d, sc.pathloss, shadowing_db(slot, ue, sector));
    return pl * std::pow(10.0, pattern_gain_db(sc, sectors[sector], ue_pos) / 10.0);
  }

  double satellite_gain(const plane_point& ground_pos, const satellite_footprint& fp, double altitude_m) const {
    const double slant = std::hypot(distance(ground_pos, fp.center), altitude_m);
    pathloss_model m = sc.pathloss;
    m.exponent = sc.sat_pathloss_exponent;
    m.shadowing_sigma_db = 0.0;
    return large_scale_gain(slant, m, 0.0);
  }
};

bool transmitted(const dir_record& dr, int k) {
  return dr.scheduled.test(k) && !dr.blanked.test(k) && dr.prb_ue[k] >= 0;
}

} // namespace

prb_mask::prb_mask(int n_prb) : n_(n_prb), words_((n_prb + 64) / 64, 0) {}

bool prb_mask::test(int k) const {
  if (k < 1 || k > n_) {
    return false;
  }
  return (words_[(k - 1) / 64] >> ((k - 1) % 64)) & 1u;
}

void prb_mask::set(int k) {
  if (k < 1 || k > n_) {
    throw std::out_of_range("prb_mask::set");
  }
  words_[(k - 1) / 64] |= std::uint64_t{1} << ((k - 1) % 64);
}

void prb_mask::clear(int k) {
  if (k < 1 || k > n_) {
    throw std::out_of_range("prb_mask::clear");
  }
  words_[(k - 1) / 64] &= ~(std::uint64_t{1} << ((k - 1) % 64));
}

int prb_mask::count() const {
  int c = 0;
  for (std::uint64_t w : words_) {
    c += std::popcount(w);
  }
  return c;
}

bool prb_mask::intersects(const prb_mask& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (words_[i] & other.words_[i]) {
      return true;
    }
  }
  return false;
}

std::vector<int> prb_mask::to_list() const {
  std::vector<int> out;
  for (int k = 1; k <= n_; ++k) {
    if (test(k)) {
      out.push_back(k);
    }
  }
  return out;
}

std::array<bool, 2> active_directions(const scenario& sc, long slot) {
  if (sc.band.duplex == duplex_mode::fdd) {
    return {true, true};
  }
  return {slot % 2 == 0, slot % 2 != 0};
}

std::vector<sat_snapshot> satellite_snapshot(const scenario& sc, const tessellation& tess,
                                             const std::vector<sector_site>& sectors, double t_s) {
  std::vector<sat_snapshot> out(sc.satellites.size());
  for (std::size_t v = 0; v < sc.satellites.size(); ++v) {
    const satellite_trajectory& traj = sc.satellites[v];
    const auto [pos, alt] = position_at(traj, t_s);
    const geo_point ahead = position_at(traj, t_s + sc.slot_s).first;
    sat_snapshot& snap = out[v];
    const auto outside = [&](const geo_point& p) {
      return std::abs(p.lon_deg - sc.origin.lon_deg) > in_zone_guard_deg ||
             std::abs(p.lat_deg - sc.origin.lat_deg) > in_zone_guard_deg;
    };
    // The range-rate step projects the position one slot ahead too; scenario
    // validation guarantees no overlap is possible out here.
    if (outside(pos) || outside(ahead)) {
      continue;
    }
    snap.in_zone = true;
    snap.altitude_m = alt;
    snap.footprint = {project_to_plane(pos, sc.origin), footprint_radius(alt, traj.beamwidth_deg)};
    snap.overlap.resize(sectors.size());
    snap.corrected.assign(traj.carriers.size(), std::vector<double>(sectors.size()));
    for (std::size_t q = 0; q < sectors.size(); ++q) {
      snap.overlap[q] =
          region_circle_overlap(tess.cells[q], snap.footprint.center, snap.footprint.radius_m) ? 1 : 0;
      const motion_sign sign = range_rate_sign(traj, sectors[q].position, t_s, sc.slot_s, sc.origin);
      for (std::size_t c = 0; c < traj.carriers.size(); ++c) {
        snap.corrected[c][q] = corrected_frequency(traj.carriers[c], traj.ground_speed_mps, sign);
      }
    }
  }
  return out;
}

prb_mask schedule_prbs(double utilization, int n_prb, const prb_mask& blanked, counter_rng rng) {
  if (!(utilization > 0.0 && utilization <= 1.0)) {
    throw std::invalid_argument("schedule_prbs: utilization outside (0, 1]");
  }
  std::vector<int> perm(n_prb);
  std::iota(perm.begin(), perm.end(), 1);
  for (int i = n_prb - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  const int target = static_cast<int>(std::lround(utilization * n_prb));
  prb_mask out(n_prb);
  int taken = 0;
  for (int k : perm) {
    if (taken >= target) {
      break;
    }
    if (!blanked.test(k)) {
      out.set(k);
      ++taken;
    }
  }
  return out;
}

std::vector<blanking_action> avoidance_step(long slot, const scenario& sc,
                                            const std::vector<sat_snapshot>& now,
                                            const std::vector<sat_snapshot>& next,
                                            std::vector<std::array<prb_mask, 2>>& blanked) {
  const std::size_t n_sectors = blanked.size();
  const int n_prb = sc.band.n_prb;
  prb_mask blockable(n_prb);
  for (int k = 1; k <= n_prb; ++k) {
    blockable.set(k);
  }
  for (int k : sc.non_blankable) {
    blockable.clear(k);
  }

  // desired[q][d] plus the lowest satellite id responsible per PRB
  std::vector<std::array<prb_mask, 2>> desired(n_sectors, {prb_mask(n_prb), prb_mask(n_prb)});
  std::vector<std::array<std::vector<int>, 2>> cause(
      n_sectors, {std::vector<int>(n_prb + 1, -1), std::vector<int>(n_prb + 1, -1)});

  for (const std::vector<sat_snapshot>* view : {&now, &next}) {
    for (std::size_t v = 0; v < view->size(); ++v) {
      const sat_snapshot& snap = (*view)[v];
      if (!snap.in_zone) {
        continue;
      }
      const int sat_id = sc.satellites[v].id;
      for (std::size_t q = 0; q < n_sectors; ++q) {
        if (!snap.overlap[q]) {
          continue;
        }
        for (std::size_t c = 0; c < snap.corrected.size(); ++c) {
          const double f = snap.corrected[c][q];
          const double bw = sc.satellites[v].carriers[c].occupied_bandwidth_hz;
          for (int d = 0; d < 2; ++d) {
            for (int k : occupied_prbs(f, bw, sc.band, static_cast<link_direction>(d))) {
              if (!blockable.test(k)) {
                continue; // control-bearing PRB, never blanked
              }
              desired[q][d].set(k);
              int& cs = cause[q][d][k];
              if (cs < 0 || sat_id < cs) {
                cs = sat_id;
              }
            }
          }
        }
      }
    }
  }

  std::vector<blanking_action> actions;
  for (std::size_t q = 0; q < n_sectors; ++q) {
    for (int d = 0; d < 2; ++d) {
      for (int k = 1; k <= n_prb; ++k) {
        const bool want = desired[q][d].test(k);
        const bool have = blanked[q][d].test(k);
        if (want && !have) {
          blanked[q][d].set(k);
          actions.push_back({slot, static_cast<int>(q), static_cast<link_direction>(d), k, blank_kind::blank,
                             cause[q][d][k]});
        } else if (!want && have) {
          blanked[q][d].clear(k);
          actions.push_back(
              {slot, static_cast<int>(q), static_cast<link_direction>(d), k, blank_kind::unblank, -1});
        }
      }
    }
  }
  return actions;
}

std::vector<blanking_action> epa_step(long) { return {}; }

run_result run(const scenario& sc, sim_policy policy, std::uint64_t seed, double utilization,
               const run_options& opt) {
  using clock = std::chrono::steady_clock;
  const auto setup_start = clock::now();

  engine_ctx ctx(sc, seed, utilization);
  const int n_sectors = static_cast<int>(ctx.sectors.size());
  const int n_prb = ctx.n_prb;
  const int ues_total = n_sectors * sc.ues_per_sector;

  run_result result;
  result.policy = policy;
  result.seed = seed;
  result.utilization = utilization;
  result.tess = ctx.tess;
  result.sectors = ctx.sectors;
  result.slots.reserve(ctx.n_slots);

  std::vector<std::array<prb_mask, 2>> blanked(n_sectors, {prb_mask(n_prb), prb_mask(n_prb)});
  // last action kind per (sector, direction, prb); 0 none, 1 blank, 2 unblank
  std::vector<std::uint8_t> last_action(static_cast<std::size_t>(n_sectors) * 2 * (n_prb + 1), 0);

  auto snap_now = satellite_snapshot(sc, *ctx.tess, ctx.sectors, 0.0);
  const auto setup_end = clock::now();
  result.setup_seconds = std::chrono::duration<double>(setup_end - setup_start).count();

  for (long t = 0; t < ctx.n_slots; ++t) {
    const auto slot_start = clock::now();
    auto snap_next = satellite_snapshot(sc, *ctx.tess, ctx.sectors, (t + 1) * sc.slot_s);

    std::vector<blanking_action> actions;
    if (policy == sim_policy::proposed) {
      actions = avoidance_step(t, sc, snap_now, snap_next, blanked);
    } else {
      actions = epa_step(t);
    }
    for (const blanking_action& a : actions) {
      const std::size_t idx =
          (static_cast<std::size_t>(a.sector) * 2 + dir_idx(a.direction)) * (n_prb + 1) + a.prb;
      const std::uint8_t kind = a.action == blank_kind::blank ? 1 : 2;
      if (last_action[idx] == kind) {
        throw invariant_error("blanking action alternation violated");
      }
      last_action[idx] = kind;
      result.actions.push_back(a);
    }

    slot_record rec;
    rec.slot = t;
    rec.direction_active = active_directions(sc, t);
    rec.sectors.resize(n_sectors);
    rec.sat_in_zone.resize(sc.satellites.size());
    rec.footprints.resize(sc.satellites.size());
    rec.sat_altitude_m.resize(sc.satellites.size(), 0.0);
    rec.corrected_hz.resize(sc.satellites.size());
    for (std::size_t v = 0; v < sc.satellites.size(); ++v) {
      rec.sat_in_zone[v] = snap_now[v].in_zone ? 1 : 0;
      if (snap_now[v].in_zone) {
        rec.footprints[v] = snap_now[v].footprint;
        rec.sat_altitude_m[v] = snap_now[v].altitude_m;
        rec.corrected_hz[v] = snap_now[v].corrected;
      }
    }

    // schedules
    for (int q = 0; q < n_sectors; ++q) {
      for (int d = 0; d < 2; ++d) {
        dir_record& dr = rec.sectors[q].dir[d];
        dr.blanked = blanked[q][d];
        dr.prb_ue.assign(n_prb + 1, -1);
        if (!rec.direction_active[d]) {
          dr.scheduled = prb_mask(n_prb);
          continue;
        }
        dr.scheduled = schedule_prbs(
            ctx.utilization, n_prb, blanked[q][d],
            ctx.key({seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(q),
                     static_cast<std::uint64_t>(d), rk_sched}));
        if (dr.scheduled.intersects(dr.blanked)) {
          throw invariant_error("scheduled and blanked masks intersect");
        }
        for (int k : sc.non_blankable) {
          if (dr.blanked.test(k)) {
            throw invariant_error("non-blankable PRB found blanked");
          }
        }
      }
    }

    // UE positions and association
    rec.ues.resize(ues_total);
    std::vector<std::vector<int>> assoc(n_sectors);
    for (int q = 0; q < n_sectors; ++q) {
      for (int j = 0; j < sc.ues_per_sector; ++j) {
        const int gid = q * sc.ues_per_sector + j;
        counter_rng pos_rng = ctx.key({seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(q),
                                       static_cast<std::uint64_t>(j), rk_uepos});
        ue_sample ue;
        ue.pos = sample_in_region(ctx.tess->cells[q], pos_rng);
        ue.home_sector = q;
        if (sc.association == association_mode::voronoi_ideal) {
          ue.serving_sector = q;
        } else {
          int best = -1;
          double best_gain = 0.0;
          for (int cand : ctx.candidates[q]) {
            const double g = ctx.link_gain(t, cand, gid, ue.pos);
            if (best < 0 || g > best_gain) {
              best = cand;
              best_gain = g;
            }
          }
          ue.serving_sector = best;
        }
        rec.ues[gid] = ue;
        assoc[ue.serving_sector].push_back(gid);
      }
    }

    // per-PRB transmitter/receiver assignment
    for (int q = 0; q < n_sectors; ++q) {
      for (int d = 0; d < 2; ++d) {
        if (!rec.direction_active[d]) {
          continue;
        }
        dir_record& dr = rec.sectors[q].dir[d];
        if (assoc[q].empty()) {
          continue; // no served UEs: nothing to transmit or receive
        }
        for (int k : dr.scheduled.to_list()) {
          counter_rng pick = ctx.key({seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(q),
                                      static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(d), rk_pick});
          dr.prb_ue[k] = assoc[q][pick.next_u64() % assoc[q].size()];
        }
      }
    }

    // uplink power split per UE
    rec.ue_ul_power_w.assign(ues_total, 0.0);
    if (rec.direction_active[dir_idx(link_direction::uplink)]) {
      std::vector<int> ul_prbs(ues_total, 0);
      for (int q = 0; q < n_sectors; ++q) {
        const dir_record& dr = rec.sectors[q].dir[dir_idx(link_direction::uplink)];
        for (int k = 1; k <= n_prb; ++k) {
          if (dr.scheduled.test(k) && dr.prb_ue[k] >= 0) {
            ++ul_prbs[dr.prb_ue[k]];
          }
        }
      }
      for (int u = 0; u < ues_total; ++u) {
        if (ul_prbs[u] > 0) {
          rec.ue_ul_power_w[u] = std::min(sc.ue_power_w / ul_prbs[u], sc.ue_power_w);
        }
      }
    }

    // collisions, from the same primitives the metrics oracle uses
    rec.collisions = count_collisions(rec, *ctx.tess, sc).events;

    // power actually landing on satellites (zero iff no collisions)
    for (const collision_event& ev : rec.collisions) {
      std::size_t v = 0;
      while (v < sc.satellites.size() && sc.satellites[v].id != ev.satellite_id) {
        ++v;
      }
      const dir_record& dr = rec.sectors[ev.sector].dir[dir_idx(ev.direction)];
      const plane_point tx_pos = ev.direction == link_direction::downlink
                                     ? ctx.sectors[ev.sector].position
                                     : rec.ues[dr.prb_ue[ev.prb]].pos;
      const double tx_w = ev.direction == link_direction::downlink ? ctx.bs_prb_power_w
                                                                   : rec.ue_ul_power_w[dr.prb_ue[ev.prb]];
      rec.satellite_interference_w += tx_w * ctx.satellite_gain(tx_pos, rec.footprints[v], rec.sat_altitude_m[v]);
    }

    const bool sample_rates =
        opt.record_rates &&
        (opt.rate_slots.empty() ||
         (t < static_cast<long>(opt.rate_slots.size()) && opt.rate_slots[t] != 0));
    if (sample_rates) {
      std::array<std::set<int>, 2> outage; // sectors wiped by a collision
      for (const collision_event& ev : rec.collisions) {
        outage[dir_idx(ev.direction)].insert(ev.sector);
      }
      for (int q = 0; q < n_sectors; ++q) {
        for (int d = 0; d < 2; ++d) {
          if (!rec.direction_active[d] || outage[d].count(q)) {
            continue;
          }
          const link_direction dir = static_cast<link_direction>(d);
          dir_record& dr = rec.sectors[q].dir[d];

          for (int k : dr.scheduled.to_list()) {
            if (dr.prb_ue[k] < 0) {
              continue;
            }
            const int ue = dr.prb_ue[k];
            const plane_point victim_pos =
                dir == link_direction::downlink ? rec.ues[ue].pos : ctx.sectors[q].position;
            const double serve_gain = ctx.link_gain(t, q, ue, rec.ues[ue].pos);
            const double serve_pow =
                dir == link_direction::downlink ? ctx.bs_prb_power_w : rec.ue_ul_power_w[ue];

            struct source {
              std::uint64_t key;
              std::uint64_t tag;
              double gain_times_power;
              double acc = 0.0;
            };
            std::vector<source> sources;
            for (int qi : ctx.interferers[q]) {
              const dir_record& other = rec.sectors[qi].dir[d];
              if (!transmitted(other, k)) {
                continue;
              }
              double g, p;
              if (dir == link_direction::downlink) {
                g = ctx.link_gain(t, qi, ue, rec.ues[ue].pos);
                p = ctx.bs_prb_power_w;
              } else {
                const int w = other.prb_ue[k];
                g = ctx.link_gain(t, q, w, rec.ues[w].pos);
                p = rec.ue_ul_power_w[w];
              }
              sources.push_back({static_cast<std::uint64_t>(qi), rk_ch_interferer, g * p});
            }
            for (std::size_t v = 0; v < sc.satellites.size(); ++v) {
              if (!rec.sat_in_zone[v]) {
                continue;
              }
              bool occupies = false;
              for (std::size_t c = 0; c < rec.corrected_hz[v].size() && !occupies; ++c) {
                occupies = carrier_occupies_prb(rec.corrected_hz[v][c][q],
                                                sc.satellites[v].carriers[c].occupied_bandwidth_hz, {k, dir},
                                                sc.band);
              }
              if (occupies) {
                sources.push_back({1000000 + v, rk_ch_satellite,
                                   ctx.satellite_gain(victim_pos, rec.footprints[v], rec.sat_altitude_m[v]) *
                                       sc.sat_power_w});
              }
            }

            double num_acc = 0.0;
            const int draws = sc.channel_draws;
            for (int dr_i = 0; dr_i < draws; ++dr_i) {
              counter_rng hr = ctx.key({seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(q),
                                        static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(d),
                                        static_cast<std::uint64_t>(dr_i), rk_ch_serving});
              const cvector h = draw_channel_vector(hr, sc.antennas);
              std::size_t best = 0;
              double best_p = beamformed_power(h, ctx.codebook.beams[0]);
              for (std::size_t j = 1; j < ctx.codebook.beams.size(); ++j) {
                const double p = beamformed_power(h, ctx.codebook.beams[j]);
                if (p > best_p) {
                  best_p = p;
                  best = j;
                }
              }
              num_acc += best_p;
              for (source& src : sources) {
                counter_rng ir = ctx.key({seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(q),
                                          static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(d),
                                          src.key, static_cast<std::uint64_t>(dr_i), src.tag});
                const cvector hi = draw_channel_vector(ir, sc.antennas);
                const cvector* beam = &ctx.codebook.beams[best];
                if (sc.interferer_beams == interferer_beam_mode::own_beam && src.tag == rk_ch_interferer) {
                  counter_rng br = ctx.key({seed, static_cast<std::uint64_t>(t), src.key,
                                            static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(d),
                                            static_cast<std::uint64_t>(dr_i), rk_own_beam});
                  const cvector hown = draw_channel_vector(br, sc.antennas);
                  std::size_t ob = 0;
                  double ob_p = beamformed_power(hown, ctx.codebook.beams[0]);
                  for (std::size_t j = 1; j < ctx.codebook.beams.size(); ++j) {
                    const double p = beamformed_power(hown, ctx.codebook.beams[j]);
                    if (p > ob_p) {
                      ob_p = p;
                      ob = j;
                    }
                  }
                  beam = &ctx.codebook.beams[ob];
                }
                src.acc += beamformed_power(hi, *beam);
              }
            }
            double denom = sc.noise_power_w;
            for (const source& src : sources) {
              denom += src.gain_times_power * (src.acc / draws);
            }
            const double snr = serve_gain * serve_pow * (num_acc / draws) / denom;
            dr.rates.push_back({k, snr, spectral_efficiency(snr)});
          }
        }
      }
    }

    result.slots.push_back(std::move(rec));
    snap_now = std::move(snap_next);
    result.slot_seconds += std::chrono::duration<double>(clock::now() - slot_start).count();
  }
  return result;
}

} // namespace coexsim
