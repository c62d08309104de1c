#include "coexsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace coexsim {

namespace {

int dir_idx(link_direction d) { return static_cast<int>(d); }

} // namespace

collision_tally count_collisions(const slot_record& rec, const tessellation& tess, const scenario& sc) {
  collision_tally tally;
  tally.slot = rec.slot;
  std::set<std::tuple<int, int, int, int>> seen; // (sector, sat id, prb, dir)

  for (std::size_t v = 0; v < sc.satellites.size(); ++v) {
    if (!rec.sat_in_zone[v]) {
      continue;
    }
    const satellite_footprint& fp = rec.footprints[v];
    const int sat_id = sc.satellites[v].id;
    for (std::size_t q = 0; q < rec.sectors.size(); ++q) {
      const bool overlap = region_circle_overlap(tess.cells[q], fp.center, fp.radius_m);
      for (int d = 0; d < 2; ++d) {
        if (!rec.direction_active[d]) {
          continue;
        }
        const link_direction dir = static_cast<link_direction>(d);
        const dir_record& dr = rec.sectors[q].dir[d];
        for (std::size_t c = 0; c < rec.corrected_hz[v].size(); ++c) {
          for (int k : occupied_prbs(rec.corrected_hz[v][c][q],
                                     sc.satellites[v].carriers[c].occupied_bandwidth_hz, sc.band, dir)) {
            if (!dr.scheduled.test(k) || dr.blanked.test(k) || dr.prb_ue[k] < 0) {
              continue; // nothing transmitted on this PRB
            }
            if (dir == link_direction::downlink) {
              if (!overlap) {
                continue;
              }
            } else {
              const plane_point& ue_pos = rec.ues[dr.prb_ue[k]].pos;
              if (distance(ue_pos, fp.center) > fp.radius_m) {
                continue; // transmitting UE outside the footprint
              }
            }
            if (seen.insert({static_cast<int>(q), sat_id, k, d}).second) {
              tally.events.push_back({static_cast<int>(q), sat_id, k, dir});
            }
          }
        }
      }
    }
  }
  return tally;
}

std::vector<window_segment> collision_windows(const run_result& epa_run, long wc_slots) {
  if (epa_run.slots.empty()) {
    return {};
  }
  const long n_slots = static_cast<long>(epa_run.slots.size());
  std::vector<std::pair<long, long>> spans;
  for (const slot_record& rec : epa_run.slots) {
    if (!rec.collisions.empty()) {
      spans.emplace_back(std::max<long>(0, rec.slot - wc_slots), std::min(n_slots - 1, rec.slot + wc_slots));
    }
  }
  if (spans.empty()) {
    return {};
  }
  std::vector<window_segment> out;
  window_segment cur;
  cur.first = spans[0].first;
  cur.last = spans[0].second;
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].first <= cur.last + 1) {
      cur.last = std::max(cur.last, spans[i].second);
    } else {
      out.push_back(cur);
      cur = window_segment{};
      cur.first = spans[i].first;
      cur.last = spans[i].second;
    }
  }
  out.push_back(cur);

  for (window_segment& seg : out) {
    std::array<std::set<int>, 2> sect;
    std::set<int> sats;
    for (long t = seg.first; t <= seg.last; ++t) {
      for (const collision_event& ev : epa_run.slots[t].collisions) {
        sect[dir_idx(ev.direction)].insert(ev.sector);
        sats.insert(ev.satellite_id);
      }
    }
    for (int d = 0; d < 2; ++d) {
      seg.sectors[d].assign(sect[d].begin(), sect[d].end());
    }
    seg.satellite_ids.assign(sats.begin(), sats.end());
  }
  return out;
}

std::vector<sum_rate_sample> sum_rate(const run_result& run, const std::vector<window_segment>& windows,
                                      const scenario& sc) {
  (void)sc;
  std::vector<sum_rate_sample> out;
  for (const window_segment& seg : windows) {
    for (long t = seg.first; t <= seg.last && t < static_cast<long>(run.slots.size()); ++t) {
      const slot_record& rec = run.slots[t];
      std::array<std::set<int>, 2> outage;
      for (const collision_event& ev : rec.collisions) {
        outage[dir_idx(ev.direction)].insert(ev.sector);
      }
      for (int d = 0; d < 2; ++d) {
        if (!rec.direction_active[d] || seg.sectors[d].empty()) {
          continue;
        }
        double total = 0.0;
        for (int q : seg.sectors[d]) {
          if (outage[d].count(q)) {
            continue; // the collision wipes this sector's transmissions
          }
          for (const prb_rate_sample& s : rec.sectors[q].dir[d].rates) {
            total += s.rate_bits;
          }
        }
        out.push_back({t, static_cast<link_direction>(d), total});
      }
    }
  }
  return out;
}

empirical_cdf::empirical_cdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) {
    throw std::invalid_argument("empirical_cdf: no samples");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double empirical_cdf::value(double w) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), w);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double empirical_cdf::quantile(double p) const {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("empirical_cdf::quantile: p outside [0, 1]");
  }
  const std::size_t n = sorted_.size();
  if (p <= 0.0) {
    return sorted_.front();
  }
  const std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  return sorted_[std::min(std::max<std::size_t>(rank, 1), n) - 1];
}

std::map<std::pair<std::string, double>, summary_cell> collision_summary(const std::vector<run_total>& runs) {
  std::map<std::pair<std::string, double>, std::vector<double>> cells;
  std::map<std::string, std::set<std::pair<std::uint64_t, double>>> grids;
  for (const auto& [policy, seed, util, total] : runs) {
    cells[{policy, util}].push_back(static_cast<double>(total));
    grids[policy].insert({seed, util});
  }
  if (grids.size() > 1) {
    const auto& first = grids.begin()->second;
    for (const auto& [policy, grid] : grids) {
      if (grid != first) {
        throw std::invalid_argument("collision_summary: run grids differ between policies");
      }
    }
  }
  std::map<std::pair<std::string, double>, summary_cell> out;
  for (const auto& [key, values] : cells) {
    summary_cell cell;
    cell.n_seeds = static_cast<int>(values.size());
    double mean = 0.0;
    for (double v : values) {
      mean += v;
    }
    mean /= values.size();
    double var = 0.0;
    for (double v : values) {
      var += (v - mean) * (v - mean);
    }
    cell.mean = mean;
    cell.std_error = values.size() > 1
                         ? std::sqrt(var / (values.size() - 1)) / std::sqrt(static_cast<double>(values.size()))
                         : 0.0;
    out[key] = cell;
  }
  return out;
}

} // namespace coexsim
