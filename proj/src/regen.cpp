#include "erw/regen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "erw/stats.hpp"

namespace erw {

std::vector<int64_t> find_regenerations(const std::vector<int64_t>& path, int ell,
                                        int64_t burnoff) {
  std::vector<int64_t> out;
  int64_t n = (int64_t)path.size() - 1;
  if (n < 1) return out;
  // suffix minima of the projected path: suff[t] = min_{m >= t} ell*X_m
  std::vector<int64_t> suff((size_t)n + 2);
  suff[(size_t)n + 1] = std::numeric_limits<int64_t>::max();
  for (int64_t t = n; t >= 0; --t)
    suff[(size_t)t] = std::min<int64_t>((int64_t)ell * path[(size_t)t], suff[(size_t)t + 1]);
  int64_t past_max = (int64_t)ell * path[0];
  int64_t cutoff = n - burnoff;
  for (int64_t t = 1; t <= cutoff; ++t) {
    int64_t y = (int64_t)ell * path[(size_t)t];
    if (y > past_max && suff[(size_t)t + 1] >= y) out.push_back(t);
    if (y > past_max) past_max = y;
  }
  return out;
}

namespace {

// counter shortcut (ell = +1): level k regenerates iff it was hit and no step
// ever departed k downwards; equivalent to the path scan for nearest-neighbour
// walks because dipping below k after tau requires a k -> k-1 step
void regens_from_counters(const Trajectory& traj, int64_t burnoff, std::vector<int64_t>& times,
                          std::vector<int64_t>& levels) {
  if (traj.hit_time.empty() || traj.jumps_down.empty())
    throw std::invalid_argument("regeneration extraction needs jumps and hit_times records");
  int64_t start = traj.level_lo;
  for (int64_t k = traj.level_lo; k <= traj.level_hi; ++k)
    if (traj.hit_time_at(k) == 0) {
      start = k;
      break;
    }
  int64_t cutoff = traj.steps - burnoff;
  for (int64_t k = start + 1; k <= traj.level_hi; ++k) {
    int64_t h = traj.hit_time_at(k);
    if (h < 0 || h > cutoff) continue;
    if (traj.jump_down_at(k) == 0) {
      times.push_back(h);
      levels.push_back(k - start);
    }
  }
}

}  // namespace

std::vector<int64_t> find_regenerations(const Trajectory& traj, int64_t burnoff) {
  std::vector<int64_t> times, levels;
  regens_from_counters(traj, burnoff, times, levels);
  return times;
}

CycleSplit split_cycles(const std::vector<int64_t>& times, const std::vector<int64_t>& levels) {
  CycleSplit cs;
  if (times.empty()) return cs;
  cs.tau1 = times[0];
  cs.first_duration = times[0];
  cs.first_displacement = levels[0];
  for (size_t i = 0; i + 1 < times.size(); ++i)
    cs.cycles.push_back(
        {(int64_t)i + 1, times[i + 1] - times[i], levels[i + 1] - levels[i]});
  return cs;
}

CycleSplit cycles_from_path(const std::vector<int64_t>& path, int ell, int64_t burnoff) {
  std::vector<int64_t> times = find_regenerations(path, ell, burnoff);
  std::vector<int64_t> levels(times.size());
  for (size_t i = 0; i < times.size(); ++i)
    levels[i] = (int64_t)ell * (path[(size_t)times[i]] - path[0]);
  return split_cycles(times, levels);
}

CycleSplit cycles_from_trajectory(const Trajectory& traj, int64_t burnoff) {
  std::vector<int64_t> times, levels;
  regens_from_counters(traj, burnoff, times, levels);
  return split_cycles(times, levels);
}

SpeedEstimate speed_estimate(const std::vector<RegenCycle>& cycles, int64_t resamples,
                             double level, uint64_t seed) {
  int64_t n = (int64_t)cycles.size();
  if (n < 100) throw TooFewCycles();

  double sum_disp = 0, sum_dur = 0;
  std::vector<double> durations;
  durations.reserve((size_t)n);
  for (const RegenCycle& c : cycles) {
    sum_disp += (double)c.displacement;
    sum_dur += (double)c.duration;
    durations.push_back((double)c.duration);
  }

  SpeedEstimate est;
  est.n_cycles = n;
  est.v_hat = sum_disp / sum_dur;

  Rng rng(seed_combine(seed, (uint64_t)kStreamStats));
  std::vector<double> boot;
  boot.reserve((size_t)resamples);
  for (int64_t b = 0; b < resamples; ++b) {
    double bd = 0, bt = 0;
    for (int64_t i = 0; i < n; ++i) {
      const RegenCycle& c = cycles[(size_t)rng.below((uint64_t)n)];
      bd += (double)c.displacement;
      bt += (double)c.duration;
    }
    boot.push_back(bd / bt);
  }
  est.se = std::sqrt(variance(boot));
  double a = (1.0 - level) / 2.0;
  est.ci_lo = quantile(boot, a);
  est.ci_hi = quantile(boot, 1.0 - a);

  // infinite-mean durations make the ratio estimator meaningless even though
  // a percentile interval of positive ratios can never reach zero
  bool heavy_durations = false;
  try {
    heavy_durations = tail_index(durations).estimate <= 1.05;
  } catch (const DegenerateTail&) {
    heavy_durations = false;
  }
  est.degenerate = heavy_durations || est.v_hat - 2.0 * est.se <= 0.0;
  return est;
}

CorrespondenceSamples correspondence_samples(const std::vector<RegenCycle>& cycles) {
  CorrespondenceSamples out;
  out.displacement.reserve(cycles.size());
  out.half_diff.reserve(cycles.size());
  for (const RegenCycle& c : cycles) {
    int64_t diff = c.duration - c.displacement;
    if (diff < 0 || diff % 2 != 0) throw ParityViolated();
    out.displacement.push_back((double)c.displacement);
    out.half_diff.push_back((double)diff / 2.0);
  }
  return out;
}

}  // namespace erw
