#pragma once
// Excited-walk simulation: trajectories, hitting times, jump counts, local
// times, range, and the consumed-drift martingale ledger.

#include <cstdint>
#include <optional>
#include <vector>

#include "erw/env.hpp"

namespace erw {

enum class StopKind {
  steps,         // run exactly n steps
  hit_level,     // stop on first visit of level k along the chosen axis
  hit_either,    // stop on first visit of level lo or level hi (d=1)
  first_return,  // stop on first return to the origin (bounded by max_steps)
};

struct StopRule {
  StopKind kind = StopKind::steps;
  int64_t n = 0;          // steps
  int64_t level = 0;      // hit_level target (projection on axis); hit_either hi
  int axis = 1;           // hit_level axis (1-based)
  int64_t max_steps = 0;  // first_return horizon; 0 = use step_cap
  int64_t level_lo = 0;   // hit_either lower target
};
inline StopRule stop_steps(int64_t n) { return {StopKind::steps, n, 0, 1, 0, 0}; }
inline StopRule stop_hit_level(int64_t k, int axis = 1) { return {StopKind::hit_level, 0, k, axis, 0, 0}; }
inline StopRule stop_hit_either(int64_t lo, int64_t hi) { return {StopKind::hit_either, 0, hi, 1, 0, lo}; }
inline StopRule stop_first_return(int64_t max_steps) { return {StopKind::first_return, 0, 0, 1, max_steps, 0}; }

struct RecordFlags {
  bool full_path = false;      // keep every position (memory!)
  bool jumps = false;          // per-level (J_up, J_down), d=1
  bool hit_times = false;      // per-level first hit times, d=1
  bool local_times = false;    // final per-site visit counts, d=1
  bool drift_series = false;   // running D_n series (implies drift_final)
  bool drift_final = false;    // just D at the end
  int64_t checkpoint_stride = 0;  // record (t, position) every stride steps
};

struct WalkConfig {
  StopRule stop;
  RecordFlags record;
  int64_t step_cap = 100'000'000;  // hard per-replica cap
  int64_t start_x = 0;             // d=1 starting site
};

enum class WalkOutcome {
  completed,      // stop rule satisfied (steps done / level hit)
  returned,       // first_return: origin revisited
  not_returned,   // first_return: horizon elapsed without a return
  cap_exceeded,   // hit_level: step cap hit first (partial trajectory)
};

struct Checkpoint {
  int64_t time;
  int64_t x;                       // projection on axis 1
  std::array<int32_t, kMaxDim> pos{};  // full position (d >= 2)
  int64_t distinct_sites;
};

// Per-level counters are stored over the contiguous visited range
// [level_lo, level_hi]; index (k - level_lo).
struct Trajectory {
  int d = 1;
  uint64_t seed = 0;        // walk-stream seed (records carry it)
  int64_t steps = 0;        // elapsed time n
  int64_t x = 0;            // final projection on axis 1
  std::array<int32_t, kMaxDim> pos{};  // final position, d >= 2
  int64_t max_x = 0, min_x = 0;        // running extrema of the projection
  int64_t distinct_sites = 1;          // range size (origin counted)
  int64_t last_range_growth = 0;       // last time a fresh site was entered
  int64_t xi_star = 1;                 // max local time over times 0..steps
  WalkOutcome outcome = WalkOutcome::completed;
  int64_t return_time = -1;            // first_return rule

  std::vector<int64_t> path;           // d=1 full path incl. X_0 (flag)
  std::vector<int32_t> path_nd;        // d>=2 full path, d-strided (flag)
  std::vector<Checkpoint> checkpoints;

  int64_t level_lo = 0, level_hi = 0;  // valid when per-level records kept
  std::vector<int64_t> jumps_up, jumps_down;  // (flag) d=1
  std::vector<int64_t> hit_time;              // (flag) d=1, -1 = never hit
  std::vector<int64_t> local_times;           // (flag) d=1 visit counts

  std::vector<double> drift_series;  // (flag) D_0..D_n
  double drift_final = 0.0;

  int64_t jump_up_at(int64_t level) const;
  int64_t jump_down_at(int64_t level) const;
  int64_t hit_time_at(int64_t level) const;  // -1 if outside range / never
};

// one step in the general environment: consumes one cookie, moves the walk
Site step(Site position, Environment& env, Rng& rng);

// run a fresh walk of the given model. For d=1 this dispatches to the fast
// kernel; for d>=2 to the map-backed generic loop. Identical (model, seed,
// config) give bit-identical trajectories.
Trajectory run(const StackModel& model, uint64_t env_seed, const WalkConfig& cfg, uint64_t walk_seed);

// run the generic loop inside a live environment (supports pre-consumed
// cookies, arbitrary start sites; used by leftover-environment experiments)
Trajectory run_in_env(Environment& env, const WalkConfig& cfg, Rng& rng);

// ---- trajectory-derived checks -------------------------------------------

struct JumpIdentityReport {
  bool ok = true;
  int64_t t_n = -1;            // first hit time of level n
  int64_t violations = 0;      // count of failed level identities
  bool time_identity_ok = true;  // T_n == n + 2*sum J_down
};

// verifies the up/down jump identities by recounting jumps from the full path
// up to the first hit of level n (exact integer arithmetic)
JumpIdentityReport jump_identities(const std::vector<int64_t>& path, int64_t n);

// same check against the kernel's per-level counters; the trajectory must have
// been stopped by hit_level(n) with the jumps and hit_times flags on
JumpIdentityReport jump_identities(const Trajectory& traj, int64_t n);

// J_down counts per level read at T_n, ordered (level n, n-1, ..., 0);
// requires the full path; throws std::runtime_error if level n is not hit
std::vector<int64_t> backward_jump_counts(const std::vector<int64_t>& path, int64_t n);

// counter-based variant for kernel runs stopped by hit_level(n) with jumps on
std::vector<int64_t> backward_jump_counts(const Trajectory& traj, int64_t n);

// consumed-drift martingale M_t = X_t - D_t replayed from a full path
std::vector<double> drift_martingale(const std::vector<int64_t>& path, const StackModel& model,
                                     uint64_t env_seed);

// max local time over times 0..n of a recorded path
int64_t max_local_time(const std::vector<int64_t>& path, int64_t n);

}  // namespace erw
