#pragma once
// Regeneration structure: extraction of regeneration times, i.i.d. cycle
// statistics, the ratio speed estimator, and the branching correspondence
// sample sets.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "erw/walk.hpp"

namespace erw {

struct RegenCycle {
  int64_t index;         // i >= 1 (cycle between tau_i and tau_{i+1})
  int64_t duration;      // tau_{i+1} - tau_i
  int64_t displacement;  // (X_{tau_{i+1}} - X_{tau_i}) projected on ell
};

struct TooFewCycles : std::runtime_error {
  TooFewCycles() : std::runtime_error("fewer than 100 post-tau_1 regeneration cycles") {}
};
struct ParityViolated : std::runtime_error {
  ParityViolated() : std::runtime_error("cycle duration and displacement have different parity") {}
};

// regeneration times of a recorded d=1 path (ell = +1 or -1): times t >= 1
// with X_m*ell < X_t*ell for all m < t and X_m*ell >= X_t*ell for all
// recorded m >= t, discarding the final burn-off window of W steps
std::vector<int64_t> find_regenerations(const std::vector<int64_t>& path, int ell, int64_t burnoff);

// same, read off a kernel trajectory's per-level counters (jumps + hit times
// recorded, ell = +1): level k regenerates iff it was reached and no step
// k -> k-1 ever happened; tau = first hit time of k
std::vector<int64_t> find_regenerations(const Trajectory& traj, int64_t burnoff);

struct CycleSplit {
  int64_t tau1 = -1;              // end of the (excluded) first cycle
  int64_t first_duration = 0;     // tau_1 - 0
  int64_t first_displacement = 0;
  std::vector<RegenCycle> cycles;  // i.i.d. cycles i >= 1
};

// turn regeneration times + their levels into cycles; positions(t) supplied
// by the caller (path lookup or the level of the hit)
CycleSplit split_cycles(const std::vector<int64_t>& times, const std::vector<int64_t>& levels);

// cycles from a full path (d=1)
CycleSplit cycles_from_path(const std::vector<int64_t>& path, int ell, int64_t burnoff);

// cycles from a kernel trajectory (jumps + hit_times recorded)
CycleSplit cycles_from_trajectory(const Trajectory& traj, int64_t burnoff);

struct SpeedEstimate {
  double v_hat = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // bootstrap percentile interval
  double se = 0.0;                  // bootstrap standard error
  int64_t n_cycles = 0;
  // set when the estimate is statistically indistinguishable from zero speed:
  // either the interval v_hat +- 2 se reaches 0, or the duration sample looks
  // infinite-mean (tail index at most 1), which happens exactly when delta <= 2
  bool degenerate = false;
};

// v = mean displacement / mean duration with a nonparametric bootstrap over
// cycles; throws TooFewCycles below 100 cycles
SpeedEstimate speed_estimate(const std::vector<RegenCycle>& cycles, int64_t resamples = 10'000,
                             double level = 0.95, uint64_t seed = 1);

struct CorrespondenceSamples {
  std::vector<double> displacement;  // X_{tau_{i+1}} - X_{tau_i}  (law of sigma^V)
  std::vector<double> half_diff;     // (duration - displacement)/2 (law of A^V)
};

// throws ParityViolated if any (duration - displacement) is odd or negative
CorrespondenceSamples correspondence_samples(const std::vector<RegenCycle>& cycles);

}  // namespace erw
