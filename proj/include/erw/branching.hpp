#pragma once
// The dual branching process with migration V (one immigrant per generation),
// its life-cycle statistics sigma^V / A^V, and trial-sequence plumbing.

#include <cstdint>
#include <vector>

#include "erw/env.hpp"

namespace erw {

// Bernoulli trials at a fixed level: trial i succeeds with probability
// omega(level, +1, i). Success probabilities come from the same site-law
// functions the walk uses; beyond the stack prefix they are 1/2.
class TrialSequence {
 public:
  TrialSequence(const StackModel& model, int64_t level, uint64_t env_seed, Rng& rng)
      : model_(&model), level_(level), i_(0), rng_(&rng) {
    aux_ = model_needs_aux(model) ? realize_aux(model, level, env_seed) : 0;
  }

  // iid-stack variant: draws a fresh stack (aux) from the given stream rather
  // than from a lattice site; used by the branching chain, whose generations
  // see independent copies of the stack law
  static TrialSequence fresh(const StackModel& model, Rng& rng) {
    TrialSequence t;
    t.model_ = &model;
    t.level_ = 1;
    t.aux_ = model_needs_aux(model) ? realize_aux_rng(model, rng) : 0;
    t.i_ = 0;
    t.rng_ = &rng;
    return t;
  }

  bool next() {
    ++i_;
    double p = site_right_prob(*model_, aux_, level_, i_);
    return rng_->unit() < p;
  }

  int64_t trials_consumed() const { return i_; }
  uint64_t aux() const { return aux_; }

 private:
  TrialSequence() = default;

  const StackModel* model_ = nullptr;
  int64_t level_ = 1;
  uint64_t aux_ = 0;
  int64_t i_ = 0;
  Rng* rng_ = nullptr;
};

// failures before the m-th success; Trials is anything with bool next()
template <class Trials>
int64_t failures_before_success(Trials& trials, int64_t m) {
  int64_t failures = 0, successes = 0;
  while (successes < m) {
    if (trials.next())
      ++successes;
    else
      ++failures;
  }
  return failures;
}

struct BranchingCaps {
  int64_t max_generations = 10'000'000;
  int64_t max_progeny = 1'000'000'000;
};

struct LifeCycle {
  int64_t sigma = 0;    // first j >= 1 with V_j = 0
  int64_t progeny = 0;  // A^V = sum of V_j over j < sigma
  bool truncated = false;

  uint64_t seed = 0;  // cycle seed (for records)
};

// V_0 = 0, V_{k+1} = failures before the (V_k + 1)-th success in a fresh trial
// sequence for level k; stops at the first return to 0 or at a cap
LifeCycle run_cycle(const StackModel& model, uint64_t cycle_seed, const BranchingCaps& caps = {});

// the unconstrained chain (V_0, ..., V_len) -- keeps going through zeros
std::vector<int64_t> v_path(const StackModel& model, uint64_t cycle_seed, int64_t len);

// one sample of sum_{m<=M} zeta_m - M + 1 (the mean-offspring statistic whose
// expectation is 1 - delta); M is the realized stack's effective cookie count.
// Throws NonSummableDrift for models with infinite effective stacks.
double offspring_mean_stat(const StackModel& model, uint64_t cycle_seed);

}  // namespace erw
