#include "erw/branching.hpp"

namespace erw {

namespace {

int64_t trimmed_size(const std::vector<double>& right) {
  size_t n = right.size();
  while (n > 0 && right[n - 1] == 0.5) --n;
  return (int64_t)n;
}

// effective cookie count of one realized stack (the generic chain level +1)
struct EffectiveCookies {
  uint64_t aux;
  int64_t operator()(const BWModel& m) const { return m.p == 0.5 ? 0 : 1; }
  int64_t operator()(const HomogeneousModel& m) const { return trimmed_size(m.right); }
  int64_t operator()(const BoundedIIDModel& m) const {
    return trimmed_size(m.atoms[(size_t)aux].right);
  }
  int64_t operator()(const TrappingModel&) const { throw NonSummableDrift(); }
  int64_t operator()(const HaveYourCookieModel&) const {
    return (int64_t)(aux & ((1ull << 48) - 1));
  }
  int64_t operator()(const PerturbedExtremaModel&) const { return (int64_t)aux; }
};

}  // namespace

LifeCycle run_cycle(const StackModel& model, uint64_t cycle_seed, const BranchingCaps& caps) {
  LifeCycle lc;
  lc.seed = cycle_seed;
  Rng rng(cycle_seed);
  int64_t v = 0;
  for (int64_t j = 1;; ++j) {
    TrialSequence t = TrialSequence::fresh(model, rng);
    v = failures_before_success(t, v + 1);
    if (v == 0) {
      lc.sigma = j;
      break;
    }
    lc.progeny += v;
    if (j >= caps.max_generations || lc.progeny >= caps.max_progeny) {
      lc.sigma = j;
      lc.truncated = true;
      break;
    }
  }
  return lc;
}

std::vector<int64_t> v_path(const StackModel& model, uint64_t cycle_seed, int64_t len) {
  Rng rng(cycle_seed);
  std::vector<int64_t> v;
  v.reserve((size_t)len + 1);
  v.push_back(0);
  for (int64_t k = 0; k < len; ++k) {
    TrialSequence t = TrialSequence::fresh(model, rng);
    v.push_back(failures_before_success(t, v.back() + 1));
  }
  return v;
}

double offspring_mean_stat(const StackModel& model, uint64_t cycle_seed) {
  Rng rng(cycle_seed);
  TrialSequence t = TrialSequence::fresh(model, rng);
  int64_t m = std::visit(EffectiveCookies{t.aux()}, model);
  double failures = (double)failures_before_success(t, m);
  return failures - (double)m + 1.0;
}

}  // namespace erw
