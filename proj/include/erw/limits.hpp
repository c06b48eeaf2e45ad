#pragma once
// Limit-law verification: perturbed Brownian motion (recurrent regime),
// critical running-maximum law, transient stable marginals, d>=2 CLT.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "erw/env.hpp"
#include "erw/regen.hpp"
#include "erw/stats.hpp"

namespace erw {

struct RegimeMismatch : std::runtime_error {
  explicit RegimeMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct ResidualExceeded : std::runtime_error {
  ResidualExceeded() : std::runtime_error("perturbed-BM residual check failed") {}
};
struct SpeedUnavailable : std::runtime_error {
  SpeedUnavailable() : std::runtime_error("no converged speed estimate for centering") {}
};

// ---- perturbed Brownian motion ----------------------------------------------

struct PerturbedBMParams {
  double alpha = 0.0, beta = 0.0;  // both < 1
  double horizon = 1.0;
  double dt = 1e-4;
};

struct PerturbedBMPath {
  double x_half = 0.0;   // X(T/2)
  double x_end = 0.0;    // X(T)
  double max_x = 0.0, min_x = 0.0;
  double residual = 0.0;  // max over checkpoints of |X - B - alpha sup - beta inf|
};

// Euler scheme with running extrema: a tentative increment that overshoots the
// running max is amplified by 1/(1-alpha) (at the max dX = dB + alpha dX);
// undershoot below the min by 1/(1-beta). Residual is checked at ten
// checkpoints; ResidualExceeded on failure.
PerturbedBMPath simulate_perturbed_bm(const PerturbedBMParams& params, Rng& rng);

// ---- comparison reports ------------------------------------------------------

struct KsComparison {
  std::string label;
  KsResult ks;
  double fitted_scale = 1.0;
  int64_t n_lhs = 0, n_rhs = 0;
  std::array<double, 3> quartiles_lhs{}, quartiles_rhs{};
};

struct RecurrentReport {
  double delta = 0.0;
  KsComparison at_t1;    // X_n/sqrt(n) vs X_{delta,-delta}(1)
  KsComparison at_half;  // X_{n/2}/sqrt(n/2) vs X_{delta,-delta}(1/2)/sqrt(1/2)... both scaled to t=1
  double erw_mean = 0.0;  // sign check: positive cookies push the mean up
  uint64_t seed = 0;
};

// model must have delta in [0,1) (throws RegimeMismatch otherwise)
RecurrentReport recurrent_limit_check(const StackModel& model, int64_t n, int64_t replicas,
                                      double dt, int64_t sde_paths, uint64_t seed);

struct CriticalReport {
  double delta = 1.0;
  std::vector<int64_t> horizons;
  std::vector<KsComparison> per_horizon;  // scaled X_n/(sqrt(n) log n) vs |N(0,1)|
  bool monotone = false;                  // KS statistic decreased with n
  double p5_scaled = 0.0;                 // 5th percentile after scale fit (>= -0.1)
  KsComparison bm_max_reference;          // simulated BM maxima vs |N(0,1)|
  uint64_t seed = 0;
};

CriticalReport critical_limit_check(const StackModel& model, const std::vector<int64_t>& horizons,
                                    int64_t replicas, uint64_t seed);

enum class Regime { i, ii, iii, iv, v };
Regime regime_of(double delta);  // throws RegimeMismatch for delta <= 1

struct TransientReport {
  double delta = 0.0;
  Regime regime = Regime::i;
  double v_hat = 0.0, v_se = 0.0;
  KsComparison primary;         // the regime's headline comparison
  KsComparison sup_variant;     // same with sup X replaced for X (iii-v)
  TailIndex t_tail;             // regime (i): tail index of T_n/n^{2/delta}
  double ratio_first = 0.0, ratio_second = 0.0;  // regime (ii) stabilization
  bool ratio_ok = false;
  uint64_t seed = 0;
};

struct TransientOptions {
  int64_t replicas = 10'000;
  int64_t speed_replicas = 200;   // separate batch harvested for v_hat
  int64_t reference_samples = 100'000;
  double tail_fraction = 0.05;
  double ratio_tolerance = 0.10;  // regime (ii)
};

// regime must match the model's delta (RegimeMismatch otherwise); regimes
// iii-v center with the regeneration speed (SpeedUnavailable if degenerate)
TransientReport transient_marginal_check(const StackModel& model, Regime regime, int64_t n,
                                         const TransientOptions& opts, uint64_t seed);

struct MultidimReport {
  int d = 2;
  int64_t n = 0, replicas = 0;
  double directional_fraction = 0.0;  // X_n*e1 > X_{n/2}*e1 > 0
  double frac_ci_lo = 0.0, frac_ci_hi = 0.0;
  double v1_hat = 0.0, v1_lo = 0.0, v1_hi = 0.0;  // bootstrap CI for v*e1
  std::vector<double> transverse_mean;    // per axis >= 2, scaled by 1/sqrt(n)
  std::vector<double> transverse_se;
  std::vector<KsComparison> coordinate_normality;  // split-sample variance fit
  std::vector<double> covariance;         // d x d row-major G estimate
  uint64_t seed = 0;
};

MultidimReport multidim_checks(const StackModel& model, int64_t n, int64_t replicas, uint64_t seed);

}  // namespace erw
