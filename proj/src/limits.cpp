#include "erw/limits.hpp"

#include <algorithm>
#include <cmath>

#include "erw/branching.hpp"
#include "erw/walk.hpp"

namespace erw {

PerturbedBMPath simulate_perturbed_bm(const PerturbedBMParams& params, Rng& rng) {
  const double alpha = params.alpha, beta = params.beta;
  const int64_t steps = (int64_t)std::llround(params.horizon / params.dt);
  const double sdt = std::sqrt(params.dt);
  const int64_t cp_stride = std::max<int64_t>(1, steps / 10);

  PerturbedBMPath out;
  double x = 0, b = 0, sup = 0, inf = 0;
  for (int64_t t = 1; t <= steps; ++t) {
    double db = sdt * rng.gauss();
    b += db;
    double xn = x + db;
    if (xn > sup) {
      // at the running max dX = dB + alpha dX, so the overshoot is amplified
      xn = sup + (xn - sup) / (1.0 - alpha);
      sup = xn;
    } else if (xn < inf) {
      xn = inf + (xn - inf) / (1.0 - beta);
      inf = xn;
    }
    x = xn;
    if (t == steps / 2) out.x_half = x;
    if (t % cp_stride == 0 || t == steps) {
      double res = std::abs(x - b - alpha * sup - beta * inf);
      out.residual = std::max(out.residual, res);
    }
  }
  out.x_end = x;
  out.max_x = sup;
  out.min_x = inf;
  if (out.residual > 10.0 * sdt + 1e-9) throw ResidualExceeded();
  return out;
}

namespace {

std::array<double, 3> quartiles_of(const std::vector<double>& v) {
  return {quantile(v, 0.25), quantile(v, 0.5), quantile(v, 0.75)};
}

double iqr(const std::vector<double>& v) { return quantile(v, 0.75) - quantile(v, 0.25); }

// raw two-sample comparison, no fitting
KsComparison direct_compare(std::string label, const std::vector<double>& lhs,
                            const std::vector<double>& rhs) {
  KsComparison cmp;
  cmp.label = std::move(label);
  cmp.ks = ks_two_sample(lhs, rhs);
  cmp.n_lhs = (int64_t)lhs.size();
  cmp.n_rhs = (int64_t)rhs.size();
  cmp.quartiles_lhs = quartiles_of(lhs);
  cmp.quartiles_rhs = quartiles_of(rhs);
  return cmp;
}

// shape-only comparison: median/IQR-match lhs onto the reference before KS,
// absorbing the free scale (and the centering error) of the limit statement
KsComparison fit_and_compare(std::string label, std::vector<double> lhs,
                             const std::vector<double>& ref) {
  double scale = iqr(ref) > 0 ? iqr(lhs) / iqr(ref) : 1.0;
  if (!(scale > 0)) scale = 1.0;
  double loc = median(lhs) - scale * median(ref);
  for (double& x : lhs) x = (x - loc) / scale;
  KsComparison cmp = direct_compare(std::move(label), lhs, ref);
  cmp.fitted_scale = scale;
  return cmp;
}

double folded_normal_cdf(double x) { return x <= 0 ? 0.0 : 2.0 * normal_cdf(x) - 1.0; }

}  // namespace

RecurrentReport recurrent_limit_check(const StackModel& model, int64_t n, int64_t replicas,
                                      double dt, int64_t sde_paths, uint64_t seed) {
  RecurrentReport rep;
  rep.seed = seed;
  rep.delta = delta_scalar(model);
  if (!(rep.delta >= 0.0 && rep.delta < 1.0))
    throw RegimeMismatch("recurrent diffusion check needs delta in [0, 1)");

  WalkConfig cfg;
  cfg.stop = stop_steps(n);
  cfg.record.checkpoint_stride = n / 2;
  std::vector<double> erw1, erwh;
  erw1.reserve((size_t)replicas);
  double mean_scaled = 0;
  for (int64_t r = 0; r < replicas; ++r) {
    Trajectory tr = run(model, replica_seed(seed, kStreamEnv, (uint64_t)r), cfg,
                        replica_seed(seed, kStreamWalk, (uint64_t)r));
    double s1 = (double)tr.x / std::sqrt((double)n);
    erw1.push_back(s1);
    mean_scaled += s1;
    erwh.push_back((double)tr.checkpoints.at(0).x / std::sqrt((double)n / 2.0));
  }
  rep.erw_mean = mean_scaled / (double)replicas;

  PerturbedBMParams prm{rep.delta, -rep.delta, 1.0, dt};
  Rng sde_rng(seed_combine(seed, (uint64_t)kStreamStats));
  std::vector<double> sde1, sdeh;
  sde1.reserve((size_t)sde_paths);
  for (int64_t r = 0; r < sde_paths; ++r) {
    PerturbedBMPath p = simulate_perturbed_bm(prm, sde_rng);
    sde1.push_back(p.x_end);
    sdeh.push_back(p.x_half / std::sqrt(0.5));
  }

  rep.at_t1 = direct_compare("X(1): walk vs perturbed diffusion", erw1, sde1);
  rep.at_half = direct_compare("X(1/2), rescaled to unit time", erwh, sdeh);
  return rep;
}

CriticalReport critical_limit_check(const StackModel& model, const std::vector<int64_t>& horizons,
                                    int64_t replicas, uint64_t seed) {
  CriticalReport rep;
  rep.seed = seed;
  rep.delta = delta_scalar(model);
  if (std::abs(rep.delta - 1.0) > 1e-9)
    throw RegimeMismatch("critical running-maximum check needs delta = 1");
  rep.horizons = horizons;

  const double half_normal_median = 0.674489750196082;
  for (size_t h = 0; h < horizons.size(); ++h) {
    int64_t n = horizons[h];
    WalkConfig cfg;
    cfg.stop = stop_steps(n);
    std::vector<double> xs;
    xs.reserve((size_t)replicas);
    for (int64_t r = 0; r < replicas; ++r) {
      Trajectory tr = run(model, replica_seed(seed, kStreamEnv, (uint64_t)(h * replicas + r)), cfg,
                          replica_seed(seed, kStreamWalk, (uint64_t)(h * replicas + r)));
      xs.push_back((double)tr.x / std::sqrt((double)n));
    }
    double scale = median(xs) / half_normal_median;
    if (!(scale > 0)) scale = 1.0;
    for (double& x : xs) x /= scale;

    KsComparison cmp;
    cmp.label = "X_n/sqrt(n), scale-fitted, vs |N(0,1)|";
    cmp.fitted_scale = scale;
    cmp.ks = ks_one_sample(xs, folded_normal_cdf);
    cmp.n_lhs = replicas;
    cmp.quartiles_lhs = quartiles_of(xs);
    cmp.quartiles_rhs = {0.318639363964375, half_normal_median, 1.150349380376008};
    rep.per_horizon.push_back(cmp);
    if (h + 1 == horizons.size()) rep.p5_scaled = quantile(xs, 0.05);
  }

  rep.monotone = true;
  for (size_t h = 1; h < rep.per_horizon.size(); ++h)
    if (rep.per_horizon[h].ks.statistic > rep.per_horizon[h - 1].ks.statistic)
      rep.monotone = false;

  // reference half: discretized Brownian running maxima against |N(0,1)|
  Rng bm_rng(seed_combine(seed, (uint64_t)kStreamStats));
  PerturbedBMParams prm{0.0, 0.0, 1.0, 2.5e-4};
  std::vector<double> maxima;
  maxima.reserve((size_t)replicas);
  for (int64_t r = 0; r < replicas; ++r) maxima.push_back(simulate_perturbed_bm(prm, bm_rng).max_x);
  KsComparison ref;
  ref.label = "Brownian maxima vs |N(0,1)|";
  ref.ks = ks_one_sample(maxima, folded_normal_cdf);
  ref.n_lhs = replicas;
  ref.quartiles_lhs = quartiles_of(maxima);
  ref.quartiles_rhs = {0.318639363964375, half_normal_median, 1.150349380376008};
  rep.bm_max_reference = ref;
  return rep;
}

Regime regime_of(double delta) {
  if (delta <= 1.0) throw RegimeMismatch("marginal regimes need delta > 1");
  if (std::abs(delta - 2.0) < 1e-12) return Regime::ii;
  if (std::abs(delta - 4.0) < 1e-12) return Regime::iv;
  if (delta < 2.0) return Regime::i;
  if (delta < 4.0) return Regime::iii;
  return Regime::v;
}

TransientReport transient_marginal_check(const StackModel& model, Regime regime, int64_t n,
                                         const TransientOptions& opts, uint64_t seed) {
  TransientReport rep;
  rep.seed = seed;
  rep.delta = delta_scalar(model);
  if (regime_of(rep.delta) != regime)
    throw RegimeMismatch("model delta does not match the requested regime");
  rep.regime = regime;

  if (regime == Regime::i) {
    // first-passage times to level n: P[T > t] ~ t^{-delta/2}
    WalkConfig cfg;
    cfg.stop = stop_hit_level(n);
    std::vector<double> times;
    times.reserve((size_t)opts.replicas);
    for (int64_t r = 0; r < opts.replicas; ++r) {
      Trajectory tr = run(model, replica_seed(seed, kStreamEnv, (uint64_t)r), cfg,
                          replica_seed(seed, kStreamWalk, (uint64_t)r));
      times.push_back((double)tr.steps);  // capped stragglers enter censored at the cap
    }
    rep.t_tail = tail_index(times, opts.tail_fraction);
    return rep;
  }

  if (regime == Regime::ii) {
    // E X_n ~ c n/log n: the normalized mean must stabilize across a doubling
    auto mean_at = [&](int64_t horizon, uint64_t salt) {
      WalkConfig cfg;
      cfg.stop = stop_steps(horizon);
      double acc = 0;
      for (int64_t r = 0; r < opts.replicas; ++r) {
        Trajectory tr = run(model, replica_seed(seed, kStreamEnv, salt + (uint64_t)r), cfg,
                            replica_seed(seed, kStreamWalk, salt + (uint64_t)r));
        acc += (double)tr.x;
      }
      return acc / (double)opts.replicas;
    };
    int64_t n1 = n / 2;
    rep.ratio_first = mean_at(n1, 0) * std::log((double)n1) / (double)n1;
    rep.ratio_second = mean_at(n, (uint64_t)opts.replicas) * std::log((double)n) / (double)n;
    rep.ratio_ok = rep.ratio_first > 0.0 && rep.ratio_second > 0.0 &&
                   std::abs(rep.ratio_second / rep.ratio_first - 1.0) <= opts.ratio_tolerance;
    return rep;
  }

  // regimes iii-v: center with the regeneration speed from a separate batch
  uint64_t speed_master = seed_combine(seed, (uint64_t)kStreamCycle);
  WalkConfig speed_cfg;
  speed_cfg.stop = stop_steps(n);
  speed_cfg.record.jumps = true;
  speed_cfg.record.hit_times = true;
  std::vector<RegenCycle> pool;
  for (int64_t r = 0; r < opts.speed_replicas; ++r) {
    Trajectory tr = run(model, replica_seed(speed_master, kStreamEnv, (uint64_t)r), speed_cfg,
                        replica_seed(speed_master, kStreamWalk, (uint64_t)r));
    CycleSplit cs = cycles_from_trajectory(tr, tr.steps / 10);
    pool.insert(pool.end(), cs.cycles.begin(), cs.cycles.end());
  }
  SpeedEstimate sp = speed_estimate(pool, 300, 0.95, seed);
  if (sp.degenerate) throw SpeedUnavailable();
  rep.v_hat = sp.v_hat;
  rep.v_se = sp.se;

  double norm;
  if (regime == Regime::iii)
    norm = std::pow((double)n, 2.0 / rep.delta);
  else if (regime == Regime::iv)
    norm = std::sqrt((double)n * std::log((double)n));
  else
    norm = std::sqrt((double)n);

  WalkConfig cfg;
  cfg.stop = stop_steps(n);
  std::vector<double> ends, sups;
  ends.reserve((size_t)opts.replicas);
  for (int64_t r = 0; r < opts.replicas; ++r) {
    Trajectory tr = run(model, replica_seed(seed, kStreamEnv, (uint64_t)r), cfg,
                        replica_seed(seed, kStreamWalk, (uint64_t)r));
    if (regime == Regime::iii) {
      // nv - X_n is the heavy-tailed lag, totally skewed to the right
      ends.push_back(((double)n * rep.v_hat - (double)tr.x) / norm);
      sups.push_back(((double)n * rep.v_hat - (double)tr.max_x) / norm);
    } else {
      ends.push_back(((double)tr.x - (double)n * rep.v_hat) / norm);
      sups.push_back(((double)tr.max_x - (double)n * rep.v_hat) / norm);
    }
  }

  Rng ref_rng(seed_combine(seed, (uint64_t)kStreamStats));
  std::vector<double> ref;
  ref.reserve((size_t)opts.reference_samples);
  if (regime == Regime::iii) {
    StableParams p{rep.delta / 2.0, 1.0};
    for (int64_t i = 0; i < opts.reference_samples; ++i) ref.push_back(sample_stable(p, ref_rng));
  } else {
    for (int64_t i = 0; i < opts.reference_samples; ++i) ref.push_back(ref_rng.gauss());
  }

  const char* lhs_name = regime == Regime::iii ? "(nv - X_n)/n^(2/delta)" : "(X_n - nv)/sqrt(n)";
  rep.primary = fit_and_compare(lhs_name, ends, ref);
  rep.sup_variant = fit_and_compare("running-maximum variant", sups, ref);
  return rep;
}

MultidimReport multidim_checks(const StackModel& model, int64_t n, int64_t replicas,
                               uint64_t seed) {
  MultidimReport rep;
  rep.d = dimension(model);
  if (rep.d < 2) throw RegimeMismatch("multidimensional checks need d >= 2");
  rep.n = n;
  rep.replicas = replicas;
  rep.seed = seed;
  const int d = rep.d;
  const double rn = std::sqrt((double)n);

  WalkConfig cfg;
  cfg.stop = stop_steps(n);
  cfg.record.checkpoint_stride = n / 2;

  int64_t directional = 0;
  std::vector<double> v1;
  std::vector<std::vector<double>> coords((size_t)d);
  for (int64_t r = 0; r < replicas; ++r) {
    Trajectory tr = run(model, replica_seed(seed, kStreamEnv, (uint64_t)r), cfg,
                        replica_seed(seed, kStreamWalk, (uint64_t)r));
    int64_t x_half = tr.checkpoints.at(0).x;
    directional += (tr.x > x_half && x_half > 0);
    v1.push_back((double)tr.x / (double)n);
    for (int a = 0; a < d; ++a) coords[(size_t)a].push_back((double)tr.pos[(size_t)a]);
  }

  double f = (double)directional / (double)replicas;
  double fse = std::sqrt(std::max(f * (1.0 - f), 1.0 / (double)replicas) / (double)replicas);
  rep.directional_fraction = f;
  rep.frac_ci_lo = f - 1.96 * fse;
  rep.frac_ci_hi = f + 1.96 * fse;

  BootstrapCi v1ci = bootstrap_ci(v1, [](const std::vector<double>& v) { return mean(v); }, 2000,
                                  0.95, seed);
  rep.v1_hat = v1ci.estimate;
  rep.v1_lo = v1ci.lo;
  rep.v1_hi = v1ci.hi;

  for (int a = 1; a < d; ++a) {
    std::vector<double> scaled = coords[(size_t)a];
    for (double& x : scaled) x /= rn;
    rep.transverse_mean.push_back(mean(scaled));
    rep.transverse_se.push_back(std::sqrt(variance(scaled) / (double)replicas));
  }

  // split-sample normality: moments fitted on the first half, KS on the second
  for (int a = 0; a < d; ++a) {
    const std::vector<double>& xs = coords[(size_t)a];
    size_t half = xs.size() / 2;
    std::vector<double> fit(xs.begin(), xs.begin() + (ptrdiff_t)half);
    std::vector<double> test(xs.begin() + (ptrdiff_t)half, xs.end());
    double m = mean(fit), s = std::sqrt(variance(fit));
    if (!(s > 0)) s = 1.0;
    for (double& x : test) x = (x - m) / s;
    KsComparison cmp;
    cmp.label = "coordinate " + std::to_string(a + 1) + " CLT (split-sample fit)";
    cmp.fitted_scale = s;
    cmp.ks = ks_one_sample(test, [](double v) { return normal_cdf(v); });
    cmp.n_lhs = (int64_t)test.size();
    cmp.quartiles_lhs = quartiles_of(test);
    cmp.quartiles_rhs = {-0.674489750196082, 0.0, 0.674489750196082};
    rep.coordinate_normality.push_back(cmp);
  }

  rep.covariance.assign((size_t)(d * d), 0.0);
  std::vector<double> means((size_t)d);
  for (int a = 0; a < d; ++a) means[(size_t)a] = mean(coords[(size_t)a]);
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      double acc = 0;
      for (size_t r = 0; r < (size_t)replicas; ++r)
        acc += (coords[(size_t)a][r] - means[(size_t)a]) * (coords[(size_t)c][r] - means[(size_t)c]);
      rep.covariance[(size_t)(a * d + c)] = acc / ((double)replicas - 1.0) / (double)n;
    }
  return rep;
}

}  // namespace erw
