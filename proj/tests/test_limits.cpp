#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "erw/limits.hpp"

using namespace erw;

TEST_CASE("unperturbed scheme reproduces Brownian marginals") {
  const int64_t paths = 4000;
  PerturbedBMParams prm{0.0, 0.0, 1.0, 1e-3};
  Rng rng(101);
  std::vector<double> ends;
  double mean_max = 0;
  for (int64_t i = 0; i < paths; ++i) {
    PerturbedBMPath p = simulate_perturbed_bm(prm, rng);
    CHECK(p.residual < 1e-9);
    CHECK(p.max_x >= p.x_end);
    CHECK(p.min_x <= p.x_end);
    CHECK(p.max_x >= 0.0);
    CHECK(p.min_x <= 0.0);
    ends.push_back(p.x_end);
    mean_max += p.max_x;
  }
  mean_max /= (double)paths;
  KsResult ks = ks_one_sample(ends, [](double v) { return normal_cdf(v); });
  CHECK(ks.p_value > 0.001);
  CHECK(std::abs(mean_max - std::sqrt(2.0 / 3.141592653589793)) < 0.06);
}

TEST_CASE("perturbation decomposition holds pathwise") {
  PerturbedBMParams prm{0.5, -0.5, 1.0, 1e-4};
  Rng rng(707);
  double mean_max = 0;
  const int64_t paths = 500;
  for (int64_t i = 0; i < paths; ++i) {
    PerturbedBMPath p = simulate_perturbed_bm(prm, rng);
    CHECK(p.residual < 10.0 * std::sqrt(prm.dt));
    mean_max += p.max_x;
  }
  mean_max /= (double)paths;
  // positive pull at the maximum lifts the running max well above Brownian
  CHECK(mean_max > std::sqrt(2.0 / 3.141592653589793) + 0.3);
}

TEST_CASE("mirrored parameters reflect the law") {
  Rng r1(31), r2(32);
  const int64_t paths = 3000;
  std::vector<double> a, b;
  for (int64_t i = 0; i < paths; ++i) {
    a.push_back(-simulate_perturbed_bm({0.3, -0.6, 1.0, 1e-3}, r1).x_end);
    b.push_back(simulate_perturbed_bm({-0.6, 0.3, 1.0, 1e-3}, r2).x_end);
  }
  KsResult ks = ks_two_sample(a, b);
  CHECK(ks.p_value > 0.001);
}

TEST_CASE("regime table and guards") {
  CHECK(regime_of(1.5) == Regime::i);
  CHECK(regime_of(2.0) == Regime::ii);
  CHECK(regime_of(3.0) == Regime::iii);
  CHECK(regime_of(4.0) == Regime::iv);
  CHECK(regime_of(6.0) == Regime::v);
  CHECK(regime_of(2.5) == Regime::iii);
  CHECK(regime_of(4.7) == Regime::v);
  CHECK_THROWS_AS((void)regime_of(1.0), RegimeMismatch);
  CHECK_THROWS_AS((void)regime_of(0.5), RegimeMismatch);
  CHECK_THROWS_AS((void)recurrent_limit_check(homog_pm(0.8, 5), 1000, 100, 1e-3, 100, 1), RegimeMismatch);
  CHECK_THROWS_AS((void)critical_limit_check(homog_pm(0.75, 1), {1000}, 100, 1), RegimeMismatch);
  CHECK_THROWS_AS(
      (void)transient_marginal_check(homog_pm(0.875, 2), Regime::iii, 1000, TransientOptions{}, 1),
      RegimeMismatch);
}

TEST_CASE("recurrent walks match the doubly perturbed diffusion") {
  // placebo: delta = 0, the limit is plain Brownian motion
  RecurrentReport r0 = recurrent_limit_check(HomogeneousModel{{}}, 4000, 2500, 1e-3, 2500, 21);
  CHECK(r0.delta == doctest::Approx(0.0));
  CHECK(r0.at_t1.ks.p_value > 0.001);
  CHECK(r0.at_half.ks.p_value > 0.001);
  CHECK(std::abs(r0.erw_mean) < 0.06);  // scaled by sqrt(n)
  CHECK(std::abs(r0.at_t1.quartiles_lhs[1] - r0.at_t1.quartiles_rhs[1]) < 0.15);

  // a mildly excited walk: perturbation pushes the mean up
  RecurrentReport r1 = recurrent_limit_check(homog_pm(0.6, 1), 4000, 2500, 1e-3, 2500, 22);
  CHECK(r1.delta == doctest::Approx(0.2));
  CHECK(r1.at_t1.ks.p_value > 0.001);
  CHECK(r1.at_half.ks.p_value > 0.001);
  CHECK(r1.erw_mean > 0.06);
}

TEST_CASE("critical walks approach the folded normal running-maximum law") {
  CriticalReport r = critical_limit_check(homog_pm(0.75, 2), {1000, 100'000}, 2000, 33);
  CHECK(r.delta == doctest::Approx(1.0));
  REQUIRE(r.per_horizon.size() == 2);
  CHECK(r.monotone);
  CHECK(r.per_horizon[1].ks.statistic <= r.per_horizon[0].ks.statistic);
  CHECK(r.p5_scaled >= -0.1);
  CHECK(r.bm_max_reference.ks.p_value > 0.001);
}

TEST_CASE("transient regime iii: stable marginal after speed centering") {
  TransientOptions opts;
  opts.replicas = 1200;
  opts.speed_replicas = 80;
  opts.reference_samples = 50'000;
  TransientReport r = transient_marginal_check(homog_pm(0.8, 5), Regime::iii, 100'000, opts, 44);
  CHECK(r.delta == doctest::Approx(3.0));
  CHECK(r.regime == Regime::iii);
  CHECK(r.v_hat > 0.2);
  CHECK(r.v_hat < 0.9);
  CHECK(r.primary.ks.p_value > 0.001);
  CHECK(r.sup_variant.ks.p_value > 0.001);
}

TEST_CASE("transient regime v: gaussian marginal") {
  TransientOptions opts;
  opts.replicas = 1200;
  opts.speed_replicas = 80;
  opts.reference_samples = 50'000;
  TransientReport r = transient_marginal_check(homog_pm(0.8, 10), Regime::v, 100'000, opts, 45);
  CHECK(r.delta == doctest::Approx(6.0));
  CHECK(r.primary.ks.p_value > 0.001);
  CHECK(r.sup_variant.ks.p_value > 0.001);
}

TEST_CASE("transient regime i: first-passage times have the predicted tail") {
  TransientOptions opts;
  opts.replicas = 2500;
  opts.tail_fraction = 0.05;
  TransientReport r = transient_marginal_check(homog_pm(0.875, 2), Regime::i, 1000, opts, 46);
  CHECK(r.delta == doctest::Approx(1.5));
  CHECK(r.t_tail.estimate > 0.5);
  CHECK(r.t_tail.estimate < 1.0);
}

TEST_CASE("transient regime ii: mean grows like n over log n") {
  TransientOptions opts;
  opts.replicas = 600;
  opts.ratio_tolerance = 0.30;
  TransientReport r = transient_marginal_check(homog_pm(0.75, 4), Regime::ii, 300'000, opts, 47);
  CHECK(r.delta == doctest::Approx(2.0));
  CHECK(r.ratio_first > 0.0);
  CHECK(r.ratio_second > 0.0);
  CHECK(std::abs(r.ratio_second / r.ratio_first - 1.0) < 0.30);
  CHECK(r.ratio_ok);
}

TEST_CASE("multidimensional first-visit excitement is ballistic along e1") {
  MultidimReport r = multidim_checks(BWModel{2, 0.75}, 30'000, 250, 48);
  CHECK(r.d == 2);
  CHECK(r.directional_fraction >= 0.9);
  CHECK(r.v1_lo > 0.0);
  CHECK(r.v1_hat > r.v1_lo);
  CHECK(r.v1_hi > r.v1_hat);
  REQUIRE(r.transverse_mean.size() == 1);
  CHECK(std::abs(r.transverse_mean[0]) <= 3.0 * r.transverse_se[0]);
  REQUIRE(r.coordinate_normality.size() == 2);
  for (const auto& c : r.coordinate_normality) CHECK(c.ks.p_value > 0.001);
  REQUIRE(r.covariance.size() == 4);
  CHECK(r.covariance[0] > 0.0);
  CHECK(r.covariance[3] > 0.0);
  CHECK(r.covariance[1] == doctest::Approx(r.covariance[2]));
}

TEST_CASE("the placebo variant of the multidim harness sees no drift") {
  MultidimReport r = multidim_checks(BWModel{2, 0.5}, 30'000, 250, 49);
  CHECK(r.v1_lo <= 0.0);
  CHECK(0.0 <= r.v1_hi);
  CHECK(r.directional_fraction < 0.5);
}
