#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "erw/stats.hpp"

using namespace erw;

TEST_CASE("sample moments on hand-checked data") {
  std::vector<double> xs = {1, 2, 3, 4};
  CHECK(mean(xs) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(variance(xs) == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
  CHECK(median(xs) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(quantile(xs, 0.0) == doctest::Approx(1.0));
  CHECK(quantile(xs, 1.0) == doctest::Approx(4.0));
  CHECK(quantile(xs, 0.5) == doctest::Approx(2.5));
  CHECK_THROWS_AS((void)mean({}), EmptySample);
}

TEST_CASE("empirical CDF steps") {
  Ecdf f({3, 1, 2});
  CHECK(f(0.5) == doctest::Approx(0.0));
  CHECK(f(1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(f(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(f(2.5) == doctest::Approx(2.0 / 3.0));
  CHECK(f(3.0) == doctest::Approx(1.0));
  CHECK(f(9.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(Ecdf({}), EmptySample);
}

TEST_CASE("Kolmogorov tail values match the series") {
  CHECK(kolmogorov_q(0.1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(kolmogorov_q(0.5) == doctest::Approx(0.96394524366487509).epsilon(1e-9));
  CHECK(kolmogorov_q(1.0) == doctest::Approx(0.26999967167735452).epsilon(1e-9));
  CHECK(kolmogorov_q(2.0) == doctest::Approx(0.00067092525577969535).epsilon(1e-9));
  double prev = 1.0 + 1e-12;
  for (double z = 0.05; z < 4.0; z += 0.05) {
    double q = kolmogorov_q(z);
    CHECK(q <= prev);
    CHECK(q >= 0.0);
    prev = q;
  }
}

TEST_CASE("one-sample KS on a hand-checked case") {
  KsResult r = ks_one_sample({0.1, 0.4, 0.8}, [](double x) { return x; });
  CHECK(r.statistic == doctest::Approx(4.0 / 15.0).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(0.95660254840642888).epsilon(1e-9));
  CHECK(r.approximate);
}

TEST_CASE("two-sample KS on a hand-checked case with ties") {
  KsResult r = ks_two_sample({1, 2, 2, 3}, {2, 3, 3});
  CHECK(r.statistic == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(0.82143726249354882).epsilon(1e-9));
  CHECK(r.approximate);

  std::vector<double> same = {1, 2, 3, 4, 5};
  KsResult s = ks_two_sample(same, same);
  CHECK(s.statistic == doctest::Approx(0.0));
  CHECK(s.p_value == doctest::Approx(1.0));
}

TEST_CASE("KS p-values are calibrated under the null") {
  Rng rng(2718);
  int64_t below10 = 0, below50 = 0;
  const int64_t reps = 400;
  for (int64_t r = 0; r < reps; ++r) {
    std::vector<double> xs(200);
    for (double& x : xs) x = rng.unit();
    KsResult res = ks_one_sample(xs, [](double v) { return v < 0 ? 0.0 : (v > 1 ? 1.0 : v); });
    CHECK_FALSE(res.approximate);
    below10 += res.p_value < 0.1;
    below50 += res.p_value < 0.5;
  }
  CHECK((double)below10 / (double)reps > 0.05);
  CHECK((double)below10 / (double)reps < 0.16);
  CHECK((double)below50 / (double)reps > 0.40);
  CHECK((double)below50 / (double)reps < 0.60);
}

TEST_CASE("two-sample KS separates shifted distributions") {
  Rng rng(14);
  std::vector<double> a(2000), b(2000);
  for (double& x : a) x = rng.gauss();
  for (double& x : b) x = rng.gauss() + 0.5;
  KsResult r = ks_two_sample(a, b);
  CHECK(r.p_value < 1e-6);
  CHECK_FALSE(r.approximate);
}

TEST_CASE("normal CDF spot values") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(normal_cdf(1.0) == doctest::Approx(0.84134474606854295).epsilon(1e-9));
  CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-9));
  CHECK(normal_cdf(3.0) == doctest::Approx(0.99865010196836991).epsilon(1e-9));
  for (double x : {0.3, 1.7, 2.9})
    CHECK(normal_cdf(x) + normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Hill estimator recovers a Pareto tail index") {
  Rng rng(31);
  std::vector<double> xs(100'000);
  for (double& x : xs) x = std::pow(rng.unit_open(), -1.0 / 3.0);
  TailIndex t = tail_index(xs, 0.05);
  CHECK(t.k == 5000);
  CHECK(std::abs(t.estimate - 3.0) < 0.13);
  CHECK(t.ci_lo <= 3.0);
  CHECK(3.0 <= t.ci_hi);
  CHECK(t.loglog_slope > -0.45);
  CHECK(t.loglog_slope < -0.25);

  // fraction sensitivity: exact Pareto is stable across reasonable k
  for (double frac : {0.02, 0.05, 0.1}) {
    TailIndex s = tail_index(xs, frac);
    CHECK(s.estimate > 2.7);
    CHECK(s.estimate < 3.3);
  }

  // scale invariance
  std::vector<double> scaled = xs;
  for (double& x : scaled) x *= 3.7;
  CHECK(tail_index(scaled, 0.05).estimate == doctest::Approx(t.estimate).epsilon(1e-9));
}

TEST_CASE("Hill estimator jitters integer data and guards degeneracy") {
  Rng rng(77);
  std::vector<double> xs(50'000);
  for (double& x : xs) x = std::ceil(std::pow(rng.unit_open(), -1.0 / 3.0));
  TailIndex t = tail_index(xs, 0.05);
  CHECK(t.estimate > 2.4);
  CHECK(t.estimate < 3.6);

  CHECK_THROWS_AS((void)tail_index(std::vector<double>(1000, 2.5), 0.05), DegenerateTail);
  CHECK_THROWS_AS((void)tail_index(std::vector<double>(1000, -1.0), 0.05), DegenerateTail);
  CHECK_THROWS_AS((void)tail_index({}, 0.05), EmptySample);
  CHECK_THROWS_AS((void)tail_index(std::vector<double>{1, 2, 3}, 0.05), DegenerateTail);  // k < 2
}

TEST_CASE("bootstrap intervals: basics and coverage") {
  auto stat_mean = [](const std::vector<double>& v) { return mean(v); };
  Rng rng(4242);
  std::vector<double> xs(500);
  for (double& x : xs) x = rng.gauss();
  BootstrapCi ci = bootstrap_ci(xs, stat_mean, 2000, 0.95, 9);
  CHECK(ci.estimate == doctest::Approx(mean(xs)).epsilon(1e-12));
  CHECK(ci.lo <= ci.estimate);
  CHECK(ci.estimate <= ci.hi);
  CHECK(ci.se > 0.0);

  BootstrapCi flat = bootstrap_ci({2, 2, 2}, stat_mean, 200, 0.95, 9);
  CHECK(flat.lo == doctest::Approx(2.0));
  CHECK(flat.hi == doctest::Approx(2.0));
  CHECK(flat.se == doctest::Approx(0.0));

  CHECK_THROWS_AS((void)bootstrap_ci({}, stat_mean, 100, 0.95, 1), EmptySample);

  int64_t covered = 0;
  const int64_t reps = 300;
  for (int64_t r = 0; r < reps; ++r) {
    std::vector<double> ys(300);
    for (double& y : ys) y = rng.gauss();
    BootstrapCi c = bootstrap_ci(ys, stat_mean, 400, 0.95, (uint64_t)r + 1);
    covered += (c.lo <= 0.0 && 0.0 <= c.hi);
  }
  double cov = (double)covered / (double)reps;
  CHECK(cov > 0.90);
  CHECK(cov < 0.99);
}

static std::vector<std::array<double, 5>> load_cf_fixture() {
  std::ifstream in(std::string(FIXTURE_DIR) + "/stable_cf.txt");
  REQUIRE(in.good());
  std::vector<std::array<double, 5>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::array<double, 5> row{};
    for (double& v : row) ss >> v;
    rows.push_back(row);
  }
  return rows;
}

TEST_CASE("stable characteristic function matches the frozen table") {
  auto rows = load_cf_fixture();
  REQUIRE(rows.size() == 72);
  for (const auto& row : rows) {
    std::complex<double> phi = stable_cf({row[0], row[1]}, row[2]);
    CHECK(phi.real() == doctest::Approx(row[3]).epsilon(1e-10));
    CHECK(phi.imag() == doctest::Approx(row[4]).epsilon(1e-10));
  }
}

TEST_CASE("stable sampler empirical characteristic function") {
  auto rows = load_cf_fixture();
  const int64_t n = 100'000;
  // group rows by (alpha, b) so each parameter pair is sampled once
  for (size_t i = 0; i < rows.size();) {
    double alpha = rows[i][0], b = rows[i][1];
    StableParams p{alpha, b};
    Rng rng(seed_combine(99, (uint64_t)(i * 131 + 7)));
    std::vector<double> xs((size_t)n);
    for (double& x : xs) x = sample_stable(p, rng);
    while (i < rows.size() && rows[i][0] == alpha && rows[i][1] == b) {
      double u = rows[i][2];
      double re = 0, im = 0;
      for (double x : xs) {
        re += std::cos(u * x);
        im += std::sin(u * x);
      }
      re /= (double)n;
      im /= (double)n;
      INFO("alpha=", alpha, " b=", b, " u=", u);
      CHECK(std::abs(re - rows[i][3]) < 0.03);
      CHECK(std::abs(im - rows[i][4]) < 0.03);
      ++i;
    }
  }
}

TEST_CASE("alpha = 2 reduces to the centered normal with variance 2b") {
  Rng rng(5150);
  const int64_t n = 200'000;
  std::vector<double> xs((size_t)n);
  for (double& x : xs) x = sample_stable({2.0, 0.5}, rng);  // variance 1
  KsResult ks = ks_one_sample(xs, [](double v) { return normal_cdf(v); });
  CHECK(ks.p_value > 0.001);

  for (double& x : xs) x = sample_stable({2.0, 1.0}, rng);
  CHECK(std::abs(mean(xs)) < 3.0 * std::sqrt(2.0 / (double)n));
  CHECK(std::abs(variance(xs) - 2.0) < 3.0 * 2.0 * std::sqrt(2.0 / (double)n));
}

TEST_CASE("stable scaling: c Z_(alpha,b) has scale c^alpha b") {
  Rng rng(616);
  const int64_t n = 100'000;
  std::vector<double> a((size_t)n), b((size_t)n);
  for (double& x : a) x = 2.0 * sample_stable({1.5, 1.0}, rng);
  double b2 = std::pow(2.0, 1.5);
  for (double& x : b) x = sample_stable({1.5, b2}, rng);
  KsResult ks = ks_two_sample(a, b);
  CHECK(ks.p_value > 0.001);
}

TEST_CASE("totally skewed stable with alpha < 1 is positive") {
  Rng rng(321);
  double mn = 1e300, mx = -1e300;
  for (int64_t i = 0; i < 100'000; ++i) {
    double x = sample_stable({0.75, 1.0}, rng);
    mn = std::min(mn, x);
    mx = std::max(mx, x);
  }
  CHECK(mn > 0.0);
  CHECK(mx > 1000.0);  // genuinely heavy upper tail
}

TEST_CASE("stable sampling is reproducible") {
  Rng a(12), b(12);
  for (int i = 0; i < 100; ++i)
    CHECK(sample_stable({1.2, 2.0}, a) == sample_stable({1.2, 2.0}, b));
}
