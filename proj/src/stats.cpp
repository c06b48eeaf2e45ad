#include "erw/stats.hpp"

#include <algorithm>
#include <cmath>

namespace erw {

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw EmptySample();
  double s = 0;
  for (double x : xs) s += x;
  return s / (double)xs.size();
}

double variance(const std::vector<double>& xs) {
  if (xs.empty()) throw EmptySample();
  if (xs.size() == 1) return 0.0;
  double m = mean(xs), s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / (double)(xs.size() - 1);
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw EmptySample();
  q = std::min(1.0, std::max(0.0, q));
  std::sort(xs.begin(), xs.end());
  double h = q * (double)(xs.size() - 1);
  size_t i = (size_t)h;
  if (i + 1 >= xs.size()) return xs.back();
  return xs[i] + (h - (double)i) * (xs[i + 1] - xs[i]);
}

double median(const std::vector<double>& xs) { return quantile(xs, 0.5); }

Ecdf::Ecdf(std::vector<double> samples) : xs_(std::move(samples)) {
  if (xs_.empty()) throw EmptySample();
  std::sort(xs_.begin(), xs_.end());
}

double Ecdf::operator()(double x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  return (double)(it - xs_.begin()) / (double)xs_.size();
}

double kolmogorov_q(double z) {
  if (z <= 0) return 1.0;
  if (z < 1.18) {
    // dual theta series, accurate for small z where the direct one is slow
    double t = std::exp(-1.233700550136169827 / (z * z));  // exp(-pi^2/(8 z^2))
    double p = 2.506628274631000502 / z *
               (t + std::pow(t, 9) + std::pow(t, 25) + std::pow(t, 49));
    return std::max(0.0, 1.0 - p);
  }
  double t = std::exp(-2.0 * z * z);
  double q = 2.0 * (t - std::pow(t, 4) + std::pow(t, 9) - std::pow(t, 16));
  return std::max(0.0, q);
}

namespace {

// Stephens' finite-n scaling of the KS statistic
double ks_p_value(double d, double n_eff) {
  double rn = std::sqrt(n_eff);
  return kolmogorov_q(d * (rn + 0.12 + 0.11 / rn));
}

}  // namespace

KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw EmptySample();
  std::sort(samples.begin(), samples.end());
  double n = (double)samples.size();
  double d = 0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, std::max(f - (double)i / n, (double)(i + 1) / n - f));
  }
  KsResult r;
  r.statistic = d;
  r.p_value = ks_p_value(d, n);
  r.approximate = samples.size() < 50;
  return r;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw EmptySample();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double na = (double)a.size(), nb = (double)b.size();
  size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    // walk past whole tie blocks before comparing the CDFs
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs((double)i / na - (double)j / nb));
  }
  double n_eff = na * nb / (na + nb);
  KsResult r;
  r.statistic = d;
  r.p_value = ks_p_value(d, n_eff);
  r.approximate = n_eff < 50.0;
  return r;
}

TailIndex tail_index(std::vector<double> samples, double tail_fraction, uint64_t jitter_seed) {
  if (samples.empty()) throw EmptySample();
  int64_t k = (int64_t)(tail_fraction * (double)samples.size());
  if (k < 2) throw DegenerateTail();

  bool all_integer = true;
  for (double x : samples)
    if (std::floor(x) != x) {
      all_integer = false;
      break;
    }
  if (all_integer) {
    // smear each integer m over (m-1, m]: undoes ceil-style discretization and
    // breaks the ties that would otherwise zero out the log spacings
    Rng rng(jitter_seed);
    for (double& x : samples) x -= rng.unit();
  }

  std::sort(samples.begin(), samples.end(), std::greater<double>());
  double pivot = samples[(size_t)k];
  if (pivot <= 0.0) throw DegenerateTail();
  double acc = 0;
  for (int64_t i = 0; i < k; ++i) acc += std::log(samples[(size_t)i] / pivot);
  double mean_log = acc / (double)k;
  if (mean_log <= 0.0) throw DegenerateTail();

  TailIndex t;
  t.k = k;
  t.estimate = 1.0 / mean_log;
  double half = 1.96 * t.estimate / std::sqrt((double)k);
  t.ci_lo = t.estimate - half;
  t.ci_hi = t.estimate + half;

  // rank-plot slope: log x_(i) against log i over the used top block
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int64_t i = 1; i <= k; ++i) {
    double lx = std::log((double)i), ly = std::log(samples[(size_t)i - 1]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double n = (double)k;
  t.loglog_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return t;
}

BootstrapCi bootstrap_ci(const std::vector<double>& samples,
                         const std::function<double(const std::vector<double>&)>& stat,
                         int64_t resamples, double level, uint64_t seed) {
  if (samples.empty()) throw EmptySample();
  BootstrapCi ci;
  ci.estimate = stat(samples);
  Rng rng(seed_combine(seed, (uint64_t)kStreamStats));
  std::vector<double> boot;
  boot.reserve((size_t)resamples);
  std::vector<double> draw(samples.size());
  for (int64_t b = 0; b < resamples; ++b) {
    for (double& x : draw) x = samples[(size_t)rng.below((uint64_t)samples.size())];
    boot.push_back(stat(draw));
  }
  double a = (1.0 - level) / 2.0;
  ci.lo = quantile(boot, a);
  ci.hi = quantile(boot, 1.0 - a);
  ci.se = std::sqrt(variance(boot));
  return ci;
}

double sample_stable(const StableParams& params, Rng& rng) {
  double alpha = params.alpha, b = params.b;
  if (alpha == 2.0) return std::sqrt(2.0 * b) * rng.gauss();

  double u = 3.141592653589793238 * (rng.unit_open() - 0.5);  // Uniform(-pi/2, pi/2)
  double w = -std::log(rng.unit_open());                      // Exp(1)

  if (alpha == 1.0) {
    // skewness +1, scale 1 in the S1 convention
    double half_pi = 1.570796326794896619;
    double x = (1.0 / half_pi) * ((half_pi + u) * std::tan(u) -
                                  std::log(half_pi * w * std::cos(u) / (half_pi + u)));
    // rescaling to b shifts the log term: bX + (2/pi) b log b matches the CF
    return b * x + (1.0 / half_pi) * b * std::log(b);
  }

  double ta = std::tan(1.570796326794896619 * alpha);
  double bshift = std::atan(ta) / alpha;
  double scale = std::pow(1.0 + ta * ta, 0.5 / alpha);
  double x = scale * std::sin(alpha * (u + bshift)) /
             std::pow(std::cos(u), 1.0 / alpha) *
             std::pow(std::cos(u - alpha * (u + bshift)) / w, (1.0 - alpha) / alpha);
  return std::pow(b, 1.0 / alpha) * x;
}

std::complex<double> stable_cf(const StableParams& params, double u) {
  double alpha = params.alpha, b = params.b;
  if (u == 0.0) return {1.0, 0.0};
  double au = std::abs(u), sg = u > 0 ? 1.0 : -1.0;
  std::complex<double> log_phi;
  if (alpha == 1.0) {
    log_phi = {-b * au, -b * au * (2.0 / 3.141592653589793238) * std::log(au) * sg};
  } else {
    double ta = std::tan(1.570796326794896619 * alpha);
    double mag = b * std::pow(au, alpha);
    log_phi = {-mag, mag * ta * sg};
  }
  return std::exp(log_phi);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

}  // namespace erw
