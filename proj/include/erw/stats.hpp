#pragma once
// Statistical toolkit: totally-skewed stable sampler, Hill tail-index
// estimator, empirical CDFs, Kolmogorov-Smirnov tests, bootstrap intervals.

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "erw/rng.hpp"

namespace erw {

struct EmptySample : std::runtime_error {
  EmptySample() : std::runtime_error("empty sample") {}
};
struct DegenerateTail : std::runtime_error {
  DegenerateTail() : std::runtime_error("top order statistics not positive/distinct after jitter") {}
};

// ---- basic moments ---------------------------------------------------------

double mean(const std::vector<double>& xs);
double variance(const std::vector<double>& xs);  // unbiased
double quantile(std::vector<double> xs, double q);  // linear interpolation
double median(const std::vector<double>& xs);

// ---- empirical CDF ---------------------------------------------------------

class Ecdf {
 public:
  explicit Ecdf(std::vector<double> samples);  // throws EmptySample
  double operator()(double x) const;           // fraction of samples <= x
  const std::vector<double>& sorted() const { return xs_; }

 private:
  std::vector<double> xs_;
};

// ---- Kolmogorov-Smirnov ----------------------------------------------------

// asymptotic tail Q(z) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 z^2)
double kolmogorov_q(double z);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool approximate = false;  // flagged when a sample has fewer than 50 points
};

KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// ---- Hill tail-index estimator ---------------------------------------------

struct TailIndex {
  double estimate = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // asymptotic normal, estimate/sqrt(k)
  int64_t k = 0;                    // top order statistics used
  double loglog_slope = 0.0;        // rank-plot slope (diagnostic, ~ -1/alpha)
};

// Hill estimator on the top tail_fraction order statistics. Integer-valued
// samples are jittered by U[0,1) (seeded) to break ties; throws DegenerateTail
// if the used order statistics are still not positive and distinct.
TailIndex tail_index(std::vector<double> samples, double tail_fraction = 0.05,
                     uint64_t jitter_seed = 7);

// ---- bootstrap --------------------------------------------------------------

struct BootstrapCi {
  double estimate = 0.0;
  double lo = 0.0, hi = 0.0;
  double se = 0.0;  // standard deviation of the resample statistics
};

BootstrapCi bootstrap_ci(const std::vector<double>& samples,
                         const std::function<double(const std::vector<double>&)>& stat,
                         int64_t resamples = 10'000, double level = 0.95, uint64_t seed = 1);

// ---- totally skewed stable sampler ------------------------------------------
//
// Z_{alpha,b} has log-characteristic function
//   -b|u|^alpha (1 - i tan(pi alpha/2) sign u)      for alpha != 1,
//   -b|u| (1 + (2i/pi) log|u| sign u)               for alpha = 1,
// i.e. skewness +1 with scale sigma = b^{1/alpha} in the common S(sigma,1,0;1)
// convention; alpha = 2 is the centered normal with variance 2b. Sampling is
// the Chambers-Mallows-Stuck trigonometric transform, with the alpha = 1
// logarithmic shift handled when rescaling to b.

struct StableParams {
  double alpha = 1.5;  // in (0, 2]
  double b = 1.0;      // positive scale
};

double sample_stable(const StableParams& params, Rng& rng);
std::complex<double> stable_cf(const StableParams& params, double u);

// standard normal CDF (for Gaussian-regime KS checks)
double normal_cdf(double x);

}  // namespace erw
