#pragma once
// Cookie environments: stack models, lazy per-site realization, the delta
// parameter and its phase classification.
//
// Direction indexing convention (fixed, total-ordered): index 2*(axis-1) is
// +e_axis, index 2*(axis-1)+1 is -e_axis. In d=1 that means probs[0] = right,
// probs[1] = left.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "erw/rng.hpp"

namespace erw {

inline constexpr int kMaxDim = 8;

struct Direction {
  int axis;  // 1..d
  int sign;  // +1 / -1
};
inline Direction direction_of(int index) { return {index / 2 + 1, (index % 2 == 0) ? +1 : -1}; }
inline int direction_index(Direction dir) { return 2 * (dir.axis - 1) + (dir.sign > 0 ? 0 : 1); }

// site coordinates, fixed-capacity so hash-map keys never allocate
struct Site {
  std::array<int32_t, kMaxDim> c{};
  bool operator==(const Site&) const = default;
  int32_t& operator[](size_t a) { return c[a]; }
  int32_t operator[](size_t a) const { return c[a]; }
};
inline Site site1(int64_t x) {
  Site s;
  s.c[0] = (int32_t)x;
  return s;
}
struct SiteHash {
  size_t operator()(const Site& s) const {
    uint64_t h = 0x5149'4f4e'4b45'5953ull;
    for (int a = 0; a < kMaxDim; ++a) h = seed_combine(h, (uint64_t)(int64_t)s.c[a]);
    return (size_t)h;
  }
};

// ---- cookies and stacks ------------------------------------------------

struct Cookie {
  std::vector<double> probs;  // size 2d, direction-indexed as above

  double right() const { return probs[0]; }  // d=1 convenience
};

Cookie placebo_cookie(int d);
Cookie right_left_cookie(double p_right);  // d=1: (p, 1-p)
void validate_cookie(const Cookie& c);     // sum 1 +- 1e-12, entries >= 0

// Tail rules beyond the finite prefix.
//   Placebo: uniform cookie forever.
//   RepeatLast: the last prefix cookie repeats forever (counterexample demos).
//   GeometricExtremum: at visit i (> prefix length) the cookie puts
//     1 - amplitude*ratio^i on direction dir_index and the rest on the
//     opposite direction (d=1). The deviation sums to a finite value, which is
//     exactly what the trapping construction needs.
struct PlaceboTail {};
struct RepeatLastTail {};
struct GeometricExtremumTail {
  int dir_index;
  double amplitude;
  double ratio;
};
using TailRule = std::variant<PlaceboTail, RepeatLastTail, GeometricExtremumTail>;

struct CookieStack {
  std::vector<Cookie> prefix;  // trailing placebos trimmed on construction
  TailRule tail;

  // effective cookie count M(z); -1 means infinite (non-placebo tail)
  int64_t effective_cookies() const;
};

CookieStack make_stack(std::vector<Cookie> prefix, TailRule tail, int d);
Cookie stack_cookie_at(const CookieStack& s, int64_t visit, int d);

// ---- stack models --------------------------------------------------------

// first visit biased along e1 with strength p, placebo afterwards (any d)
struct BWModel {
  int d = 1;
  double p = 0.75;
};

// deterministic prefix of right-probabilities, placebo tail (d=1);
// omega_{p,M} is M copies of p
struct HomogeneousModel {
  std::vector<double> right;  // prefix right-probabilities
};
HomogeneousModel homog_pm(double p, int m);

// i.i.d. site stacks drawn from finitely many atoms (d=1)
struct BoundedIIDModel {
  struct Atom {
    double weight;
    std::vector<double> right;  // prefix right-probabilities, length <= M
  };
  std::vector<Atom> atoms;

  int64_t max_cookies() const;
};

// each site independently an eventual right-pusher (omega(z,1,i)=1-eps*2^-i)
// with probability mix, else the mirrored left-pusher (d=1)
struct TrappingModel {
  double eps = 0.25;  // in (0, 1/2)
  double mix = 0.5;   // in (0, 1)
};

// "have your cookie and eat it": site jumps right with probability q(x) until
// its first left jump, fair afterwards. Realized as a stack with geometric
// height M_x ~ Geom(1-q) on {1,2,...}: right-degenerate below M_x,
// left-degenerate at M_x, placebo beyond. q(x) drawn i.i.d. from finitely
// many atoms. (d=1)
struct HaveYourCookieModel {
  struct Atom {
    double weight;
    double q;  // in [1/2, 1)
  };
  std::vector<Atom> atoms;
};

// walk perturbed at extrema: geometric stack heights, sign-dependent laws.
// For z >= 1, P[M_z = k] = p(1-p)^{k-1}; for z <= -1 the parameter is q;
// M_0 = 0. Cookie values: for z > 0 the first M_z - 1 cookies are
// left-degenerate and the M_z-th is right-degenerate; mirrored for z < 0;
// placebo beyond. Not spatially i.i.d., so delta/classify are advisory here.
struct PerturbedExtremaModel {
  double p = 0.5;  // in (0, 1]
  double q = 0.5;  // in (0, 1]
};

using StackModel = std::variant<BWModel, HomogeneousModel, BoundedIIDModel, TrappingModel,
                                HaveYourCookieModel, PerturbedExtremaModel>;

int dimension(const StackModel& m);
std::string model_id(const StackModel& m);
void validate_model(const StackModel& m);  // throws std::invalid_argument

// ---- lazy site realization ----------------------------------------------
//
// A realized site is (model, aux) where aux is the per-site random choice:
// BoundedIID atom index, trapping pusher sign, have-your-cookie (atom, M_x),
// perturbed-extrema M_z. Deterministic models use aux = 0. aux is a pure
// function of (env seed, site), so realization order never matters.

bool model_needs_aux(const StackModel& m);
uint64_t realize_aux(const StackModel& m, int64_t site, uint64_t env_seed);

// draw an aux directly from a stream (an i.i.d. copy of the stack law, not
// tied to a lattice site); the site-seeded realize_aux delegates here
uint64_t realize_aux_rng(const StackModel& m, Rng& rng);

// Per-model right-probabilities of the visit-th cookie at a d=1 site. These
// are the single source of truth for the site laws: the generic environment,
// the branching trials and the templated walk kernel all inline the same
// functions, so their cookies agree bit for bit.
inline double right_prob_of(const BWModel& m, uint64_t, int64_t, int64_t visit) {
  return visit == 1 ? m.p : 0.5;
}
inline double right_prob_of(const HomogeneousModel& m, uint64_t, int64_t, int64_t visit) {
  return visit <= (int64_t)m.right.size() ? m.right[(size_t)visit - 1] : 0.5;
}
inline double right_prob_of(const BoundedIIDModel& m, uint64_t aux, int64_t, int64_t visit) {
  const auto& r = m.atoms[(size_t)aux].right;
  return visit <= (int64_t)r.size() ? r[(size_t)visit - 1] : 0.5;
}
inline double right_prob_of(const TrappingModel& m, uint64_t aux, int64_t, int64_t visit) {
  // eps * 2^-visit, exact scaling until it underflows to zero
  double dev = visit < 1080 ? std::ldexp(m.eps, -(int)visit) : 0.0;
  return aux ? 1.0 - dev : dev;
}
inline double right_prob_of(const HaveYourCookieModel&, uint64_t aux, int64_t, int64_t visit) {
  int64_t height = (int64_t)(aux & ((1ull << 48) - 1));
  if (visit < height) return 1.0;
  if (visit == height) return 0.0;
  return 0.5;
}
inline double right_prob_of(const PerturbedExtremaModel&, uint64_t aux, int64_t site, int64_t visit) {
  int64_t height = (int64_t)aux;
  if (site == 0 || visit > height) return 0.5;
  if (site > 0) return visit == height ? 1.0 : 0.0;
  return visit == height ? 0.0 : 1.0;
}

// variant dispatcher over right_prob_of
double site_right_prob(const StackModel& m, uint64_t aux, int64_t site, int64_t visit);

// full cookie for any dimension
Cookie site_cookie(const StackModel& m, uint64_t aux, const Site& site, int64_t visit);

// materialized stack (tests, delta Monte Carlo); draws aux from env_seed
CookieStack realize_stack(const StackModel& m, int64_t site, uint64_t env_seed);

// ---- delta and phases -----------------------------------------------------

struct NonSummableDrift : std::runtime_error {
  NonSummableDrift() : std::runtime_error("cookie drift series diverges without a uniform sign") {}
};

// expected total stack drift at the origin, one entry per axis; +-infinity
// allowed when the sign is uniform
std::vector<double> delta_closed(const StackModel& m);
double delta_scalar(const StackModel& m);  // e1 component

struct DeltaEstimate {
  std::vector<double> value;
  std::vector<double> se;
};
DeltaEstimate delta_mc(const StackModel& m, int64_t n_stacks, uint64_t seed);

enum class Transience { recurrent, transient_right, transient_left };
enum class SpeedSign { zero, positive, negative, unknown };
struct Phase {
  Transience transience;
  SpeedSign speed;
};
Phase classify_phase(double delta);
std::string phase_string(Phase ph);

// ---- environment -----------------------------------------------------------

// Per-replica cookie environment with lazy per-site realization. This is the
// general-purpose (any d) implementation; the d=1 walk kernel keeps its own
// flat arrays but derives cookies from the same site_right_prob / realize_aux
// functions, so both agree bit for bit.
class Environment {
 public:
  Environment(StackModel model, uint64_t env_seed);

  int dim() const { return d_; }
  const StackModel& model() const { return model_; }
  uint64_t seed() const { return env_seed_; }

  // pure query, 1-based visit index; caches the site's aux on first touch
  Cookie cookie_at(const Site& site, int64_t visit);
  double right_prob_at(int64_t site, int64_t visit);  // d=1

  // consumption counter (used by the generic walk)
  int64_t visits_consumed(const Site& site) const;
  int64_t consume(const Site& site);  // ++count, returns the visit index just used

  uint64_t aux_of(const Site& site);

 private:
  struct SiteState {
    int64_t visits = 0;
    uint64_t aux = 0;
    bool realized = false;
  };
  StackModel model_;
  uint64_t env_seed_;
  int d_;
  std::unordered_map<Site, SiteState, SiteHash> sites_;
};

// leftover environment view: cookie_at(z, i) = base.cookie_at(z, i + visits of
// path to z); the base environment is not modified
class LeftoverEnv {
 public:
  LeftoverEnv(Environment& base, const std::vector<Site>& path);
  Cookie cookie_at(const Site& site, int64_t visit);
  int64_t offset(const Site& site) const;

 private:
  Environment& base_;
  std::unordered_map<Site, int64_t, SiteHash> consumed_;
};

}  // namespace erw
