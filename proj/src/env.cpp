#include "erw/env.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace erw {

// ---- cookies ---------------------------------------------------------------

Cookie placebo_cookie(int d) {
  Cookie c;
  c.probs.assign((size_t)(2 * d), 1.0 / (2.0 * d));
  return c;
}

Cookie right_left_cookie(double p_right) {
  Cookie c;
  c.probs = {p_right, 1.0 - p_right};
  return c;
}

void validate_cookie(const Cookie& c) {
  if (c.probs.empty() || c.probs.size() % 2 != 0)
    throw std::invalid_argument("cookie needs 2d direction probabilities");
  double sum = 0;
  for (double p : c.probs) {
    if (!(p >= 0.0) || !(p <= 1.0)) throw std::invalid_argument("cookie probability outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("cookie probabilities must sum to 1");
}

static bool is_placebo(const Cookie& c) {
  double u = 1.0 / (double)c.probs.size();
  for (double p : c.probs)
    if (std::abs(p - u) > 1e-12) return false;
  return true;
}

int64_t CookieStack::effective_cookies() const {
  if (std::holds_alternative<PlaceboTail>(tail)) return (int64_t)prefix.size();
  if (std::holds_alternative<RepeatLastTail>(tail)) {
    if (prefix.empty() || is_placebo(prefix.back())) return (int64_t)prefix.size();
    return -1;
  }
  return -1;  // geometric extremum tail never becomes placebo
}

CookieStack make_stack(std::vector<Cookie> prefix, TailRule tail, int d) {
  for (const Cookie& c : prefix) {
    if ((int)c.probs.size() != 2 * d) throw std::invalid_argument("cookie dimension mismatch");
    validate_cookie(c);
  }
  if (std::holds_alternative<PlaceboTail>(tail))
    while (!prefix.empty() && is_placebo(prefix.back())) prefix.pop_back();
  if (const auto* g = std::get_if<GeometricExtremumTail>(&tail)) {
    if (d != 1) throw std::invalid_argument("geometric extremum tails are one-dimensional");
    if (g->dir_index < 0 || g->dir_index > 1) throw std::invalid_argument("bad tail direction");
    if (!(g->amplitude > 0.0) || !(g->amplitude < 1.0))
      throw std::invalid_argument("tail amplitude must be in (0,1)");
    if (!(g->ratio > 0.0) || !(g->ratio < 1.0))
      throw std::invalid_argument("tail ratio must be in (0,1)");
  }
  return CookieStack{std::move(prefix), tail};
}

Cookie stack_cookie_at(const CookieStack& s, int64_t visit, int d) {
  if (visit < 1) throw std::invalid_argument("visit indices start at 1");
  if (visit <= (int64_t)s.prefix.size()) return s.prefix[(size_t)visit - 1];
  if (const auto* g = std::get_if<GeometricExtremumTail>(&s.tail)) {
    double dev = g->amplitude * std::pow(g->ratio, (double)visit);
    Cookie c;
    c.probs.assign(2, 0.0);
    c.probs[(size_t)g->dir_index] = 1.0 - dev;
    c.probs[(size_t)(g->dir_index ^ 1)] = dev;
    return c;
  }
  if (std::holds_alternative<RepeatLastTail>(s.tail) && !s.prefix.empty()) return s.prefix.back();
  return placebo_cookie(d);
}

// ---- models ------------------------------------------------------------------

HomogeneousModel homog_pm(double p, int m) {
  return HomogeneousModel{std::vector<double>((size_t)m, p)};
}

int64_t BoundedIIDModel::max_cookies() const {
  size_t mx = 0;
  for (const auto& a : atoms) mx = std::max(mx, a.right.size());
  return (int64_t)mx;
}

int dimension(const StackModel& m) {
  if (const auto* bw = std::get_if<BWModel>(&m)) return bw->d;
  return 1;
}

static std::string join_g(const std::vector<double>& v, char sep) {
  std::string out;
  char buf[64];
  for (size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%g", v[i]);
    if (i) out += sep;
    out += buf;
  }
  return out;
}

std::string model_id(const StackModel& m) {
  char buf[256];
  if (const auto* bw = std::get_if<BWModel>(&m)) {
    std::snprintf(buf, sizeof buf, "bw(d=%d,p=%g)", bw->d, bw->p);
    return buf;
  }
  if (const auto* h = std::get_if<HomogeneousModel>(&m)) {
    if (h->right.empty()) return "placebo";
    bool uniform = std::all_of(h->right.begin(), h->right.end(),
                               [&](double p) { return p == h->right[0]; });
    if (uniform) {
      std::snprintf(buf, sizeof buf, "homogeneous(p=%g,M=%zu)", h->right[0], h->right.size());
      return buf;
    }
    return "homogeneous(prefix=" + join_g(h->right, ',') + ")";
  }
  if (const auto* b = std::get_if<BoundedIIDModel>(&m)) {
    std::string out = "bounded_iid(";
    for (size_t i = 0; i < b->atoms.size(); ++i) {
      if (i) out += '|';
      std::snprintf(buf, sizeof buf, "%g:", b->atoms[i].weight);
      out += buf;
      out += join_g(b->atoms[i].right, ',');
    }
    return out + ")";
  }
  if (const auto* t = std::get_if<TrappingModel>(&m)) {
    std::snprintf(buf, sizeof buf, "trapping(eps=%g,mix=%g)", t->eps, t->mix);
    return buf;
  }
  if (const auto* h = std::get_if<HaveYourCookieModel>(&m)) {
    std::string out = "have_your_cookie(";
    for (size_t i = 0; i < h->atoms.size(); ++i) {
      if (i) out += '|';
      std::snprintf(buf, sizeof buf, "%g:%g", h->atoms[i].weight, h->atoms[i].q);
      out += buf;
    }
    return out + ")";
  }
  const auto& pe = std::get<PerturbedExtremaModel>(m);
  std::snprintf(buf, sizeof buf, "perturbed_extrema(p=%g,q=%g)", pe.p, pe.q);
  return buf;
}

void validate_model(const StackModel& m) {
  if (const auto* bw = std::get_if<BWModel>(&m)) {
    if (bw->d < 1 || bw->d > kMaxDim) throw std::invalid_argument("bw dimension out of range");
    if (!(bw->p >= 0.5) || !(bw->p <= 1.0))
      throw std::invalid_argument("bw excitement p must be in [1/2, 1]");
    return;
  }
  if (const auto* h = std::get_if<HomogeneousModel>(&m)) {
    for (double p : h->right)
      if (!(p >= 0.0) || !(p <= 1.0)) throw std::invalid_argument("prefix probability outside [0,1]");
    return;
  }
  if (const auto* b = std::get_if<BoundedIIDModel>(&m)) {
    if (b->atoms.empty()) throw std::invalid_argument("bounded_iid needs at least one atom");
    double wsum = 0;
    for (const auto& a : b->atoms) {
      if (!(a.weight > 0.0)) throw std::invalid_argument("atom weights must be positive");
      wsum += a.weight;
      for (double p : a.right)
        if (!(p >= 0.0) || !(p <= 1.0)) throw std::invalid_argument("atom probability outside [0,1]");
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw std::invalid_argument("atom weights must sum to 1");
    return;
  }
  if (const auto* t = std::get_if<TrappingModel>(&m)) {
    if (!(t->eps > 0.0) || !(t->eps < 0.5)) throw std::invalid_argument("trapping eps must be in (0,1/2)");
    if (!(t->mix >= 0.0) || !(t->mix <= 1.0)) throw std::invalid_argument("trapping mix must be in [0,1]");
    return;
  }
  if (const auto* h = std::get_if<HaveYourCookieModel>(&m)) {
    if (h->atoms.empty()) throw std::invalid_argument("have_your_cookie needs at least one atom");
    double wsum = 0;
    for (const auto& a : h->atoms) {
      if (!(a.weight > 0.0)) throw std::invalid_argument("atom weights must be positive");
      wsum += a.weight;
      if (!(a.q >= 0.5) || !(a.q < 1.0)) throw std::invalid_argument("q must be in [1/2, 1)");
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw std::invalid_argument("atom weights must sum to 1");
    return;
  }
  const auto& pe = std::get<PerturbedExtremaModel>(m);
  if (!(pe.p > 0.0) || !(pe.p <= 1.0) || !(pe.q > 0.0) || !(pe.q <= 1.0))
    throw std::invalid_argument("perturbed_extrema parameters must be in (0,1]");
}

// ---- lazy realization ----------------------------------------------------------

bool model_needs_aux(const StackModel& m) {
  return !std::holds_alternative<BWModel>(m) && !std::holds_alternative<HomogeneousModel>(m);
}

// M >= 1 with P[M > k] = ratio^k
static int64_t sample_geometric_ratio(Rng& rng, double ratio) {
  if (!(ratio > 0.0)) return 1;
  double u = rng.unit_open();
  return 1 + (int64_t)std::floor(std::log(u) / std::log(ratio));
}

static uint64_t pick_weighted(Rng& rng, const double* weights, size_t n) {
  double u = rng.unit();
  double acc = 0;
  for (size_t i = 0; i + 1 < n; ++i) {
    acc += weights[i];
    if (u < acc) return (uint64_t)i;
  }
  return (uint64_t)(n - 1);
}

uint64_t realize_aux_rng(const StackModel& m, Rng& rng) {
  if (const auto* b = std::get_if<BoundedIIDModel>(&m)) {
    std::vector<double> w(b->atoms.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = b->atoms[i].weight;
    return pick_weighted(rng, w.data(), w.size());
  }
  if (const auto* t = std::get_if<TrappingModel>(&m)) return rng.unit() < t->mix ? 1u : 0u;
  if (const auto* h = std::get_if<HaveYourCookieModel>(&m)) {
    std::vector<double> w(h->atoms.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = h->atoms[i].weight;
    uint64_t atom = pick_weighted(rng, w.data(), w.size());
    int64_t height = sample_geometric_ratio(rng, h->atoms[(size_t)atom].q);
    return (atom << 48) | (uint64_t)height;
  }
  if (const auto* pe = std::get_if<PerturbedExtremaModel>(&m))
    return (uint64_t)sample_geometric_ratio(rng, 1.0 - pe->p);
  return 0;  // deterministic stacks
}

uint64_t realize_aux(const StackModel& m, int64_t site, uint64_t env_seed) {
  Rng rng(site_seed(env_seed, site));
  if (const auto* pe = std::get_if<PerturbedExtremaModel>(&m)) {
    if (site == 0) return 0;  // M_0 = 0
    double p = site > 0 ? pe->p : pe->q;
    return (uint64_t)sample_geometric_ratio(rng, 1.0 - p);
  }
  return realize_aux_rng(m, rng);
}

double site_right_prob(const StackModel& m, uint64_t aux, int64_t site, int64_t visit) {
  return std::visit([&](const auto& mm) { return right_prob_of(mm, aux, site, visit); }, m);
}

Cookie site_cookie(const StackModel& m, uint64_t aux, const Site& site, int64_t visit) {
  if (const auto* bw = std::get_if<BWModel>(&m)) {
    int d = bw->d;
    if (visit > 1) return placebo_cookie(d);
    Cookie c = placebo_cookie(d);
    c.probs[0] = bw->p / d;
    c.probs[1] = (1.0 - bw->p) / d;
    return c;
  }
  return right_left_cookie(site_right_prob(m, aux, (int64_t)site.c[0], visit));
}

CookieStack realize_stack(const StackModel& m, int64_t site, uint64_t env_seed) {
  uint64_t aux = model_needs_aux(m) ? realize_aux(m, site, env_seed) : 0;
  if (const auto* t = std::get_if<TrappingModel>(&m))
    return make_stack({}, GeometricExtremumTail{aux ? 0 : 1, t->eps, 0.5}, 1);

  int64_t len = 0;
  if (std::holds_alternative<BWModel>(m))
    len = 1;
  else if (const auto* h = std::get_if<HomogeneousModel>(&m))
    len = (int64_t)h->right.size();
  else if (const auto* b = std::get_if<BoundedIIDModel>(&m))
    len = (int64_t)b->atoms[(size_t)aux].right.size();
  else if (std::holds_alternative<HaveYourCookieModel>(m))
    len = (int64_t)(aux & ((1ull << 48) - 1));
  else
    len = (int64_t)aux;  // perturbed extrema height

  std::vector<Cookie> prefix;
  prefix.reserve((size_t)len);
  int d = dimension(m);
  Site s = site1(site);
  for (int64_t i = 1; i <= len; ++i) prefix.push_back(site_cookie(m, aux, s, i));
  return make_stack(std::move(prefix), PlaceboTail{}, d);
}

// ---- delta ----------------------------------------------------------------------

std::vector<double> delta_closed(const StackModel& m) {
  if (const auto* bw = std::get_if<BWModel>(&m)) {
    std::vector<double> v((size_t)bw->d, 0.0);
    v[0] = (2.0 * bw->p - 1.0) / (double)bw->d;
    return v;
  }
  if (const auto* h = std::get_if<HomogeneousModel>(&m)) {
    double acc = 0;
    for (double p : h->right) acc += 2.0 * p - 1.0;
    return {acc};
  }
  if (const auto* b = std::get_if<BoundedIIDModel>(&m)) {
    double acc = 0;
    for (const auto& a : b->atoms) {
      double s = 0;
      for (double p : a.right) s += 2.0 * p - 1.0;
      acc += a.weight * s;
    }
    return {acc};
  }
  if (const auto* t = std::get_if<TrappingModel>(&m)) {
    if (t->mix == 1.0) return {std::numeric_limits<double>::infinity()};
    if (t->mix == 0.0) return {-std::numeric_limits<double>::infinity()};
    throw NonSummableDrift();
  }
  if (const auto* h = std::get_if<HaveYourCookieModel>(&m)) {
    // per-stack drift is (M-1) - 1 = M - 2 with E M = 1/(1-q)
    double acc = 0;
    for (const auto& a : h->atoms) acc += a.weight * (1.0 / (1.0 - a.q) - 2.0);
    return {acc};
  }
  // perturbed extrema: advisory positive-side value 2 - E M = 2 - 1/p
  // (the environment is not spatially i.i.d., so this is not a phase-diagram
  // parameter; it matches the Monte Carlo convention below)
  const auto& pe = std::get<PerturbedExtremaModel>(m);
  return {2.0 - 1.0 / pe.p};
}

double delta_scalar(const StackModel& m) { return delta_closed(m)[0]; }

// total drift of one sampled stack
static double stack_drift_sample(const StackModel& m, Rng& rng) {
  if (const auto* h = std::get_if<HomogeneousModel>(&m)) {
    double acc = 0;
    for (double p : h->right) acc += 2.0 * p - 1.0;
    return acc;
  }
  uint64_t aux = realize_aux_rng(m, rng);
  if (const auto* b = std::get_if<BoundedIIDModel>(&m)) {
    double acc = 0;
    for (double p : b->atoms[(size_t)aux].right) acc += 2.0 * p - 1.0;
    return acc;
  }
  if (std::holds_alternative<HaveYourCookieModel>(m))
    return (double)(int64_t)(aux & ((1ull << 48) - 1)) - 2.0;
  // perturbed extrema, positive-side stacks: M-1 sure-left cookies + 1 sure-right
  return 2.0 - (double)(int64_t)aux;
}

DeltaEstimate delta_mc(const StackModel& m, int64_t n_stacks, uint64_t seed) {
  if (n_stacks < 1) throw std::invalid_argument("need at least one stack");
  // models whose sampled stacks are deterministic or divergent take the closed
  // form (this also reproduces the NonSummableDrift error semantics)
  if (std::holds_alternative<TrappingModel>(m) || std::holds_alternative<BWModel>(m)) {
    std::vector<double> v = delta_closed(m);
    return {v, std::vector<double>(v.size(), 0.0)};
  }
  Rng rng(seed_combine(seed, kStreamStats));
  double acc = 0, acc2 = 0;
  for (int64_t i = 0; i < n_stacks; ++i) {
    double d = stack_drift_sample(m, rng);
    acc += d;
    acc2 += d * d;
  }
  double mean = acc / (double)n_stacks;
  double var = std::max(0.0, acc2 / (double)n_stacks - mean * mean);
  return {{mean}, {std::sqrt(var / (double)n_stacks)}};
}

Phase classify_phase(double delta) {
  if (delta > 2.0) return {Transience::transient_right, SpeedSign::positive};
  if (delta > 1.0) return {Transience::transient_right, SpeedSign::zero};
  if (delta >= -1.0) return {Transience::recurrent, SpeedSign::zero};
  if (delta >= -2.0) return {Transience::transient_left, SpeedSign::zero};
  return {Transience::transient_left, SpeedSign::negative};
}

std::string phase_string(Phase ph) {
  std::string t = ph.transience == Transience::recurrent          ? "recurrent"
                  : ph.transience == Transience::transient_right  ? "transient_right"
                                                                  : "transient_left";
  std::string s = ph.speed == SpeedSign::zero       ? "zero"
                  : ph.speed == SpeedSign::positive ? "positive"
                  : ph.speed == SpeedSign::negative ? "negative"
                                                    : "unknown";
  return t + " / " + s + " speed";
}

// ---- environment ------------------------------------------------------------------

Environment::Environment(StackModel model, uint64_t env_seed)
    : model_(std::move(model)), env_seed_(env_seed), d_(dimension(model_)) {
  validate_model(model_);
}

Cookie Environment::cookie_at(const Site& site, int64_t visit) {
  return site_cookie(model_, aux_of(site), site, visit);
}

double Environment::right_prob_at(int64_t site, int64_t visit) {
  return site_right_prob(model_, aux_of(site1(site)), site, visit);
}

int64_t Environment::visits_consumed(const Site& site) const {
  auto it = sites_.find(site);
  return it == sites_.end() ? 0 : it->second.visits;
}

int64_t Environment::consume(const Site& site) { return ++sites_[site].visits; }

uint64_t Environment::aux_of(const Site& site) {
  if (!model_needs_aux(model_)) return 0;
  SiteState& st = sites_[site];
  if (!st.realized) {
    if (d_ == 1) {
      st.aux = realize_aux(model_, (int64_t)site.c[0], env_seed_);
    } else {
      Rng rng(site_seed(env_seed_, site.c.data(), d_));
      st.aux = realize_aux_rng(model_, rng);
    }
    st.realized = true;
  }
  return st.aux;
}

LeftoverEnv::LeftoverEnv(Environment& base, const std::vector<Site>& path) : base_(base) {
  for (const Site& s : path) consumed_[s] += 1;
}

Cookie LeftoverEnv::cookie_at(const Site& site, int64_t visit) {
  return base_.cookie_at(site, visit + offset(site));
}

int64_t LeftoverEnv::offset(const Site& site) const {
  auto it = consumed_.find(site);
  return it == consumed_.end() ? 0 : it->second;
}

}  // namespace erw
