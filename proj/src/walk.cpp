#include "erw/walk.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace erw {

namespace {

constexpr uint64_t kAuxUnset = ~0ull;

// two-sided growable per-level storage; nearest-neighbour moves grow the
// boundary one slot at a time, so at() stays amortized O(1)
template <class T>
struct LevelVec {
  std::vector<T> pos, neg;
  T init{};

  T& at(int64_t k) {
    if (k >= 0) {
      if ((size_t)k >= pos.size()) pos.resize((size_t)k + 1, init);
      return pos[(size_t)k];
    }
    size_t i = (size_t)(-k - 1);
    if (i >= neg.size()) neg.resize(i + 1, init);
    return neg[i];
  }

  T get(int64_t k) const {
    if (k >= 0) return (size_t)k < pos.size() ? pos[(size_t)k] : init;
    size_t i = (size_t)(-k - 1);
    return i < neg.size() ? neg[i] : init;
  }
};

template <class M>
struct needs_aux_t : std::true_type {};
template <>
struct needs_aux_t<BWModel> : std::false_type {};
template <>
struct needs_aux_t<HomogeneousModel> : std::false_type {};

int64_t effective_limit(const WalkConfig& cfg) {
  switch (cfg.stop.kind) {
    case StopKind::steps:
      return std::min(cfg.stop.n, cfg.step_cap);
    case StopKind::first_return:
      return cfg.stop.max_steps > 0 ? std::min(cfg.stop.max_steps, cfg.step_cap) : cfg.step_cap;
    default:
      return cfg.step_cap;
  }
}

// d=1 kernel, templated over the concrete model so the site law inlines
template <class M>
Trajectory run_kernel(const M& model, const StackModel& mvar, uint64_t env_seed,
                      const WalkConfig& cfg, uint64_t walk_seed) {
  constexpr bool kAux = needs_aux_t<M>::value;
  const StopRule& stop = cfg.stop;
  const RecordFlags& rec = cfg.record;
  const bool want_drift = rec.drift_series || rec.drift_final;

  Trajectory tr;
  tr.d = 1;
  tr.seed = walk_seed;
  Rng rng(walk_seed);

  int64_t x = cfg.start_x;
  tr.max_x = tr.min_x = x;
  int64_t distinct = 0;       // counted at first consumption; final site fixed up below
  int64_t last_growth = 0;
  int64_t xi = 0;
  double drift = 0.0;

  LevelVec<int32_t> visits;
  LevelVec<uint64_t> aux;
  aux.init = kAuxUnset;
  LevelVec<int64_t> jup, jdn, hit;
  hit.init = -1;

  if (rec.full_path) {
    if (stop.kind == StopKind::steps) tr.path.reserve((size_t)stop.n + 1);
    tr.path.push_back(x);
  }
  if (rec.drift_series) tr.drift_series.push_back(0.0);
  if (rec.hit_times) hit.at(x) = 0;

  const int64_t limit = effective_limit(cfg);
  int64_t next_cp = rec.checkpoint_stride > 0 ? rec.checkpoint_stride
                                              : std::numeric_limits<int64_t>::max();

  int64_t t = 0;
  tr.outcome = WalkOutcome::completed;

  // stop rules that can be satisfied before any step
  bool done = (stop.kind == StopKind::hit_level && x == stop.level) ||
              (stop.kind == StopKind::hit_either && (x == stop.level_lo || x == stop.level));

  while (!done) {
    if (stop.kind == StopKind::steps && t == stop.n) break;
    if (t == limit) {
      if (stop.kind == StopKind::steps)
        tr.outcome = WalkOutcome::cap_exceeded;
      else if (stop.kind == StopKind::first_return)
        tr.outcome = WalkOutcome::not_returned;
      else
        tr.outcome = WalkOutcome::cap_exceeded;
      break;
    }

    int32_t& vc = visits.at(x);
    int64_t v = ++vc;
    if (v == 1) {
      ++distinct;
      last_growth = t;
    }
    if (v > xi) xi = v;

    double pr;
    if constexpr (kAux) {
      uint64_t& a = aux.at(x);
      if (a == kAuxUnset) a = realize_aux(mvar, x, env_seed);
      pr = right_prob_of(model, a, x, v);
    } else {
      pr = right_prob_of(model, 0, x, v);
    }

    bool up = rng.unit() < pr;
    if (rec.jumps) (up ? jup.at(x) : jdn.at(x)) += 1;
    if (want_drift) {
      drift += 2.0 * pr - 1.0;
      if (rec.drift_series) tr.drift_series.push_back(drift);
    }

    x += up ? 1 : -1;
    ++t;
    if (x > tr.max_x) tr.max_x = x;
    if (x < tr.min_x) tr.min_x = x;
    if (rec.hit_times) {
      int64_t& h = hit.at(x);
      if (h < 0) h = t;
    }
    if (rec.full_path) tr.path.push_back(x);
    if (t == next_cp) {
      Checkpoint cp;
      cp.time = t;
      cp.x = x;
      cp.pos[0] = (int32_t)x;
      cp.distinct_sites = distinct + (visits.get(x) == 0 ? 1 : 0);
      tr.checkpoints.push_back(cp);
      next_cp += rec.checkpoint_stride;
    }

    switch (stop.kind) {
      case StopKind::hit_level:
        done = x == stop.level;
        break;
      case StopKind::hit_either:
        done = x == stop.level_lo || x == stop.level;
        break;
      case StopKind::first_return:
        if (x == cfg.start_x) {
          tr.outcome = WalkOutcome::returned;
          tr.return_time = t;
          done = true;
        }
        break;
      default:
        break;
    }
  }

  if (stop.kind == StopKind::first_return && tr.outcome == WalkOutcome::completed)
    tr.outcome = (x == cfg.start_x && t > 0) ? WalkOutcome::returned : WalkOutcome::not_returned;

  tr.steps = t;
  tr.x = x;
  tr.pos[0] = (int32_t)x;
  if (visits.get(x) == 0) {
    ++distinct;
    last_growth = t;
  }
  tr.distinct_sites = distinct;
  tr.last_range_growth = last_growth;
  tr.xi_star = std::max<int64_t>(xi, (int64_t)visits.get(x) + 1);
  tr.drift_final = drift;

  if (rec.jumps || rec.hit_times || rec.local_times) {
    tr.level_lo = tr.min_x;
    tr.level_hi = tr.max_x;
    size_t span = (size_t)(tr.max_x - tr.min_x + 1);
    if (rec.jumps) {
      tr.jumps_up.resize(span);
      tr.jumps_down.resize(span);
      for (int64_t k = tr.min_x; k <= tr.max_x; ++k) {
        tr.jumps_up[(size_t)(k - tr.min_x)] = jup.get(k);
        tr.jumps_down[(size_t)(k - tr.min_x)] = jdn.get(k);
      }
    }
    if (rec.hit_times) {
      tr.hit_time.resize(span);
      for (int64_t k = tr.min_x; k <= tr.max_x; ++k)
        tr.hit_time[(size_t)(k - tr.min_x)] = hit.get(k);
    }
    if (rec.local_times) {
      tr.local_times.resize(span);
      for (int64_t k = tr.min_x; k <= tr.max_x; ++k)
        tr.local_times[(size_t)(k - tr.min_x)] = (int64_t)visits.get(k) + (k == x ? 1 : 0);
    }
  }
  return tr;
}

int sample_direction(const std::vector<double>& probs, double u) {
  double acc = 0;
  for (size_t j = 0; j + 1 < probs.size(); ++j) {
    acc += probs[j];
    if (u < acc) return (int)j;
  }
  return (int)probs.size() - 1;
}

// generic d >= 2 loop (first-visit excitement only needs visit counts)
Trajectory run_bw_nd(const BWModel& bw, uint64_t env_seed, const WalkConfig& cfg,
                     uint64_t walk_seed) {
  (void)env_seed;  // the bw environment has no random component
  const int d = bw.d;
  const StopRule& stop = cfg.stop;
  const RecordFlags& rec = cfg.record;
  if (rec.jumps || rec.hit_times || rec.local_times)
    throw std::invalid_argument("per-level records are one-dimensional");
  if (stop.axis < 1 || stop.axis > d) throw std::invalid_argument("stop axis out of range");

  Trajectory tr;
  tr.d = d;
  tr.seed = walk_seed;
  Rng rng(walk_seed);

  std::vector<double> first(2 * (size_t)d, 1.0 / (2.0 * d)), placebo(2 * (size_t)d, 1.0 / (2.0 * d));
  first[0] = bw.p / d;
  first[1] = (1.0 - bw.p) / d;

  Site pos{};
  pos.c[0] = (int32_t)cfg.start_x;
  const Site start = pos;
  std::unordered_map<Site, int32_t, SiteHash> visits;
  if (stop.kind == StopKind::steps) visits.reserve((size_t)std::min<int64_t>(stop.n + 1, 1 << 21));

  auto proj = [&](const Site& s) { return (int64_t)s.c[stop.axis - 1]; };
  int64_t x1 = pos.c[0];
  tr.max_x = tr.min_x = x1;
  int64_t distinct = 0, last_growth = 0, xi = 0;
  double drift = 0.0;
  const bool want_drift = rec.drift_series || rec.drift_final;

  if (rec.full_path) {
    for (int a = 0; a < d; ++a) tr.path_nd.push_back(pos.c[a]);
  }
  if (rec.drift_series) tr.drift_series.push_back(0.0);

  const int64_t limit = effective_limit(cfg);
  int64_t next_cp = rec.checkpoint_stride > 0 ? rec.checkpoint_stride
                                              : std::numeric_limits<int64_t>::max();
  int64_t t = 0;
  tr.outcome = WalkOutcome::completed;
  bool done = (stop.kind == StopKind::hit_level && proj(pos) == stop.level) ||
              (stop.kind == StopKind::hit_either &&
               (proj(pos) == stop.level_lo || proj(pos) == stop.level));

  while (!done) {
    if (stop.kind == StopKind::steps && t == stop.n) break;
    if (t == limit) {
      tr.outcome = stop.kind == StopKind::first_return ? WalkOutcome::not_returned
                                                       : WalkOutcome::cap_exceeded;
      break;
    }
    int32_t& vc = visits[pos];
    int64_t v = ++vc;
    if (v == 1) {
      ++distinct;
      last_growth = t;
    }
    if (v > xi) xi = v;
    const std::vector<double>& probs = v == 1 ? first : placebo;
    if (want_drift) {
      drift += probs[0] - probs[1];
      if (rec.drift_series) tr.drift_series.push_back(drift);
    }
    int dir = sample_direction(probs, rng.unit());
    int axis = dir / 2;
    pos.c[axis] += (dir % 2 == 0) ? 1 : -1;
    ++t;
    x1 = pos.c[0];
    if (x1 > tr.max_x) tr.max_x = x1;
    if (x1 < tr.min_x) tr.min_x = x1;
    if (rec.full_path)
      for (int a = 0; a < d; ++a) tr.path_nd.push_back(pos.c[a]);
    if (t == next_cp) {
      Checkpoint cp;
      cp.time = t;
      cp.x = x1;
      cp.pos = pos.c;
      auto it = visits.find(pos);
      cp.distinct_sites = distinct + ((it == visits.end() || it->second == 0) ? 1 : 0);
      tr.checkpoints.push_back(cp);
      next_cp += rec.checkpoint_stride;
    }
    switch (stop.kind) {
      case StopKind::hit_level:
        done = proj(pos) == stop.level;
        break;
      case StopKind::hit_either:
        done = proj(pos) == stop.level_lo || proj(pos) == stop.level;
        break;
      case StopKind::first_return:
        if (pos == start) {
          tr.outcome = WalkOutcome::returned;
          tr.return_time = t;
          done = true;
        }
        break;
      default:
        break;
    }
  }

  tr.steps = t;
  tr.x = (int64_t)pos.c[0];
  tr.pos = pos.c;
  auto it = visits.find(pos);
  int64_t final_visits = it == visits.end() ? 0 : it->second;
  if (final_visits == 0) {
    ++distinct;
    last_growth = t;
  }
  tr.distinct_sites = distinct;
  tr.last_range_growth = last_growth;
  tr.xi_star = std::max<int64_t>(xi, final_visits + 1);
  tr.drift_final = drift;
  return tr;
}

}  // namespace

Site step(Site position, Environment& env, Rng& rng) {
  int64_t v = env.consume(position);
  Cookie c = env.cookie_at(position, v);
  int dir = sample_direction(c.probs, rng.unit());
  position.c[(size_t)(dir / 2)] += (dir % 2 == 0) ? 1 : -1;
  return position;
}

Trajectory run(const StackModel& model, uint64_t env_seed, const WalkConfig& cfg,
               uint64_t walk_seed) {
  validate_model(model);
  if (dimension(model) == 1)
    return std::visit(
        [&](const auto& m) { return run_kernel(m, model, env_seed, cfg, walk_seed); }, model);
  return run_bw_nd(std::get<BWModel>(model), env_seed, cfg, walk_seed);
}

Trajectory run_in_env(Environment& env, const WalkConfig& cfg, Rng& rng) {
  const int d = env.dim();
  const StopRule& stop = cfg.stop;
  const RecordFlags& rec = cfg.record;
  if (d > 1 && (rec.jumps || rec.hit_times || rec.local_times))
    throw std::invalid_argument("per-level records are one-dimensional");

  Trajectory tr;
  tr.d = d;
  tr.seed = 0;

  Site pos{};
  pos.c[0] = (int32_t)cfg.start_x;
  const Site start = pos;
  int64_t x = cfg.start_x;
  tr.max_x = tr.min_x = x;
  int64_t distinct = 0, last_growth = 0, xi = 0;
  double drift = 0.0;
  const bool want_drift = rec.drift_series || rec.drift_final;

  std::unordered_map<int64_t, int64_t> jup, jdn, hit;
  if (rec.full_path) {
    tr.path.push_back(x);
    if (d > 1)
      for (int a = 0; a < d; ++a) tr.path_nd.push_back(pos.c[a]);
  }
  if (rec.drift_series) tr.drift_series.push_back(0.0);
  if (rec.hit_times) hit[x] = 0;

  const int64_t limit = effective_limit(cfg);
  int64_t next_cp = rec.checkpoint_stride > 0 ? rec.checkpoint_stride
                                              : std::numeric_limits<int64_t>::max();
  int64_t t = 0;
  tr.outcome = WalkOutcome::completed;
  auto proj = [&](const Site& s) { return (int64_t)s.c[stop.axis - 1]; };
  bool done = (stop.kind == StopKind::hit_level && proj(pos) == stop.level) ||
              (stop.kind == StopKind::hit_either &&
               (proj(pos) == stop.level_lo || proj(pos) == stop.level));

  while (!done) {
    if (stop.kind == StopKind::steps && t == stop.n) break;
    if (t == limit) {
      tr.outcome = stop.kind == StopKind::first_return ? WalkOutcome::not_returned
                                                       : WalkOutcome::cap_exceeded;
      break;
    }
    int64_t v = env.consume(pos);
    if (v == 1) {
      ++distinct;
      last_growth = t;
    }
    if (v > xi) xi = v;
    Cookie c = env.cookie_at(pos, v);
    if (want_drift) {
      drift += c.probs[0] - c.probs[1];
      if (rec.drift_series) tr.drift_series.push_back(drift);
    }
    int dir = sample_direction(c.probs, rng.unit());
    bool up1 = d == 1 && dir == 0;
    if (d == 1 && rec.jumps) (up1 ? jup[x] : jdn[x]) += 1;
    pos.c[(size_t)(dir / 2)] += (dir % 2 == 0) ? 1 : -1;
    ++t;
    x = (int64_t)pos.c[0];
    if (x > tr.max_x) tr.max_x = x;
    if (x < tr.min_x) tr.min_x = x;
    if (rec.hit_times && hit.find(x) == hit.end()) hit[x] = t;
    if (rec.full_path) {
      tr.path.push_back(x);
      if (d > 1)
        for (int a = 0; a < d; ++a) tr.path_nd.push_back(pos.c[a]);
    }
    if (t == next_cp) {
      Checkpoint cp;
      cp.time = t;
      cp.x = x;
      cp.pos = pos.c;
      cp.distinct_sites = distinct + (env.visits_consumed(pos) == 0 ? 1 : 0);
      tr.checkpoints.push_back(cp);
      next_cp += rec.checkpoint_stride;
    }
    switch (stop.kind) {
      case StopKind::hit_level:
        done = proj(pos) == stop.level;
        break;
      case StopKind::hit_either:
        done = proj(pos) == stop.level_lo || proj(pos) == stop.level;
        break;
      case StopKind::first_return:
        if (pos == start) {
          tr.outcome = WalkOutcome::returned;
          tr.return_time = t;
          done = true;
        }
        break;
      default:
        break;
    }
  }

  tr.steps = t;
  tr.x = x;
  tr.pos = pos.c;
  int64_t final_visits = env.visits_consumed(pos);
  if (final_visits == 0) {
    ++distinct;
    last_growth = t;
  }
  tr.distinct_sites = distinct;
  tr.last_range_growth = last_growth;
  tr.xi_star = std::max<int64_t>(xi, final_visits + 1);
  tr.drift_final = drift;

  if (d == 1 && (rec.jumps || rec.hit_times || rec.local_times)) {
    tr.level_lo = tr.min_x;
    tr.level_hi = tr.max_x;
    size_t span = (size_t)(tr.max_x - tr.min_x + 1);
    auto fill = [&](std::vector<int64_t>& out, std::unordered_map<int64_t, int64_t>& src,
                    int64_t missing) {
      out.assign(span, missing);
      for (auto& [k, val] : src)
        if (k >= tr.min_x && k <= tr.max_x) out[(size_t)(k - tr.min_x)] = val;
    };
    if (rec.jumps) {
      fill(tr.jumps_up, jup, 0);
      fill(tr.jumps_down, jdn, 0);
    }
    if (rec.hit_times) fill(tr.hit_time, hit, -1);
    if (rec.local_times) {
      tr.local_times.assign(span, 0);
      for (int64_t k = tr.min_x; k <= tr.max_x; ++k)
        tr.local_times[(size_t)(k - tr.min_x)] =
            env.visits_consumed(site1(k)) + (k == x ? 1 : 0);
    }
  }
  return tr;
}

int64_t Trajectory::jump_up_at(int64_t level) const {
  if (level < level_lo || level > level_hi) return 0;
  return jumps_up[(size_t)(level - level_lo)];
}
int64_t Trajectory::jump_down_at(int64_t level) const {
  if (level < level_lo || level > level_hi) return 0;
  return jumps_down[(size_t)(level - level_lo)];
}
int64_t Trajectory::hit_time_at(int64_t level) const {
  if (level < level_lo || level > level_hi) return -1;
  return hit_time[(size_t)(level - level_lo)];
}

// ---- path recounts ---------------------------------------------------------

static int64_t first_hit_index(const std::vector<int64_t>& path, int64_t n) {
  for (size_t t = 0; t < path.size(); ++t)
    if (path[t] == n) return (int64_t)t;
  return -1;
}

JumpIdentityReport jump_identities(const std::vector<int64_t>& path, int64_t n) {
  JumpIdentityReport rep;
  rep.t_n = first_hit_index(path, n);
  if (rep.t_n < 0) {
    rep.ok = false;
    rep.time_identity_ok = false;
    return rep;
  }
  std::unordered_map<int64_t, int64_t> jup, jdn;
  int64_t lo = 0, hi = 0;
  for (int64_t t = 0; t < rep.t_n; ++t) {
    int64_t from = path[(size_t)t];
    if (path[(size_t)t + 1] > from)
      jup[from] += 1;
    else
      jdn[from] += 1;
    lo = std::min(lo, from);
    hi = std::max(hi, from);
  }
  auto get = [](std::unordered_map<int64_t, int64_t>& m, int64_t k) {
    auto it = m.find(k);
    return it == m.end() ? (int64_t)0 : it->second;
  };
  int64_t down_total = 0;
  for (int64_t k = lo - 1; k <= n; ++k) {
    int64_t expect = get(jdn, k + 1) + ((k >= 0 && k < n) ? 1 : 0);
    if (get(jup, k) != expect) ++rep.violations;
    down_total += get(jdn, k);
  }
  rep.time_identity_ok = rep.t_n == n + 2 * down_total;
  rep.ok = rep.violations == 0 && rep.time_identity_ok;
  return rep;
}

JumpIdentityReport jump_identities(const Trajectory& traj, int64_t n) {
  JumpIdentityReport rep;
  if (traj.outcome != WalkOutcome::completed || traj.x != n || traj.jumps_up.empty()) {
    rep.ok = false;
    rep.time_identity_ok = false;
    rep.t_n = -1;
    return rep;
  }
  rep.t_n = traj.steps;
  int64_t down_total = 0;
  for (int64_t k = traj.level_lo - 1; k <= n; ++k) {
    int64_t expect = traj.jump_down_at(k + 1) + ((k >= 0 && k < n) ? 1 : 0);
    if (traj.jump_up_at(k) != expect) ++rep.violations;
    down_total += traj.jump_down_at(k);
  }
  rep.time_identity_ok = rep.t_n == n + 2 * down_total;
  rep.ok = rep.violations == 0 && rep.time_identity_ok;
  return rep;
}

std::vector<int64_t> backward_jump_counts(const std::vector<int64_t>& path, int64_t n) {
  int64_t tn = first_hit_index(path, n);
  if (tn < 0) throw std::runtime_error("path never reaches the requested level");
  std::unordered_map<int64_t, int64_t> jdn;
  for (int64_t t = 0; t < tn; ++t)
    if (path[(size_t)t + 1] < path[(size_t)t]) jdn[path[(size_t)t]] += 1;
  std::vector<int64_t> out((size_t)n + 1, 0);
  for (int64_t j = 0; j <= n; ++j) {
    auto it = jdn.find(n - j);
    out[(size_t)j] = it == jdn.end() ? 0 : it->second;
  }
  return out;
}

std::vector<int64_t> backward_jump_counts(const Trajectory& traj, int64_t n) {
  if (traj.outcome != WalkOutcome::completed || traj.x != n || traj.jumps_down.empty())
    throw std::runtime_error("trajectory was not stopped at the requested level with jump records");
  std::vector<int64_t> out((size_t)n + 1, 0);
  for (int64_t j = 0; j <= n; ++j) out[(size_t)j] = traj.jump_down_at(n - j);
  return out;
}

std::vector<double> drift_martingale(const std::vector<int64_t>& path, const StackModel& model,
                                     uint64_t env_seed) {
  if (path.empty()) return {};
  std::unordered_map<int64_t, int64_t> visits;
  std::unordered_map<int64_t, uint64_t> auxes;
  const bool aux_needed = model_needs_aux(model);
  std::vector<double> m;
  m.reserve(path.size());
  m.push_back(0.0);
  double drift = 0.0;
  for (size_t t = 0; t + 1 < path.size(); ++t) {
    int64_t z = path[t];
    int64_t v = ++visits[z];
    uint64_t aux = 0;
    if (aux_needed) {
      auto it = auxes.find(z);
      if (it == auxes.end()) it = auxes.emplace(z, realize_aux(model, z, env_seed)).first;
      aux = it->second;
    }
    double pr = site_right_prob(model, aux, z, v);
    drift += 2.0 * pr - 1.0;
    m.push_back((double)(path[t + 1] - path[0]) - drift);
  }
  return m;
}

int64_t max_local_time(const std::vector<int64_t>& path, int64_t n) {
  if (path.empty() || n < 0 || n >= (int64_t)path.size())
    throw std::invalid_argument("time outside the recorded path");
  std::unordered_map<int64_t, int64_t> count;
  int64_t best = 0;
  for (int64_t t = 0; t <= n; ++t) best = std::max(best, ++count[path[(size_t)t]]);
  return best;
}

}  // namespace erw
