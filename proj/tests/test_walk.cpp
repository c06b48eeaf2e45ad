#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "erw/walk.hpp"

using namespace erw;

static WalkConfig cfg_steps(int64_t n) {
  WalkConfig c;
  c.stop = stop_steps(n);
  return c;
}

TEST_CASE("step consumes one cookie and moves to a neighbour") {
  Environment env(homog_pm(1.0, 1), 3);  // sure-right first cookie
  Rng rng(11);
  Site s = site1(0);
  Site t = step(s, env, rng);
  CHECK(t == site1(1));
  CHECK(env.visits_consumed(site1(0)) == 1);
  // second consumption is a fair coin; either neighbour is fine
  Site u = step(t, env, rng);
  CHECK(std::abs(u[0] - t[0]) == 1);
}

TEST_CASE("placebo up-step frequency is a fair coin") {
  WalkConfig c = cfg_steps(100'000);
  c.record.full_path = true;
  Trajectory tr = run(HomogeneousModel{{}}, 1, c, 12345);
  int64_t ups = 0;
  for (size_t t = 1; t < tr.path.size(); ++t) ups += tr.path[t] > tr.path[t - 1];
  double f = (double)ups / 100'000.0;
  CHECK(std::abs(f - 0.5) < 3.0 * 0.5 / std::sqrt(1e5));
}

TEST_CASE("BW fresh-site direction frequencies in d=2") {
  StackModel m = BWModel{2, 0.75};
  Environment env(m, 808);
  Rng rng(31337);
  int64_t counts[4] = {0, 0, 0, 0};
  const int64_t total = 100'000;
  for (int64_t i = 0; i < total; ++i) {
    Site s{};
    s[0] = (int32_t)(i % 10'000) * 3;  // spread over fresh sites
    s[1] = (int32_t)(i / 10'000) * 3;
    if (env.visits_consumed(s) != 0) continue;
    Site t = step(s, env, rng);
    int axis = (t[0] != s[0]) ? 0 : 1;
    int sign = (t[axis] > s[axis]) ? +1 : -1;
    counts[2 * axis + (sign > 0 ? 0 : 1)]++;
  }
  // first visits only happen on the first pass over each site; re-used sites
  // were skipped above, so every counted step used a first cookie... except
  // repeats: the index grid guarantees distinct sites, so all are first visits
  double expect[4] = {0.375, 0.125, 0.25, 0.25};
  for (int j = 0; j < 4; ++j) {
    double f = (double)counts[j] / (double)total;
    double se = std::sqrt(expect[j] * (1 - expect[j]) / (double)total);
    CHECK(std::abs(f - expect[j]) < 3.5 * se);
  }
}

TEST_CASE("placebo diffusive scale: mean |X_n|/sqrt(n)") {
  const int64_t n = 10'000, reps = 10'000;
  WalkConfig c = cfg_steps(n);
  double acc = 0;
  for (int64_t r = 0; r < reps; ++r) {
    Trajectory tr = run(HomogeneousModel{{}}, 5, c, replica_seed(99, kStreamWalk, r));
    acc += std::abs((double)tr.x) / std::sqrt((double)n);
  }
  double mean = acc / (double)reps;
  CHECK(std::abs(mean - std::sqrt(2.0 / 3.141592653589793)) < 0.03);
}

TEST_CASE("gambler's ruin from 5 between 0 and 6 under the placebo law") {
  const int64_t reps = 100'000;
  WalkConfig c;
  c.stop = stop_hit_either(0, 6);
  c.start_x = 5;
  int64_t hi = 0;
  for (int64_t r = 0; r < reps; ++r) {
    Trajectory tr = run(HomogeneousModel{{}}, 2, c, replica_seed(7, kStreamWalk, r));
    REQUIRE(tr.outcome == WalkOutcome::completed);
    REQUIRE((tr.x == 0 || tr.x == 6));
    hi += tr.x == 6;
  }
  double f = (double)hi / (double)reps;
  double se = std::sqrt((5.0 / 6.0) * (1.0 / 6.0) / (double)reps);
  CHECK(std::abs(f - 5.0 / 6.0) <= 3.0 * se);
}

TEST_CASE("strongly excited walks reach distant levels") {
  WalkConfig c;
  c.stop = stop_hit_level(1000);
  c.step_cap = 10'000'000;
  for (int64_t r = 0; r < 1000; ++r) {
    Trajectory tr = run(homog_pm(0.8, 5), 4, c, replica_seed(21, kStreamWalk, r));
    REQUIRE(tr.outcome == WalkOutcome::completed);
    REQUIRE(tr.x == 1000);
    REQUIRE(tr.steps >= 1000);
  }
}

TEST_CASE("step cap interrupts unreachable targets") {
  WalkConfig c;
  c.stop = stop_hit_level(100'000);
  c.step_cap = 2000;
  Trajectory tr = run(HomogeneousModel{{}}, 6, c, 9);
  CHECK(tr.outcome == WalkOutcome::cap_exceeded);
  CHECK(tr.steps == 2000);
}

TEST_CASE("first-return outcomes and parity") {
  WalkConfig c;
  c.stop = stop_first_return(10'000);
  int64_t returned = 0;
  for (int64_t r = 0; r < 200; ++r) {
    Trajectory tr = run(HomogeneousModel{{}}, 8, c, replica_seed(13, kStreamWalk, r));
    if (tr.outcome == WalkOutcome::returned) {
      ++returned;
      CHECK(tr.x == 0);
      CHECK(tr.return_time >= 2);
      CHECK(tr.return_time % 2 == 0);
      CHECK(tr.return_time == tr.steps);
    } else {
      CHECK(tr.outcome == WalkOutcome::not_returned);
      CHECK(tr.steps == 10'000);
    }
  }
  CHECK(returned >= 190);  // P[T0 > 1e4] is below a percent for the fair walk
}

TEST_CASE("jump identities on a hand-counted path") {
  std::vector<int64_t> path = {0, 1, 0, 1, 2};
  JumpIdentityReport rep = jump_identities(path, 2);
  CHECK(rep.ok);
  CHECK(rep.t_n == 4);
  CHECK(rep.violations == 0);
  CHECK(rep.time_identity_ok);

  auto bw = backward_jump_counts(path, 2);
  REQUIRE(bw.size() == 3);
  CHECK(bw[0] == 0);  // J_down at level 2
  CHECK(bw[1] == 1);  // at level 1
  CHECK(bw[2] == 0);  // at level 0

  std::vector<int64_t> mono = {0, 1, 2, 3};
  auto bm = backward_jump_counts(mono, 3);
  CHECK(bm == std::vector<int64_t>({0, 0, 0, 0}));
  JumpIdentityReport rm = jump_identities(mono, 3);
  CHECK(rm.ok);
  CHECK(rm.t_n == 3);
}

TEST_CASE("kernel jump counters match a full-path recount") {
  WalkConfig c;
  c.stop = stop_hit_level(300);
  c.record.full_path = true;
  c.record.jumps = true;
  c.record.hit_times = true;
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    Trajectory tr = run(homog_pm(0.8, 5), 42, c, seed);
    REQUIRE(tr.outcome == WalkOutcome::completed);
    JumpIdentityReport from_path = jump_identities(tr.path, 300);
    JumpIdentityReport from_counters = jump_identities(tr, 300);
    CHECK(from_path.ok);
    CHECK(from_counters.ok);
    CHECK(from_path.t_n == from_counters.t_n);
    CHECK(backward_jump_counts(tr.path, 300) == backward_jump_counts(tr, 300));
  }
  // a recurrent-side model exercises deep negative excursions
  Trajectory tr = run(homog_pm(0.75, 1), 43, c, 12);
  if (tr.outcome == WalkOutcome::completed) {
    CHECK(jump_identities(tr.path, 300).ok);
    CHECK(backward_jump_counts(tr.path, 300) == backward_jump_counts(tr, 300));
  }
}

TEST_CASE("fast kernel and generic environment loop produce identical paths") {
  BoundedIIDModel iid{{{0.5, {0.9, 0.9}}, {0.5, {0.55}}}};
  WalkConfig c = cfg_steps(2000);
  c.record.full_path = true;
  for (uint64_t ws : {100u, 200u, 300u}) {
    Trajectory fast = run(iid, 71, c, ws);
    Environment env(iid, 71);
    Rng rng(ws);
    Trajectory slow = run_in_env(env, c, rng);
    REQUIRE(fast.path.size() == slow.path.size());
    CHECK(fast.path == slow.path);
    CHECK(fast.x == slow.x);
    CHECK(fast.xi_star == slow.xi_star);
    CHECK(fast.distinct_sites == slow.distinct_sites);
  }
}

TEST_CASE("drift compensator: degenerate-right prefix walks") {
  WalkConfig c = cfg_steps(50);
  c.record.full_path = true;
  c.record.drift_series = true;
  Trajectory tr = run(homog_pm(1.0, 1), 1, c, 77);
  // every departed site is fresh, so every consumed cookie is sure-right
  for (int64_t t = 0; t <= 50; ++t) CHECK(tr.path[(size_t)t] == t);
  CHECK(tr.drift_final == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(tr.drift_series.back() == doctest::Approx(50.0));
  CHECK(tr.xi_star == 1);
  CHECK(tr.x - tr.drift_final == doctest::Approx(0.0));  // martingale sits at 0
}

TEST_CASE("placebo drift compensator vanishes identically") {
  WalkConfig c = cfg_steps(1000);
  c.record.drift_final = true;
  Trajectory tr = run(HomogeneousModel{{}}, 1, c, 4242);
  CHECK(tr.drift_final == doctest::Approx(0.0));
}

TEST_CASE("martingale mean at horizon 1e4 stays within 3 SE of zero") {
  const int64_t n = 10'000, reps = 10'000;
  WalkConfig c = cfg_steps(n);
  c.record.drift_final = true;
  double acc = 0, acc2 = 0;
  for (int64_t r = 0; r < reps; ++r) {
    Trajectory tr = run(homog_pm(0.8, 5), 3, c, replica_seed(55, kStreamWalk, r));
    double m = (double)tr.x - tr.drift_final;
    acc += m;
    acc2 += m * m;
  }
  double mean = acc / (double)reps;
  double var = acc2 / (double)reps - mean * mean;
  double se = std::sqrt(var / (double)reps);
  CHECK(std::abs(mean) <= 3.0 * se);
}

TEST_CASE("martingale replay from the path matches the kernel ledger") {
  BoundedIIDModel iid{{{0.4, {0.9, 0.9}}, {0.6, {0.6}}}};
  WalkConfig c = cfg_steps(500);
  c.record.full_path = true;
  c.record.drift_series = true;
  Trajectory tr = run(iid, 17, c, 404);
  std::vector<double> m = drift_martingale(tr.path, iid, 17);
  REQUIRE(m.size() == tr.path.size());
  CHECK(m[0] == doctest::Approx(0.0));
  for (size_t t = 0; t < m.size(); ++t)
    CHECK(m[t] == doctest::Approx((double)tr.path[t] - tr.drift_series[t]).epsilon(1e-9));
}

TEST_CASE("max local time: hand path and kernel consistency") {
  std::vector<int64_t> path = {0, 1, 0, 1, 0};
  CHECK(max_local_time(path, 4) == 3);
  CHECK(max_local_time(path, 2) == 2);
  CHECK(max_local_time(path, 0) == 1);

  WalkConfig c = cfg_steps(500);
  c.record.full_path = true;
  for (uint64_t ws = 1; ws <= 20; ++ws) {
    Trajectory tr = run(HomogeneousModel{{}}, 23, c, ws);
    CHECK(tr.xi_star == max_local_time(tr.path, 500));
  }
}

TEST_CASE("local-time table sums to elapsed time plus one") {
  WalkConfig c = cfg_steps(1000);
  c.record.full_path = true;
  c.record.local_times = true;
  Trajectory tr = run(HomogeneousModel{{}}, 29, c, 31);
  int64_t total = std::accumulate(tr.local_times.begin(), tr.local_times.end(), (int64_t)0);
  CHECK(total == tr.steps + 1);
  int64_t mx = *std::max_element(tr.local_times.begin(), tr.local_times.end());
  CHECK(mx == tr.xi_star);
  // recount from the path
  for (int64_t k = tr.level_lo; k <= tr.level_hi; ++k) {
    int64_t cnt = std::count(tr.path.begin(), tr.path.end(), k);
    CHECK(cnt == tr.local_times[(size_t)(k - tr.level_lo)]);
  }
}

TEST_CASE("max-local-time growth stays near the cube-root scale when delta = 3") {
  const int64_t reps = 300;
  auto med_ratio = [&](int64_t n) {
    std::vector<double> v;
    WalkConfig c = cfg_steps(n);
    for (int64_t r = 0; r < reps; ++r) {
      Trajectory tr = run(homog_pm(0.8, 5), 91, c, replica_seed(19, kStreamWalk, (uint64_t)(r + reps * n)));
      v.push_back((double)tr.xi_star / std::cbrt((double)n));
    }
    std::nth_element(v.begin(), v.begin() + reps / 2, v.end());
    return v[reps / 2];
  };
  double r1 = med_ratio(30'000), r2 = med_ratio(300'000);
  CHECK(r2 / r1 <= 2.0);
  CHECK(r2 / r1 >= 0.5);
}

TEST_CASE("checkpoints record the path at the stride") {
  WalkConfig c = cfg_steps(1000);
  c.record.full_path = true;
  c.record.checkpoint_stride = 100;
  Trajectory tr = run(homog_pm(0.75, 2), 37, c, 41);
  REQUIRE(tr.checkpoints.size() == 10);
  int64_t prev_sites = 1;
  for (size_t i = 0; i < tr.checkpoints.size(); ++i) {
    const Checkpoint& cp = tr.checkpoints[i];
    CHECK(cp.time == (int64_t)(i + 1) * 100);
    CHECK(cp.x == tr.path[(size_t)cp.time]);
    CHECK(cp.distinct_sites >= prev_sites);
    prev_sites = cp.distinct_sites;
  }
}

TEST_CASE("trajectories are reproducible and seeds matter") {
  WalkConfig c = cfg_steps(3000);
  c.record.full_path = true;
  Trajectory a = run(homog_pm(0.8, 5), 50, c, 60);
  Trajectory b = run(homog_pm(0.8, 5), 50, c, 60);
  CHECK(a.path == b.path);
  CHECK(a.xi_star == b.xi_star);
  CHECK(a.distinct_sites == b.distinct_sites);
  Trajectory d = run(homog_pm(0.8, 5), 50, c, 61);
  CHECK(a.path != d.path);
}

TEST_CASE("start offset shifts the whole trajectory") {
  WalkConfig c = cfg_steps(10);
  c.record.full_path = true;
  c.start_x = 5;
  Trajectory tr = run(HomogeneousModel{{}}, 1, c, 2);
  CHECK(tr.path[0] == 5);
  CHECK(std::abs(tr.x - 5) <= 10);
}

TEST_CASE("two-dimensional runs keep consistent geometry") {
  StackModel m = BWModel{2, 0.75};
  WalkConfig c = cfg_steps(10'000);
  c.record.full_path = true;
  Trajectory tr = run(m, 123, c, 456);
  CHECK(tr.d == 2);
  CHECK(tr.steps == 10'000);
  CHECK(tr.x == tr.pos[0]);
  REQUIRE(tr.path_nd.size() == (size_t)2 * 10'001);
  // nearest-neighbour moves, one coordinate at a time
  for (int64_t t = 0; t < 10'000; ++t) {
    int64_t dx = std::abs((int64_t)tr.path_nd[2 * (t + 1)] - tr.path_nd[2 * t]);
    int64_t dy = std::abs((int64_t)tr.path_nd[2 * (t + 1) + 1] - tr.path_nd[2 * t + 1]);
    REQUIRE(dx + dy == 1);
  }
  // parity of |X| + |Y| matches the clock
  CHECK((std::abs(tr.pos[0]) + std::abs(tr.pos[1])) % 2 == 10'000 % 2);
  CHECK(tr.distinct_sites <= 10'001);
  Trajectory tr2 = run(m, 123, c, 456);
  CHECK(tr.path_nd == tr2.path_nd);
}

TEST_CASE("trapping walks stall: range grows much slower than diffusive") {
  const int64_t reps = 100;
  std::vector<double> ratios;
  for (int64_t r = 0; r < reps; ++r) {
    WalkConfig c1 = cfg_steps(10'000);
    WalkConfig c2 = cfg_steps(100'000);
    uint64_t ws = replica_seed(3, kStreamWalk, r);
    Trajectory a = run(TrappingModel{0.25, 0.5}, (uint64_t)r + 1, c1, ws);
    Trajectory b = run(TrappingModel{0.25, 0.5}, (uint64_t)r + 1, c2, ws);
    ratios.push_back((double)b.distinct_sites / (double)a.distinct_sites);
  }
  std::nth_element(ratios.begin(), ratios.begin() + reps / 2, ratios.end());
  CHECK(ratios[reps / 2] <= 2.5);  // log-squared growth, far below sqrt(10)
  // and the walk visits very few sites overall at horizon 1e5
  WalkConfig c = cfg_steps(100'000);
  Trajectory tr = run(TrappingModel{0.25, 0.5}, 77, c, 88);
  CHECK(tr.distinct_sites < 1000);
}
