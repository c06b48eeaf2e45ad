#include "erw/suites.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "erw/branching.hpp"
#include "erw/limits.hpp"
#include "erw/parallel.hpp"
#include "erw/records.hpp"
#include "erw/regen.hpp"
#include "erw/stats.hpp"
#include "erw/walk.hpp"

namespace erw {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// non-finite doubles are legal for delta; JSON is not, so spell them out
json jreal(double x) {
  if (std::isfinite(x)) return json(x);
  if (std::isnan(x)) return json("nan");
  return json(x > 0 ? "inf" : "-inf");
}

json jreal_vec(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(jreal(x));
  return a;
}

json jks(const KsComparison& c) {
  json j;
  j["label"] = c.label;
  j["ks_statistic"] = jreal(c.ks.statistic);
  j["p_value"] = jreal(c.ks.p_value);
  j["fitted_scale"] = jreal(c.fitted_scale);
  j["n_lhs"] = c.n_lhs;
  j["n_rhs"] = c.n_rhs;
  j["quartiles_lhs"] = {jreal(c.quartiles_lhs[0]), jreal(c.quartiles_lhs[1]), jreal(c.quartiles_lhs[2])};
  j["quartiles_rhs"] = {jreal(c.quartiles_rhs[0]), jreal(c.quartiles_rhs[1]), jreal(c.quartiles_rhs[2])};
  return j;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

int64_t require_count(Config& cfg, const std::string& key) {
  int64_t v = cfg.get_int(key);
  if (v < 1) throw ConfigError("key '" + key + "': must be >= 1");
  return v;
}

// ---- simulate ---------------------------------------------------------------

void suite_simulate(Config& cfg, const SuiteIO& io, uint64_t seed, json& summary, bool& pass) {
  StackModel model = cfg.parse_model();
  int64_t n = require_count(cfg, "n");
  int64_t replicas = require_count(cfg, "replicas");
  cfg.check_all_consumed();

  struct Row {
    uint64_t walk_seed;
    int64_t steps, x, max_x, min_x, distinct, xi;
  };
  std::vector<Row> rows((size_t)replicas);
  run_replicas(replicas, io.workers, [&](int64_t r) {
    WalkConfig wc;
    wc.stop = stop_steps(n);
    uint64_t env_seed = replica_seed(seed, kStreamEnv, (uint64_t)r);
    uint64_t walk_seed = replica_seed(seed, kStreamWalk, (uint64_t)r);
    Trajectory tr = run(model, env_seed, wc, walk_seed);
    rows[(size_t)r] = {walk_seed, tr.steps, tr.x, tr.max_x, tr.min_x, tr.distinct_sites, tr.xi_star};
  });

  RecordWriter w((fs::path(io.out_dir) / "trajectories.csv").string(), "simulate", model_id(model),
                 seed, {"replica", "seed", "steps", "x", "max_x", "min_x", "distinct_sites", "xi_star"});
  double sum_x = 0, sum_xi = 0, sum_distinct = 0;
  for (int64_t r = 0; r < replicas; ++r) {
    const Row& row = rows[(size_t)r];
    w.row({std::to_string(r), std::to_string(row.walk_seed), std::to_string(row.steps),
           std::to_string(row.x), std::to_string(row.max_x), std::to_string(row.min_x),
           std::to_string(row.distinct), std::to_string(row.xi)});
    sum_x += (double)row.x;
    sum_xi += (double)row.xi;
    sum_distinct += (double)row.distinct;
  }
  w.close();

  summary["model"] = model_id(model);
  summary["n"] = n;
  summary["replicas"] = replicas;
  summary["mean_x"] = jreal(sum_x / (double)replicas);
  summary["mean_distinct_sites"] = jreal(sum_distinct / (double)replicas);
  summary["mean_xi_star"] = jreal(sum_xi / (double)replicas);
  (void)pass;  // measurement suite: no threshold
}

// ---- classify ---------------------------------------------------------------

void suite_classify(Config& cfg, const SuiteIO& io, uint64_t seed, json& summary, bool& pass) {
  (void)io;
  StackModel model = cfg.parse_model();
  int64_t mc_stacks = cfg.get_int("mc_stacks", 100'000);
  if (mc_stacks < 1) throw ConfigError("key 'mc_stacks': must be >= 1");
  cfg.check_all_consumed();

  summary["model"] = model_id(model);
  try {
    std::vector<double> closed = delta_closed(model);
    double ds = delta_scalar(model);
    Phase ph = classify_phase(ds);
    DeltaEstimate est = delta_mc(model, mc_stacks, seed);

    summary["delta"] = jreal_vec(closed);
    summary["delta_scalar"] = jreal(ds);
    summary["phase"] = phase_string(ph);
    summary["delta_mc"] = jreal_vec(est.value);
    summary["delta_mc_se"] = jreal_vec(est.se);
    summary["mc_stacks"] = mc_stacks;

    bool consistent = true;
    for (size_t i = 0; i < closed.size() && i < est.value.size(); ++i) {
      if (!std::isfinite(closed[i]) || !std::isfinite(est.value[i])) continue;
      if (std::abs(closed[i] - est.value[i]) > 4.0 * est.se[i] + 1e-9) consistent = false;
    }
    summary["mc_consistent"] = consistent;
    pass = consistent;
  } catch (const NonSummableDrift& e) {
    summary["delta"] = "non_summable";
    summary["phase"] = "unknown (drift not summable)";
    summary["note"] = e.what();
  }
}

// ---- duality ----------------------------------------------------------------

void suite_duality(Config& cfg, const SuiteIO& io, uint64_t seed, json& summary, bool& pass) {
  StackModel model = cfg.parse_model();
  int64_t n = require_count(cfg, "n");
  int64_t replicas = require_count(cfg, "replicas");
  double p_min = cfg.get_real("p_min", 0.01);
  cfg.check_all_consumed();
  if (dimension(model) != 1) throw ConfigError("duality suite requires a one-dimensional model");

  size_t coords = (size_t)n + 1;
  std::vector<std::vector<int64_t>> walk_counts((size_t)replicas);
  std::vector<std::vector<int64_t>> chain_counts((size_t)replicas);
  std::vector<uint64_t> walk_seeds((size_t)replicas);
  run_replicas(replicas, io.workers, [&](int64_t r) {
    uint64_t env_seed = replica_seed(seed, kStreamEnv, (uint64_t)r);
    uint64_t walk_seed = replica_seed(seed, kStreamWalk, (uint64_t)r);
    walk_seeds[(size_t)r] = walk_seed;
    WalkConfig wc;
    wc.stop = stop_hit_level(n);
    wc.record.jumps = true;
    wc.record.hit_times = true;
    Trajectory tr = run(model, env_seed, wc, walk_seed);
    if (tr.outcome == WalkOutcome::completed)
      walk_counts[(size_t)r] = backward_jump_counts(tr, n);
    std::vector<int64_t> v = v_path(model, replica_seed(seed, kStreamCycle, (uint64_t)r), n);
    chain_counts[(size_t)r] = std::move(v);
  });

  std::vector<std::string> columns = {"replica", "seed", "completed"};
  for (size_t j = 0; j < coords; ++j) columns.push_back("j" + std::to_string(j));
  RecordWriter ww((fs::path(io.out_dir) / "backward_counts.csv").string(), "duality",
                  model_id(model), seed, columns);
  RecordWriter wc((fs::path(io.out_dir) / "chain_counts.csv").string(), "duality",
                  model_id(model), seed, columns);
  int64_t completed = 0;
  for (int64_t r = 0; r < replicas; ++r) {
    bool done = !walk_counts[(size_t)r].empty();
    completed += done ? 1 : 0;
    std::vector<std::string> row = {std::to_string(r), std::to_string(walk_seeds[(size_t)r]),
                                    done ? "1" : "0"};
    for (size_t j = 0; j < coords; ++j)
      row.push_back(done ? std::to_string(walk_counts[(size_t)r][j]) : "-1");
    ww.row(row);
    row.resize(3);
    row[2] = "1";
    for (size_t j = 0; j < coords; ++j) row.push_back(std::to_string(chain_counts[(size_t)r][j]));
    wc.row(row);
  }
  ww.close();
  wc.close();
  if (completed == 0) throw ConfigError("no replica reached the target level within the step cap");

  json p_values = json::array();
  double min_p = 1.0;
  for (size_t j = 0; j < coords; ++j) {
    std::vector<double> a, b;
    a.reserve((size_t)completed);
    b.reserve((size_t)replicas);
    for (int64_t r = 0; r < replicas; ++r) {
      if (!walk_counts[(size_t)r].empty()) a.push_back((double)walk_counts[(size_t)r][j]);
      b.push_back((double)chain_counts[(size_t)r][j]);
    }
    KsResult ks = ks_two_sample(a, b);
    p_values.push_back(jreal(ks.p_value));
    min_p = std::min(min_p, ks.p_value);
  }

  summary["model"] = model_id(model);
  summary["n"] = n;
  summary["replicas"] = replicas;
  summary["completed"] = completed;
  summary["p_min"] = jreal(p_min);
  summary["p_values"] = p_values;
  summary["min_p"] = jreal(min_p);
  pass = min_p >= p_min;
}

// ---- regen ------------------------------------------------------------------

void suite_regen(Config& cfg, const SuiteIO& io, uint64_t seed, json& summary, bool& pass) {
  StackModel model = cfg.parse_model();
  int64_t n = require_count(cfg, "n");
  int64_t replicas = require_count(cfg, "replicas");
  int64_t resamples = cfg.get_int("resamples", 10'000);
  int64_t burnoff = cfg.get_int("burnoff", n / 10);
  cfg.check_all_consumed();
  if (dimension(model) != 1) throw ConfigError("regen suite requires a one-dimensional model");

  std::vector<CycleSplit> splits((size_t)replicas);
  run_replicas(replicas, io.workers, [&](int64_t r) {
    WalkConfig wc;
    wc.stop = stop_steps(n);
    wc.record.jumps = true;
    wc.record.hit_times = true;
    Trajectory tr = run(model, replica_seed(seed, kStreamEnv, (uint64_t)r), wc,
                        replica_seed(seed, kStreamWalk, (uint64_t)r));
    splits[(size_t)r] = cycles_from_trajectory(tr, burnoff);
  });

  RecordWriter w((fs::path(io.out_dir) / "cycles.csv").string(), "regen", model_id(model), seed,
                 {"replica", "index", "duration", "displacement"});
  std::vector<RegenCycle> pool;
  for (int64_t r = 0; r < replicas; ++r) {
    for (const RegenCycle& c : splits[(size_t)r].cycles) {
      w.row({std::to_string(r), std::to_string(c.index), std::to_string(c.duration),
             std::to_string(c.displacement)});
      pool.push_back(c);
    }
  }
  w.close();

  summary["model"] = model_id(model);
  summary["n"] = n;
  summary["replicas"] = replicas;
  summary["n_cycles"] = (int64_t)pool.size();
  summary["tau1"] = splits.empty() ? int64_t{-1} : splits[0].tau1;
  try {
    SpeedEstimate sp = speed_estimate(pool, resamples, 0.95, seed);
    summary["v_hat"] = jreal(sp.v_hat);
    summary["ci_lo"] = jreal(sp.ci_lo);
    summary["ci_hi"] = jreal(sp.ci_hi);
    summary["se"] = jreal(sp.se);
    summary["degenerate_speed"] = sp.degenerate;
  } catch (const TooFewCycles& e) {
    summary["error"] = e.what();
    pass = false;
  }
}

// ---- tails ------------------------------------------------------------------

void suite_tails(Config& cfg, const SuiteIO& io, uint64_t seed, json& summary, bool& pass) {
  StackModel model = cfg.parse_model();
  int64_t n = require_count(cfg, "n");
  int64_t replicas = require_count(cfg, "replicas");
  double frac = cfg.get_real("tail_fraction", 0.05);
  int64_t step_cap = cfg.get_int("step_cap", 100'000'000);
  bool has_lo = cfg.has("alpha_lo"), has_hi = cfg.has("alpha_hi");
  double alpha_lo = cfg.get_real("alpha_lo", 0.0);
  double alpha_hi = cfg.get_real("alpha_hi", 0.0);
  cfg.check_all_consumed();
  if (dimension(model) != 1) throw ConfigError("tails suite requires a one-dimensional model");

  struct Row {
    uint64_t walk_seed;
    int64_t t;
    bool capped;
  };
  std::vector<Row> rows((size_t)replicas);
  run_replicas(replicas, io.workers, [&](int64_t r) {
    WalkConfig wc;
    wc.stop = stop_hit_level(n);
    wc.step_cap = step_cap;
    uint64_t walk_seed = replica_seed(seed, kStreamWalk, (uint64_t)r);
    Trajectory tr = run(model, replica_seed(seed, kStreamEnv, (uint64_t)r), wc, walk_seed);
    rows[(size_t)r] = {walk_seed, tr.steps, tr.outcome != WalkOutcome::completed};
  });

  RecordWriter w((fs::path(io.out_dir) / "passage_times.csv").string(), "tails", model_id(model),
                 seed, {"replica", "seed", "t", "capped"});
  std::vector<double> samples;
  samples.reserve((size_t)replicas);
  int64_t n_capped = 0;
  for (int64_t r = 0; r < replicas; ++r) {
    const Row& row = rows[(size_t)r];
    w.row({std::to_string(r), std::to_string(row.walk_seed), std::to_string(row.t),
           row.capped ? "1" : "0"});
    samples.push_back((double)row.t);
    n_capped += row.capped ? 1 : 0;
  }
  w.close();

  summary["model"] = model_id(model);
  summary["n"] = n;
  summary["replicas"] = replicas;
  summary["n_capped"] = n_capped;
  try {
    TailIndex ti = tail_index(samples, frac);
    summary["tail_index"] = jreal(ti.estimate);
    summary["ci_lo"] = jreal(ti.ci_lo);
    summary["ci_hi"] = jreal(ti.ci_hi);
    summary["k"] = ti.k;
    summary["loglog_slope"] = jreal(ti.loglog_slope);
    if (has_lo) pass = pass && ti.estimate >= alpha_lo;
    if (has_hi) pass = pass && ti.estimate <= alpha_hi;
  } catch (const DegenerateTail& e) {
    summary["error"] = e.what();
    pass = false;
  }
}

// ---- limits -----------------------------------------------------------------

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::i: return "i";
    case Regime::ii: return "ii";
    case Regime::iii: return "iii";
    case Regime::iv: return "iv";
    default: return "v";
  }
}

void suite_limits(Config& cfg, const SuiteIO& io, uint64_t seed, json& summary, bool& pass) {
  (void)io;
  StackModel model = cfg.parse_model();
  std::string check = cfg.get_str("check");
  double p_min = cfg.get_real("p_min", 0.001);
  summary["model"] = model_id(model);
  summary["check"] = check;
  summary["p_min"] = jreal(p_min);

  if (check == "recurrent") {
    int64_t n = require_count(cfg, "n");
    int64_t replicas = require_count(cfg, "replicas");
    double dt = cfg.get_real("dt", 2e-4);
    int64_t sde_paths = cfg.get_int("sde_paths", replicas);
    cfg.check_all_consumed();
    RecurrentReport rep = recurrent_limit_check(model, n, replicas, dt, sde_paths, seed);
    summary["delta"] = jreal(rep.delta);
    summary["at_t1"] = jks(rep.at_t1);
    summary["at_half"] = jks(rep.at_half);
    summary["erw_mean"] = jreal(rep.erw_mean);
    pass = rep.at_t1.ks.p_value >= p_min && rep.at_half.ks.p_value >= p_min;
  } else if (check == "critical") {
    std::vector<int64_t> horizons = cfg.get_int_list("horizons", {1000, 100'000});
    int64_t replicas = require_count(cfg, "replicas");
    cfg.check_all_consumed();
    CriticalReport rep = critical_limit_check(model, horizons, replicas, seed);
    json per = json::array();
    for (const KsComparison& c : rep.per_horizon) per.push_back(jks(c));
    summary["per_horizon"] = per;
    summary["monotone"] = rep.monotone;
    summary["p5_scaled"] = jreal(rep.p5_scaled);
    summary["bm_max_reference"] = jks(rep.bm_max_reference);
    pass = rep.monotone && rep.p5_scaled >= -0.1 && rep.bm_max_reference.ks.p_value >= p_min;
  } else if (check == "transient") {
    int64_t n = require_count(cfg, "n");
    TransientOptions opts;
    opts.replicas = require_count(cfg, "replicas");
    opts.speed_replicas = cfg.get_int("speed_replicas", opts.speed_replicas);
    opts.reference_samples = cfg.get_int("reference_samples", opts.reference_samples);
    opts.tail_fraction = cfg.get_real("tail_fraction", opts.tail_fraction);
    opts.ratio_tolerance = cfg.get_real("ratio_tolerance", opts.ratio_tolerance);
    double tail_tolerance = cfg.get_real("tail_tolerance", 0.3);
    cfg.check_all_consumed();
    Regime regime = regime_of(delta_scalar(model));
    TransientReport rep = transient_marginal_check(model, regime, n, opts, seed);
    summary["delta"] = jreal(rep.delta);
    summary["regime"] = regime_name(rep.regime);
    summary["v_hat"] = jreal(rep.v_hat);
    summary["v_se"] = jreal(rep.v_se);
    switch (regime) {
      case Regime::i:
        summary["t_tail"] = jreal(rep.t_tail.estimate);
        summary["t_tail_ci"] = {jreal(rep.t_tail.ci_lo), jreal(rep.t_tail.ci_hi)};
        summary["t_tail_expected"] = jreal(rep.delta / 2.0);
        pass = std::abs(rep.t_tail.estimate - rep.delta / 2.0) <= tail_tolerance;
        break;
      case Regime::ii:
        summary["ratio_first"] = jreal(rep.ratio_first);
        summary["ratio_second"] = jreal(rep.ratio_second);
        summary["ratio_ok"] = rep.ratio_ok;
        pass = rep.ratio_ok;
        break;
      default:
        summary["primary"] = jks(rep.primary);
        summary["sup_variant"] = jks(rep.sup_variant);
        pass = rep.primary.ks.p_value >= p_min && rep.sup_variant.ks.p_value >= p_min;
        break;
    }
  } else {
    throw ConfigError("key 'check': expected recurrent | critical | transient");
  }
}

// ---- multidim ---------------------------------------------------------------

void suite_multidim(Config& cfg, const SuiteIO& io, uint64_t seed, json& summary, bool& pass) {
  (void)io;
  StackModel model = cfg.parse_model();
  int64_t n = require_count(cfg, "n");
  int64_t replicas = require_count(cfg, "replicas");
  double p_min = cfg.get_real("p_min", 0.001);
  bool require_positive = cfg.get_bool("require_positive_speed", false);
  double directional_min = cfg.get_real("directional_min", 0.0);
  cfg.check_all_consumed();
  if (dimension(model) < 2) throw ConfigError("multidim suite requires a model with d >= 2");

  MultidimReport rep = multidim_checks(model, n, replicas, seed);
  summary["model"] = model_id(model);
  summary["d"] = rep.d;
  summary["n"] = rep.n;
  summary["replicas"] = rep.replicas;
  summary["directional_fraction"] = jreal(rep.directional_fraction);
  summary["directional_ci"] = {jreal(rep.frac_ci_lo), jreal(rep.frac_ci_hi)};
  summary["v1_hat"] = jreal(rep.v1_hat);
  summary["v1_ci"] = {jreal(rep.v1_lo), jreal(rep.v1_hi)};
  summary["transverse_mean"] = jreal_vec(rep.transverse_mean);
  summary["transverse_se"] = jreal_vec(rep.transverse_se);
  json norm = json::array();
  double min_p = 1.0;
  for (const KsComparison& c : rep.coordinate_normality) {
    norm.push_back(jks(c));
    min_p = std::min(min_p, c.ks.p_value);
  }
  summary["coordinate_normality"] = norm;
  summary["covariance"] = jreal_vec(rep.covariance);
  pass = min_p >= p_min;
  if (require_positive) pass = pass && rep.v1_lo > 0.0;
  pass = pass && rep.directional_fraction >= directional_min;
}

// ---- report -----------------------------------------------------------------

void suite_report(Config& cfg, const SuiteIO& io, uint64_t seed, json& summary, bool& pass) {
  (void)seed;
  (void)pass;
  std::string input = cfg.get_str("input");
  std::string column = cfg.get_str("column");
  cfg.check_all_consumed();

  std::ifstream in(input, std::ios::binary);
  if (!in.good()) throw ConfigError("cannot read input records: " + input);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    header = split_csv(line);
    break;
  }
  if (header.empty()) throw ConfigError("input has no column header: " + input);
  size_t idx = header.size();
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == column) idx = i;
  if (idx == header.size()) throw ConfigError("column '" + column + "' not found in " + input);

  std::vector<double> values;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size())
      throw ConfigError("ragged row in " + input + ": '" + line + "'");
    try {
      values.push_back(std::stod(fields[idx]));
    } catch (const std::exception&) {
      throw ConfigError("column '" + column + "': non-numeric value '" + fields[idx] + "'");
    }
  }
  if (values.empty()) throw ConfigError("input has no data rows: " + input);

  write_ecdf_table((fs::path(io.out_dir) / ("ecdf_" + column + ".csv")).string(), column, values);
  summary["input"] = input;
  summary["column"] = column;
  summary["n_values"] = (int64_t)values.size();
  summary["mean"] = jreal(mean(values));
  summary["quartiles"] = {jreal(quantile(values, 0.25)), jreal(quantile(values, 0.5)),
                          jreal(quantile(values, 0.75))};
}

}  // namespace

SuiteResult run_suite(const std::string& suite, Config& cfg, const SuiteIO& io) {
  fs::create_directories(io.out_dir);
  // consume the config's seed key even when the command line overrides it
  uint64_t cfg_seed = (uint64_t)cfg.get_int("seed", 1);
  uint64_t seed = io.seed_override ? io.seed : cfg_seed;

  json summary;
  bool pass = true;
  if (suite == "simulate") suite_simulate(cfg, io, seed, summary, pass);
  else if (suite == "classify") suite_classify(cfg, io, seed, summary, pass);
  else if (suite == "duality") suite_duality(cfg, io, seed, summary, pass);
  else if (suite == "regen") suite_regen(cfg, io, seed, summary, pass);
  else if (suite == "tails") suite_tails(cfg, io, seed, summary, pass);
  else if (suite == "limits") suite_limits(cfg, io, seed, summary, pass);
  else if (suite == "multidim") suite_multidim(cfg, io, seed, summary, pass);
  else if (suite == "report") suite_report(cfg, io, seed, summary, pass);
  else throw ConfigError("unknown suite '" + suite + "'");

  summary["suite"] = suite;
  summary["seed"] = seed;
  summary["pass"] = pass;

  SuiteResult res;
  res.pass = pass;
  res.summary_json = summary.dump(2) + "\n";
  write_text_file((fs::path(io.out_dir) / "summary.json").string(), res.summary_json);

  char hash_hex[32];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                (unsigned long long)config_hash(cfg.text()));
  json manifest;
  manifest["records_version"] = kRecordsVersion;
  manifest["code_version"] = kCodeVersion;
  manifest["suite"] = suite;
  manifest["seed"] = seed;
  manifest["config_hash"] = hash_hex;
  manifest["config"] = cfg.text();
  write_text_file((fs::path(io.out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
  return res;
}

int run_experiment(const std::string& suite, const std::string& config_path, const SuiteIO& io) {
  try {
    Config cfg = Config::parse_file(config_path);
    SuiteResult res = run_suite(suite, cfg, io);
    return res.pass ? 0 : 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace erw
