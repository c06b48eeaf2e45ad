#include <CLI11.hpp>

#include <cstdint>
#include <string>

#include "erw/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"excited random walk experiments: simulation, duality, regeneration, limit laws"};
  app.require_subcommand(1);

  struct SubDef {
    const char* name;
    const char* help;
  };
  static const SubDef defs[] = {
      {"simulate", "run replicas and record per-trajectory statistics"},
      {"classify", "compute the total drift parameter and the phase"},
      {"duality", "compare backward jump counts against the branching chain"},
      {"regen", "harvest regeneration cycles and estimate the speed"},
      {"tails", "estimate the first-passage tail index"},
      {"limits", "limit-law comparisons (check = recurrent | critical | transient)"},
      {"multidim", "directional drift and coordinate CLT checks for d >= 2"},
      {"report", "digest previous records into ecdf tables"},
  };

  std::string config_path;
  std::string chosen;
  erw::SuiteIO io;
  uint64_t seed = 0;
  for (const SubDef& def : defs) {
    CLI::App* sub = app.add_subcommand(def.name, def.help);
    sub->add_option("-c,--config", config_path, "experiment config file")->required();
    sub->add_option("-o,--out", io.out_dir, "output directory (default: out)");
    sub->add_option("-w,--workers", io.workers, "worker threads, 0 = all cores");
    CLI::Option* seed_opt = sub->add_option("-s,--seed", seed, "override the config seed");
    std::string name = def.name;
    sub->callback([&io, &chosen, &seed, name, seed_opt] {
      chosen = name;
      io.seed_override = seed_opt->count() > 0;
      io.seed = seed;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return erw::run_experiment(chosen, config_path, io);
}
