#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "rwre/errors.hpp"
#include "rwre/run.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::string in_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 1;
  bool raw = false;
  bool strict = false;
  bool quenched = false;
  bool quenched_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--in", opts.in_dir, "input directory (regen-scan)");
  cmd->add_option("--seed", opts.seed, "override the master seed")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--workers", opts.workers, "worker threads (results are worker-independent)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--raw", opts.raw, "also write per-replica raw statistics");
  cmd->add_flag("--strict", opts.strict, "exit 3 on an Inconclusive verdict");
  cmd->add_flag("--quenched", opts.quenched, "share one environment across replicas")
      ->each([&opts](const std::string&) { opts.quenched_set = true; });
}

int run(const CommonOpts& opts, const std::string& subcommand) {
  rwre::ExperimentConfig config = rwre::load_config(opts.config_path);
  if (opts.seed_set) config.master_seed = opts.seed;
  if (opts.quenched_set) config.quenched = opts.quenched;
  config.workers = opts.workers;
  config.out_dir = opts.out_dir;
  config.in_dir = opts.in_dir;
  config.raw = opts.raw;
  config.strict = opts.strict;
  const rwre::RunResult result = rwre::run_subcommand(config, subcommand);
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random walks in random environments on Z with bounded jumps"};
  app.set_version_flag("--version", rwre::kToolVersion);
  app.require_subcommand(1);

  const char* subcommands[] = {"simulate", "regen-scan", "cascade",
                               "estimate", "oracle", "verdict"};
  const char* descriptions[] = {
      "fixed-length trajectories: endpoint summary plus trajectory dumps",
      "regeneration times and increments of dumped trajectories",
      "cascade realization: coalescence points and occupation samples",
      "all velocity estimators with standard errors",
      "closed-form and linear-system reference values",
      "ballistic / zero-speed / inconclusive classification",
  };
  CommonOpts opts[6];
  for (int i = 0; i < 6; ++i) {
    add_common(app.add_subcommand(subcommands[i], descriptions[i]), opts[i]);
  }

  CLI11_PARSE(app, argc, argv);

  for (int i = 0; i < 6; ++i) {
    if (!app.get_subcommand(subcommands[i])->parsed()) continue;
    try {
      return run(opts[i], subcommands[i]);
    } catch (const rwre::ConfigError& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 2;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  return 1;
}
