// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bdris/config.hpp"
#include "bdris/harness.hpp"
#include "bdris/version.hpp"

namespace bdris::harness {

namespace {

struct CliArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string out;
  int workers = 0;
  std::vector<double> values;
};

void add_common(CLI::App* sub, CliArgs& a) {
  sub->add_option("--config", a.config_path, "system configuration JSON file");
  sub->add_option("--seed", a.seed, "base RNG seed, overrides the config");
  sub->add_option("--trials", a.trials, "Monte Carlo trials per sweep point");
  sub->add_option("--out", a.out, "output CSV path");
  sub->add_option("--workers", a.workers, "worker threads, 0 means all cores");
  sub->add_option("--values", a.values, "sweep values, comma separated")->delimiter(',');
}

ExperimentSpec build_spec(const CLI::App* sub, const CliArgs& a, ExperimentSpec::Mode mode,
                          int default_trials, std::vector<double> default_values) {
  ExperimentSpec spec;
  spec.mode = mode;
  spec.base_config = a.config_path.empty() ? default_config() : load_config(a.config_path);
  if (sub->count("--seed") > 0) spec.base_config.rng_seed = a.seed;
  spec.trials = sub->count("--trials") > 0 ? a.trials : default_trials;
  spec.sweep_values =
      sub->count("--values") > 0 ? a.values : std::move(default_values);
  if (!a.out.empty()) spec.output_path = a.out;
  spec.parallel_workers = a.workers;
  return spec;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"weighted sum-rate simulator for beyond-diagonal RIS downlinks"};
  app.set_version_flag("--version", BDRIS_VERSION);
  app.require_subcommand(1);

  CliArgs a;
  CLI::App* run = app.add_subcommand("run", "single solve, summary on stdout");
  CLI::App* conv = app.add_subcommand("convergence", "per-iteration WSR across SNRs");
  CLI::App* swn = app.add_subcommand("sweep-n", "mean WSR versus surface size");
  CLI::App* sws = app.add_subcommand("sweep-snr", "mean WSR versus transmit SNR");
  CLI::App* tim = app.add_subcommand("timing", "scattering-update cost versus size");
  CLI::App* ver = app.add_subcommand("verify", "run the oracle suite at small sizes");
  for (CLI::App* sub : {run, conv, swn, sws, tim, ver}) add_common(sub, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) {
      run_single(build_spec(run, a, ExperimentSpec::Mode::single, 1, {}));
    } else if (conv->parsed()) {
      run_convergence(build_spec(conv, a, ExperimentSpec::Mode::convergence, 100,
                                 {0.0, 10.0, 20.0}));
    } else if (swn->parsed()) {
      run_sweep_n(build_spec(swn, a, ExperimentSpec::Mode::sweep_n, 100,
                             {16.0, 32.0, 64.0, 128.0}));
    } else if (sws->parsed()) {
      run_sweep_snr(build_spec(sws, a, ExperimentSpec::Mode::sweep_snr, 100,
                               {0.0, 5.0, 10.0, 15.0, 20.0}));
    } else if (tim->parsed()) {
      emit_timing_profile(build_spec(tim, a, ExperimentSpec::Mode::timing, 3,
                                     {16.0, 32.0, 64.0, 128.0, 256.0}));
    } else if (ver->parsed()) {
      std::uint64_t seed = ver->count("--seed") > 0 ? a.seed : 1;
      return run_verify(seed, a.workers, std::cout) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace bdris::harness
