// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "bdris/solver.hpp"
#include "bdris/types.hpp"

namespace bdris::harness {

struct ExperimentSpec {
  enum class Mode { single, convergence, sweep_n, sweep_snr, timing };

  Mode mode = Mode::single;
  SystemConfig base_config;
  int trials = 100;
  std::vector<double> sweep_values;  // SNRs in dB, or surface sizes for sweep_n/timing
  std::filesystem::path output_path; // empty: derived from mode and BDRIS_OUTPUT_DIR
  int parallel_workers = 0;          // 0: hardware concurrency
};

// Runs trial t with RNG seed base_config.rng_seed + t; user positions and
// fading are redrawn every trial. Trials are distributed over a bounded
// worker pool and merged by trial index, so results do not depend on the
// worker count.
void run_single(const ExperimentSpec& spec);
void run_convergence(const ExperimentSpec& spec);
void run_sweep_n(const ExperimentSpec& spec);
void run_sweep_snr(const ExperimentSpec& spec);
void emit_timing_profile(const ExperimentSpec& spec);

// per-size scattering-loop cost, also used by the acceptance checks
struct TimingRow {
  int n = 0;
  double mean_inner_theta_s = 0.0;
  long inner_iters = 0;
};
std::vector<TimingRow> measure_theta_scaling(const SystemConfig& base, const std::vector<int>& sizes,
                                             int trials, std::uint64_t seed);
struct WTimingRow {
  int n = 0;
  double mean_inner_w_s = 0.0;
  long inner_iters = 0;
};
std::vector<WTimingRow> measure_w_scaling(const SystemConfig& base, const std::vector<int>& sizes,
                                          int trials, std::uint64_t seed);

// least-squares slope of log(y) against log(x)
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Reduced oracle suite at N = 4 (manifold membership, projection optimality
// against sampling, surrogate identities and bounds, single-user
// achievability, finite differences). Prints one line per check to `out`,
// returns true only if all pass.
bool run_verify(std::uint64_t seed, int workers, std::ostream& out);

// index-sharded loop with a bounded pool; exceptions from workers are
// rethrown on the caller thread
void parallel_for(int count, int workers, const std::function<void(int)>& body);

// convergence/sweep/timing/verify subcommands; returns a process exit code
int cli_main(int argc, const char* const* argv);

}  // namespace bdris::harness
