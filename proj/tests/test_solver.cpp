// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <doctest.h>

#include "bdris/solver.hpp"
#include "helpers.hpp"

using namespace bdris;

TEST_CASE("options derive from the configuration") {
  SystemConfig cfg = testutil::small_config(4, 4, 2, 1);
  cfg.eps_outer = 5e-4;
  cfg.eps_inner = 2e-5;
  cfg.max_outer_iters = 77;
  cfg.max_inner_iters = 33;
  SolverOptions o = SolverOptions::from_config(cfg);
  CHECK(o.eps_outer == 5e-4);
  CHECK(o.eps_inner == 2e-5);
  CHECK(o.max_outer_iters == 77);
  CHECK(o.max_inner_iters == 33);
  CHECK(o.record_trajectory);
  CHECK_FALSE(o.check_feasibility);
}

TEST_CASE("default initialization is feasible and deterministic") {
  SystemConfig cfg = testutil::small_config(4, 8, 3, 9);
  Rng r1(9), r2(9);
  ChannelSet ch = generate_channels(cfg, r1);
  ChannelSet ch2 = generate_channels(cfg, r2);

  BeamformingState a = default_init(ch, cfg);
  BeamformingState b = default_init(ch2, cfg);
  CHECK_NOTHROW(validate_feasible(a, cfg));
  CHECK((a.W - b.W).norm() == 0.0);
  CHECK((a.Theta - b.Theta).norm() == 0.0);
}

TEST_CASE("each scattering step improves the surrogate") {
  testutil::Instance in = testutil::make_instance(4, 4, 3, 11);
  SolverOptions step;
  step.max_inner_iters = 1;
  step.eps_inner = 1e-30;

  Eigen::MatrixXcd theta = in.st.Theta;
  double prev = theta_objective(in.mats, theta);
  for (int t = 0; t < 25; ++t) {
    theta = psla_theta(in.mats, theta, step).value;
    CHECK(is_symmetric_unitary(theta, 1e-8));
    double obj = theta_objective(in.mats, theta);
    CHECK(obj >= prev - 1e-9 * std::max(1.0, std::abs(prev)));
    prev = obj;
  }
}

TEST_CASE("each precoder step improves the surrogate") {
  testutil::Instance in = testutil::make_instance(4, 4, 3, 12);
  SolverOptions step;
  step.max_inner_iters = 1;
  step.eps_inner = 1e-30;

  Eigen::MatrixXcd w = in.st.W;
  double prev = w_objective(in.F, in.mats.Sigma1, in.mats.Sigma2, w);
  for (int t = 0; t < 25; ++t) {
    w = psla_w(in.F, in.alpha, in.beta, w, in.cfg, step).value;
    CHECK(is_power_feasible(w, in.cfg.Pt));
    double obj = w_objective(in.F, in.mats.Sigma1, in.mats.Sigma2, w);
    CHECK(obj >= prev - 1e-9 * std::max(1.0, std::abs(prev)));
    prev = obj;
  }
}

TEST_CASE("inner loops reject infeasible starting points") {
  testutil::Instance in = testutil::make_instance(4, 4, 3, 13);
  SolverOptions opts;
  CHECK_THROWS_AS(psla_theta(in.mats, 2.0 * in.st.Theta, opts), std::invalid_argument);
  CHECK_THROWS_AS(psla_w(in.F, in.alpha, in.beta, 3.0 * in.st.W, in.cfg, opts),
                  std::invalid_argument);
}

TEST_CASE("inner loops stop once progress stalls") {
  testutil::Instance in = testutil::make_instance(4, 4, 3, 14);

  SolverOptions lax;
  lax.eps_inner = 1e10;  // any step at all counts as converged
  lax.max_inner_iters = 50;
  CHECK(psla_theta(in.mats, in.st.Theta, lax).iters == 1);
  CHECK(psla_w(in.F, in.alpha, in.beta, in.st.W, in.cfg, lax).iters == 1);

  SolverOptions normal;
  normal.eps_inner = 1e-6;
  normal.max_inner_iters = 400;
  CHECK(psla_theta(in.mats, in.st.Theta, normal).iters < 400);
  CHECK(psla_w(in.F, in.alpha, in.beta, in.st.W, in.cfg, normal).iters < 400);
}

TEST_CASE("outer loop produces a monotone rate trajectory") {
  SystemConfig cfg = testutil::small_config(4, 8, 3, 7);
  Rng rng(7);
  ChannelSet ch = generate_channels(cfg, rng);
  SolverReport rep = solve_fp_psla(ch, cfg);

  REQUIRE(rep.outer_iterations() >= 1);
  REQUIRE(rep.wsr_trajectory.size() ==
          static_cast<std::size_t>(rep.outer_iterations()));
  REQUIRE(rep.iter_elapsed_s.size() == rep.wsr_trajectory.size());

  double prev = rep.initial_wsr;
  for (double w : rep.wsr_trajectory) {
    CHECK(w >= prev - 1e-9);
    prev = w;
  }
  for (std::size_t i = 1; i < rep.iter_elapsed_s.size(); ++i)
    CHECK(rep.iter_elapsed_s[i] >= rep.iter_elapsed_s[i - 1]);

  CHECK(rep.termination == SolverReport::Termination::converged);
  CHECK_NOTHROW(validate_feasible(rep.final_state, cfg));
  CHECK(rep.final_wsr() >= rep.initial_wsr);
  CHECK(rep.wall_time_total >= rep.iter_elapsed_s.back());
  CHECK(rep.time_w >= 0.0);
  CHECK(rep.time_theta >= 0.0);
  CHECK(rep.time_aux >= 0.0);
  CHECK(rep.time_w + rep.time_theta + rep.time_aux <= rep.wall_time_total + 1e-3);
}

TEST_CASE("trajectory recording can be disabled without changing the result") {
  SystemConfig cfg = testutil::small_config(4, 6, 2, 15);
  Rng r1(15), r2(15);
  ChannelSet ch1 = generate_channels(cfg, r1);
  ChannelSet ch2 = generate_channels(cfg, r2);

  SolverOptions on = SolverOptions::from_config(cfg);
  SolverOptions off = on;
  off.record_trajectory = false;

  SolverReport full = solve_fp_psla(ch1, cfg, on, default_init(ch1, cfg));
  SolverReport lean = solve_fp_psla(ch2, cfg, off, default_init(ch2, cfg));

  CHECK(lean.wsr_trajectory.size() == 1);
  CHECK(lean.iter_elapsed_s.size() == 1);
  CHECK(lean.outer_iterations() == full.outer_iterations());
  CHECK(lean.final_wsr() == full.final_wsr());
}

TEST_CASE("identical seeds give bitwise identical runs") {
  SystemConfig cfg = testutil::small_config(4, 8, 3, 21);
  Rng r1(21), r2(21);
  ChannelSet ch1 = generate_channels(cfg, r1);
  ChannelSet ch2 = generate_channels(cfg, r2);
  SolverReport a = solve_fp_psla(ch1, cfg);
  SolverReport b = solve_fp_psla(ch2, cfg);

  REQUIRE(a.wsr_trajectory.size() == b.wsr_trajectory.size());
  for (std::size_t i = 0; i < a.wsr_trajectory.size(); ++i)
    CHECK(a.wsr_trajectory[i] == b.wsr_trajectory[i]);
  CHECK((a.final_state.W - b.final_state.W).norm() == 0.0);
  CHECK((a.final_state.Theta - b.final_state.Theta).norm() == 0.0);
}

TEST_CASE("zero weights shortcut the optimization") {
  SystemConfig cfg = testutil::small_config(4, 6, 2, 33);
  cfg.weights.assign(2, 0.0);
  Rng rng(33);
  ChannelSet ch = generate_channels(cfg, rng);
  SolverReport rep = solve_fp_psla(ch, cfg);

  CHECK(rep.outer_iterations() == 1);
  REQUIRE(rep.inner_iters_w.size() == 1);
  CHECK(rep.inner_iters_w[0] == 0);
  CHECK(rep.inner_iters_theta[0] == 0);
  CHECK(rep.final_wsr() == 0.0);
  CHECK(rep.termination == SolverReport::Termination::converged);
  CHECK_NOTHROW(validate_feasible(rep.final_state, cfg));
}

TEST_CASE("feasibility auditing accepts a clean run") {
  SystemConfig cfg = testutil::small_config(4, 6, 2, 41);
  Rng rng(41);
  ChannelSet ch = generate_channels(cfg, rng);
  SolverOptions opts = SolverOptions::from_config(cfg);
  opts.check_feasibility = true;
  CHECK_NOTHROW(solve_fp_psla(ch, cfg, opts, default_init(ch, cfg)));
}

TEST_CASE("bad tolerances and infeasible starts are rejected") {
  SystemConfig cfg = testutil::small_config(4, 6, 2, 51);
  Rng rng(51);
  ChannelSet ch = generate_channels(cfg, rng);
  BeamformingState init = default_init(ch, cfg);

  SolverOptions opts = SolverOptions::from_config(cfg);
  opts.eps_outer = 0.0;
  CHECK_THROWS_AS(solve_fp_psla(ch, cfg, opts, init), std::invalid_argument);

  BeamformingState bad = init;
  bad.W *= 1.5;
  CHECK_THROWS_AS(
      solve_fp_psla(ch, cfg, SolverOptions::from_config(cfg), bad),
      std::runtime_error);
}
