// SPDX-License-Identifier: Apache-2.0
#include "bdris/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "bdris/projections.hpp"

namespace bdris {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

bool inner_converged(double current, double previous, double eps) {
  return std::abs(current - previous) <= eps * std::max(std::abs(current), 1e-12);
}

}  // namespace

SolverOptions SolverOptions::from_config(const SystemConfig& cfg) {
  SolverOptions o;
  o.eps_outer = cfg.eps_outer;
  o.eps_inner = cfg.eps_inner;
  o.max_outer_iters = cfg.max_outer_iters;
  o.max_inner_iters = cfg.max_inner_iters;
  return o;
}

PslaResult psla_theta(const SurrogateMatrices& mats, const Eigen::MatrixXcd& theta0,
                      const SolverOptions& opts) {
  if (!is_symmetric_unitary(theta0))
    throw std::invalid_argument("psla_theta: infeasible starting point");

  const Eigen::Index n = theta0.rows();
  double rho1 = spectral_shift(mats.Y);
  Eigen::MatrixXcd shifted = rho1 * Eigen::MatrixXcd::Identity(n, n) - mats.Y;
  Eigen::MatrixXcd mh = mats.M.adjoint();

  PslaResult res;
  res.value = theta0;
  double prev = theta_objective(mats, res.value);
  for (int t = 1; t <= opts.max_inner_iters; ++t) {
    res.value = project_symmetric_unitary(shifted * res.value * mats.X + mh);
    res.iters = t;
    if (opts.check_feasibility && !is_symmetric_unitary(res.value))
      throw std::runtime_error("psla_theta: iterate left the manifold");
    double obj = theta_objective(mats, res.value);
    if (inner_converged(obj, prev, opts.eps_inner)) break;
    prev = obj;
  }
  return res;
}

PslaResult psla_w(const Eigen::MatrixXcd& F, const Eigen::VectorXd& alpha,
                  const Eigen::VectorXcd& beta, const Eigen::MatrixXcd& w0,
                  const SystemConfig& cfg, const SolverOptions& opts) {
  if (F.rows() != cfg.L || F.cols() != cfg.K)
    throw std::invalid_argument("psla_w: F must be L x K");
  if (!is_power_feasible(w0, cfg.Pt))
    throw std::invalid_argument("psla_w: infeasible starting point");

  Eigen::VectorXcd sigma1;
  Eigen::VectorXd sigma2;
  make_sigmas(alpha, beta, cfg.weights, sigma1, sigma2);

  Eigen::MatrixXcd fs = F * sigma2.cwiseSqrt().asDiagonal();
  Eigen::MatrixXcd quad = fs * fs.adjoint();  // F Sigma2 F^H, L x L
  double rho2 = spectral_shift(quad);
  Eigen::MatrixXcd shifted =
      rho2 * Eigen::MatrixXcd::Identity(cfg.L, cfg.L) - quad;
  Eigen::MatrixXcd linear = F * sigma1.conjugate().asDiagonal();  // F Sigma1^H

  PslaResult res;
  res.value = w0;
  double prev = w_objective(F, sigma1, sigma2, res.value);
  for (int t = 1; t <= opts.max_inner_iters; ++t) {
    res.value = project_power_sphere(shifted * res.value + linear, cfg.Pt);
    res.iters = t;
    if (opts.check_feasibility && !is_power_feasible(res.value, cfg.Pt))
      throw std::runtime_error("psla_w: iterate left the power sphere");
    double obj = w_objective(F, sigma1, sigma2, res.value);
    if (inner_converged(obj, prev, opts.eps_inner)) break;
    prev = obj;
  }
  return res;
}

BeamformingState default_init(const ChannelSet& ch, const SystemConfig& cfg) {
  validate(cfg);
  Eigen::MatrixXcd rect = Eigen::MatrixXcd::Identity(cfg.K, cfg.L);
  BeamformingState st;
  st.Theta = project_symmetric_unitary(ch.H * rect * ch.E.adjoint());
  Eigen::MatrixXcd F = effective_channels(ch, st.Theta);
  double fnorm = F.norm();
  if (fnorm == 0.0)
    throw std::runtime_error("default_init: effective channels are identically zero");
  // matched-filter direction at reduced power, then rescaled onto the sphere
  Eigen::MatrixXcd w_mrt = std::sqrt(0.4 * cfg.Pt) / fnorm * F;
  st.W = project_power_sphere(w_mrt, cfg.Pt);
  return st;
}

SolverReport solve_fp_psla(const ChannelSet& ch, const SystemConfig& cfg,
                           const SolverOptions& opts, const BeamformingState& init) {
  validate(cfg);
  validate_feasible(init, cfg);
  if (opts.eps_outer <= 0.0 || opts.eps_inner <= 0.0)
    throw std::invalid_argument("solve_fp_psla: tolerances must be > 0");
  if (opts.max_outer_iters < 1 || opts.max_inner_iters < 1)
    throw std::invalid_argument("solve_fp_psla: iteration caps must be >= 1");

  auto t0 = clock_type::now();
  SolverReport rep;
  rep.final_state = init;

  Eigen::MatrixXcd F = effective_channels(ch, rep.final_state.Theta);
  rep.initial_wsr = weighted_sum_rate(F, rep.final_state.W, cfg);
  double wsr_prev = rep.initial_wsr;

  for (int n = 1; n <= opts.max_outer_iters; ++n) {
    auto t_aux = clock_type::now();
    Eigen::VectorXd alpha = update_alpha(F, rep.final_state.W, cfg);
    Eigen::VectorXcd beta = update_beta(F, rep.final_state.W, alpha, cfg);
    rep.time_aux += seconds_since(t_aux);

    Eigen::VectorXcd sigma1;
    Eigen::VectorXd sigma2;
    make_sigmas(alpha, beta, cfg.weights, sigma1, sigma2);
    bool degenerate = sigma1.norm() + sigma2.norm() == 0.0;

    if (degenerate) {
      // nothing to optimize against; keep the incumbent state
      rep.inner_iters_w.push_back(0);
      rep.inner_iters_theta.push_back(0);
    } else {
      auto t_w = clock_type::now();
      PslaResult rw = psla_w(F, alpha, beta, rep.final_state.W, cfg, opts);
      rep.time_w += seconds_since(t_w);
      rep.final_state.W = rw.value;
      rep.inner_iters_w.push_back(rw.iters);

      auto t_th = clock_type::now();
      SurrogateMatrices mats =
          build_surrogate_matrices(ch, rep.final_state.W, alpha, beta, cfg);
      PslaResult rt = psla_theta(mats, rep.final_state.Theta, opts);
      rep.time_theta += seconds_since(t_th);
      rep.final_state.Theta = rt.value;
      rep.inner_iters_theta.push_back(rt.iters);

      F = effective_channels(ch, rep.final_state.Theta);
    }

    if (opts.check_feasibility) validate_feasible(rep.final_state, cfg);

    double wsr = weighted_sum_rate(F, rep.final_state.W, cfg);
    if (opts.record_trajectory || rep.wsr_trajectory.empty()) {
      rep.wsr_trajectory.push_back(wsr);
      rep.iter_elapsed_s.push_back(seconds_since(t0));
    } else {
      rep.wsr_trajectory.back() = wsr;
      rep.iter_elapsed_s.back() = seconds_since(t0);
    }

    if (std::abs(wsr - wsr_prev) <= opts.eps_outer) {
      rep.termination = SolverReport::Termination::converged;
      break;
    }
    wsr_prev = wsr;
  }

  rep.wall_time_total = seconds_since(t0);
  return rep;
}

SolverReport solve_fp_psla(const ChannelSet& ch, const SystemConfig& cfg) {
  return solve_fp_psla(ch, cfg, SolverOptions::from_config(cfg), default_init(ch, cfg));
}

}  // namespace bdris
