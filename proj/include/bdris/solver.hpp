// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "bdris/channel.hpp"
#include "bdris/fp_core.hpp"
#include "bdris/types.hpp"

namespace bdris {

struct SolverOptions {
  double eps_outer = 1e-3;
  double eps_inner = 1e-4;
  int max_outer_iters = 200;
  int max_inner_iters = 100;
  bool record_trajectory = true;
  // re-validate both feasible sets after every inner and outer step
  bool check_feasibility = false;

  static SolverOptions from_config(const SystemConfig& cfg);
};

struct PslaResult {
  Eigen::MatrixXcd value;
  int iters = 0;
};

// Inner loop of the scattering subproblem: repeat
//   Phi <- Theta; Theta <- project_symmetric_unitary((rho1 I - Y) Phi X + M^H)
// with rho1 = spectral_shift(Y) fixed for the whole loop, until the relative
// change of theta_objective drops below eps_inner or max_inner_iters is hit.
// The objective never decreases across iterations. Throws on an infeasible
// start.
PslaResult psla_theta(const SurrogateMatrices& mats, const Eigen::MatrixXcd& theta0,
                      const SolverOptions& opts);

// Inner loop of the precoder subproblem: repeat
//   P <- W; W <- project_power_sphere((rho2 I - F Sigma2 F^H) P + F Sigma1^H)
// with rho2 = spectral_shift(F Sigma2 F^H) fixed for the whole loop, same
// stopping rule, monotone in w_objective. Throws on an infeasible start.
PslaResult psla_w(const Eigen::MatrixXcd& F, const Eigen::VectorXd& alpha,
                  const Eigen::VectorXcd& beta, const Eigen::MatrixXcd& w0,
                  const SystemConfig& cfg, const SolverOptions& opts);

// Scattering state from the two-hop composite (projected onto the manifold),
// precoder matched to the resulting effective channels and scaled onto the
// power sphere.
BeamformingState default_init(const ChannelSet& ch, const SystemConfig& cfg);

struct SolverReport {
  enum class Termination { converged, max_iters };

  double initial_wsr = 0.0;
  std::vector<double> wsr_trajectory;   // one entry per outer iteration
  std::vector<int> inner_iters_w;       // per outer iteration
  std::vector<int> inner_iters_theta;   // per outer iteration
  std::vector<double> iter_elapsed_s;   // cumulative wall time per outer iteration
  double wall_time_total = 0.0;
  double time_w = 0.0;
  double time_theta = 0.0;
  double time_aux = 0.0;
  Termination termination = Termination::max_iters;
  BeamformingState final_state;

  int outer_iterations() const { return static_cast<int>(inner_iters_w.size()); }
  double final_wsr() const {
    return wsr_trajectory.empty() ? initial_wsr : wsr_trajectory.back();
  }
};

// Alternating outer loop: update (alpha, beta) in closed form, run the
// precoder inner loop, then the scattering inner loop, and stop once the
// weighted sum rate moves by at most eps_outer between outer iterations.
SolverReport solve_fp_psla(const ChannelSet& ch, const SystemConfig& cfg,
                           const SolverOptions& opts, const BeamformingState& init);

// default options from cfg, default_init starting point
SolverReport solve_fp_psla(const ChannelSet& ch, const SystemConfig& cfg);

}  // namespace bdris
