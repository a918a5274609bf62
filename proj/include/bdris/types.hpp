// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

namespace bdris {

// Downlink deployment: a BS with L antennas serves K single-antenna users
// through an N-element fully connected reconfigurable surface. All distances
// are in meters, powers in linear units, tolerances dimensionless.
struct SystemConfig {
  int L = 32;  // BS antennas
  int N = 16;  // surface elements
  int K = 32;  // users

  double Pt = 1.0;                    // total transmit power budget
  std::vector<double> noise_powers;   // per-user noise power, length K
  std::vector<double> weights;        // per-user rate weights, length K

  std::array<double, 2> bs_position{0.0, 0.0};
  std::array<double, 2> ris_position{150.0, 50.0};
  std::array<double, 2> user_area_center{150.0, 0.0};
  double user_area_diameter = 20.0;

  double pathloss_ref_db = -30.0;      // path loss at 1 m, dB
  double pathloss_exp_bs_ris = 2.0;    // BS -> surface exponent
  double pathloss_exp_ris_user = 2.2;  // surface -> user exponent

  double eps_outer = 1e-3;
  double eps_inner = 1e-4;
  int max_outer_iters = 200;
  int max_inner_iters = 100;

  std::uint64_t rng_seed = 1;
};

// throws std::invalid_argument naming the offending field
void validate(const SystemConfig& cfg);

// BS->surface matrix E (N x L) and surface->user matrix H (N x K); h_k is
// column k of H.
struct ChannelSet {
  Eigen::MatrixXcd H;
  Eigen::MatrixXcd E;
};

// Active precoder W (L x K, column k serves user k) on the power sphere
// ||W||_F^2 = Pt, and passive scattering matrix Theta (N x N) on the
// symmetric unitary manifold.
struct BeamformingState {
  Eigen::MatrixXcd W;
  Eigen::MatrixXcd Theta;
};

struct AuxiliaryVars {
  Eigen::VectorXd alpha;   // per-user SINR surrogates, >= 0
  Eigen::VectorXcd beta;   // per-user complex ratio terms
};

bool is_symmetric_unitary(const Eigen::MatrixXcd& theta, double tol = 1e-8);
bool is_power_feasible(const Eigen::MatrixXcd& w, double pt, double rel_tol = 1e-10);

// throws std::runtime_error describing which constraint is violated
void validate_feasible(const BeamformingState& state, const SystemConfig& cfg);

}  // namespace bdris
