// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "bdris/types.hpp"

namespace bdris {

// Achievable rate of user k in bits: log2(1 + |f_k^H w_k|^2 / (sum_{j != k}
// |f_k^H w_j|^2 + noise_k)). F is L x K effective channels, W is L x K.
double user_rate(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W, int k,
                 double noise_k);

// sum_k weights[k] * user_rate(k)
double weighted_sum_rate(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                         const SystemConfig& cfg);

// Closed-form auxiliary updates of the fractional-programming reformulation:
// alpha_k is the current SINR of user k; beta_k = sqrt(1 + alpha_k) f_k^H w_k
// / (sum_j |f_k^H w_j|^2 + noise_k).
Eigen::VectorXd update_alpha(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                             const SystemConfig& cfg);
Eigen::VectorXcd update_beta(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                             const Eigen::VectorXd& alpha, const SystemConfig& cfg);

// Reformulated objective
//   sum_k w_k [ 2 sqrt(1+a_k) Re{conj(b_k) f_k^H w_k} - a_k
//               - |b_k|^2 (sum_j |f_k^H w_j|^2 + noise_k) + log2(1+a_k) ].
// At (alpha, beta) from the closed-form updates this equals the weighted sum
// rate exactly.
double surrogate_value(const Eigen::VectorXd& alpha, const Eigen::VectorXcd& beta,
                       const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                       const SystemConfig& cfg);

// Matrix form of the scattering subproblem. With Sigma1 = diag(w_k
// sqrt(1+a_k) conj(b_k)) and Sigma2 = diag(w_k |b_k|^2):
//   M = E W Sigma1 H^H,  X = E W W^H E^H,  Y = H Sigma2 H^H,
// and the Theta-dependent surrogate terms equal
//   2 Re tr(Theta M) - tr(Theta X Theta^H Y).
struct SurrogateMatrices {
  Eigen::MatrixXcd M;      // N x N
  Eigen::MatrixXcd X;      // N x N, Hermitian PSD
  Eigen::MatrixXcd Y;      // N x N, Hermitian PSD
  Eigen::VectorXcd Sigma1; // diagonal entries, length K
  Eigen::VectorXd Sigma2;  // diagonal entries, length K, >= 0
};

SurrogateMatrices build_surrogate_matrices(const ChannelSet& ch,
                                           const Eigen::MatrixXcd& W,
                                           const Eigen::VectorXd& alpha,
                                           const Eigen::VectorXcd& beta,
                                           const SystemConfig& cfg);

// diagonal entries of Sigma1/Sigma2 from (alpha, beta, weights)
void make_sigmas(const Eigen::VectorXd& alpha, const Eigen::VectorXcd& beta,
                 const std::vector<double>& weights, Eigen::VectorXcd& sigma1,
                 Eigen::VectorXd& sigma2);

// 2 Re tr(Theta M) - tr(Theta X Theta^H Y)
double theta_objective(const SurrogateMatrices& mats, const Eigen::MatrixXcd& theta);

// 2 Re tr(Sigma1 F^H W) - tr(W W^H F Sigma2 F^H)
double w_objective(const Eigen::MatrixXcd& F, const Eigen::VectorXcd& sigma1,
                   const Eigen::VectorXd& sigma2, const Eigen::MatrixXcd& W);

}  // namespace bdris
