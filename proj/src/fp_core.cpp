// SPDX-License-Identifier: Apache-2.0
#include "bdris/fp_core.hpp"

#include <cmath>
#include <stdexcept>

namespace bdris {

namespace {

void check_dims(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                const SystemConfig& cfg, const char* where) {
  if (F.rows() != cfg.L || F.cols() != cfg.K)
    throw std::invalid_argument(std::string(where) + ": F must be L x K");
  if (W.rows() != cfg.L || W.cols() != cfg.K)
    throw std::invalid_argument(std::string(where) + ": W must be L x K");
}

}  // namespace

double user_rate(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W, int k,
                 double noise_k) {
  if (F.rows() != W.rows() || F.cols() != W.cols())
    throw std::invalid_argument("user_rate: F and W dimensions differ");
  if (k < 0 || k >= F.cols())
    throw std::invalid_argument("user_rate: user index out of range");
  if (noise_k <= 0.0)
    throw std::invalid_argument("user_rate: noise power must be > 0");

  Eigen::RowVectorXcd g = F.col(k).adjoint() * W;  // f_k^H w_j for all j
  double signal = std::norm(g(k));
  double interference = 0.0;
  for (Eigen::Index j = 0; j < g.size(); ++j)
    if (j != k) interference += std::norm(g(j));
  return std::log2(1.0 + signal / (interference + noise_k));
}

double weighted_sum_rate(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                         const SystemConfig& cfg) {
  check_dims(F, W, cfg, "weighted_sum_rate");
  double wsr = 0.0;
  for (int k = 0; k < cfg.K; ++k)
    wsr += cfg.weights[static_cast<std::size_t>(k)] *
           user_rate(F, W, k, cfg.noise_powers[static_cast<std::size_t>(k)]);
  return wsr;
}

Eigen::VectorXd update_alpha(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                             const SystemConfig& cfg) {
  check_dims(F, W, cfg, "update_alpha");
  Eigen::MatrixXcd G = F.adjoint() * W;  // G(k, j) = f_k^H w_j
  Eigen::VectorXd alpha(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double signal = std::norm(G(k, k));
    double interference = 0.0;
    for (int j = 0; j < cfg.K; ++j)
      if (j != k) interference += std::norm(G(k, j));
    alpha(k) = signal / (interference + cfg.noise_powers[static_cast<std::size_t>(k)]);
  }
  return alpha;
}

Eigen::VectorXcd update_beta(const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                             const Eigen::VectorXd& alpha, const SystemConfig& cfg) {
  check_dims(F, W, cfg, "update_beta");
  if (alpha.size() != cfg.K)
    throw std::invalid_argument("update_beta: alpha must have length K");
  Eigen::MatrixXcd G = F.adjoint() * W;
  Eigen::VectorXcd beta(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double total = cfg.noise_powers[static_cast<std::size_t>(k)];
    for (int j = 0; j < cfg.K; ++j) total += std::norm(G(k, j));
    beta(k) = std::sqrt(1.0 + alpha(k)) * G(k, k) / total;
  }
  return beta;
}

double surrogate_value(const Eigen::VectorXd& alpha, const Eigen::VectorXcd& beta,
                       const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                       const SystemConfig& cfg) {
  check_dims(F, W, cfg, "surrogate_value");
  if (alpha.size() != cfg.K || beta.size() != cfg.K)
    throw std::invalid_argument("surrogate_value: alpha/beta must have length K");
  Eigen::MatrixXcd G = F.adjoint() * W;
  double value = 0.0;
  for (int k = 0; k < cfg.K; ++k) {
    double total = cfg.noise_powers[static_cast<std::size_t>(k)];
    for (int j = 0; j < cfg.K; ++j) total += std::norm(G(k, j));
    double hk = 2.0 * std::sqrt(1.0 + alpha(k)) * std::real(std::conj(beta(k)) * G(k, k)) -
                alpha(k) - std::norm(beta(k)) * total + std::log2(1.0 + alpha(k));
    value += cfg.weights[static_cast<std::size_t>(k)] * hk;
  }
  return value;
}

void make_sigmas(const Eigen::VectorXd& alpha, const Eigen::VectorXcd& beta,
                 const std::vector<double>& weights, Eigen::VectorXcd& sigma1,
                 Eigen::VectorXd& sigma2) {
  const Eigen::Index k = alpha.size();
  if (beta.size() != k || static_cast<Eigen::Index>(weights.size()) != k)
    throw std::invalid_argument("make_sigmas: alpha/beta/weights lengths differ");
  sigma1.resize(k);
  sigma2.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    double w = weights[static_cast<std::size_t>(i)];
    sigma1(i) = w * std::sqrt(1.0 + alpha(i)) * std::conj(beta(i));
    sigma2(i) = w * std::norm(beta(i));
  }
}

SurrogateMatrices build_surrogate_matrices(const ChannelSet& ch,
                                           const Eigen::MatrixXcd& W,
                                           const Eigen::VectorXd& alpha,
                                           const Eigen::VectorXcd& beta,
                                           const SystemConfig& cfg) {
  if (ch.H.rows() != cfg.N || ch.H.cols() != cfg.K)
    throw std::invalid_argument("build_surrogate_matrices: H must be N x K");
  if (ch.E.rows() != cfg.N || ch.E.cols() != cfg.L)
    throw std::invalid_argument("build_surrogate_matrices: E must be N x L");
  if (W.rows() != cfg.L || W.cols() != cfg.K)
    throw std::invalid_argument("build_surrogate_matrices: W must be L x K");
  if (alpha.size() != cfg.K || beta.size() != cfg.K)
    throw std::invalid_argument("build_surrogate_matrices: alpha/beta must have length K");

  SurrogateMatrices m;
  make_sigmas(alpha, beta, cfg.weights, m.Sigma1, m.Sigma2);
  Eigen::MatrixXcd ew = ch.E * W;  // N x K
  m.M = ew * m.Sigma1.asDiagonal() * ch.H.adjoint();
  m.X = ew * ew.adjoint();
  // product form keeps Y Hermitian PSD to machine precision
  Eigen::MatrixXcd hs = ch.H * m.Sigma2.cwiseSqrt().asDiagonal();
  m.Y = hs * hs.adjoint();
  return m;
}

double theta_objective(const SurrogateMatrices& mats, const Eigen::MatrixXcd& theta) {
  const Eigen::Index n = theta.rows();
  if (theta.cols() != n || mats.M.rows() != n || mats.M.cols() != n ||
      mats.X.rows() != n || mats.X.cols() != n || mats.Y.rows() != n || mats.Y.cols() != n)
    throw std::invalid_argument("theta_objective: dimension mismatch");
  // tr(AB) = sum_ij A_ij B_ji
  double linear = 2.0 * theta.cwiseProduct(mats.M.transpose()).sum().real();
  Eigen::MatrixXcd tx = theta * mats.X;
  Eigen::MatrixXcd ty = theta.adjoint() * mats.Y;
  double quad = tx.cwiseProduct(ty.transpose()).sum().real();
  return linear - quad;
}

double w_objective(const Eigen::MatrixXcd& F, const Eigen::VectorXcd& sigma1,
                   const Eigen::VectorXd& sigma2, const Eigen::MatrixXcd& W) {
  if (F.rows() != W.rows() || F.cols() != W.cols())
    throw std::invalid_argument("w_objective: F and W dimensions differ");
  if (sigma1.size() != F.cols() || sigma2.size() != F.cols())
    throw std::invalid_argument("w_objective: sigma lengths must equal K");
  Eigen::MatrixXcd G = F.adjoint() * W;  // K x K
  double linear = 2.0 * (sigma1.asDiagonal() * G).trace().real();
  double quad = 0.0;
  for (Eigen::Index j = 0; j < G.rows(); ++j)
    for (Eigen::Index k = 0; k < G.cols(); ++k) quad += sigma2(j) * std::norm(G(j, k));
  return linear - quad;
}

}  // namespace bdris
