// SPDX-License-Identifier: Apache-2.0
#include "bdris/projections.hpp"

#include <Eigen/SVD>
#include <stdexcept>

#include "bdris/types.hpp"

namespace bdris {

bool is_symmetric_unitary(const Eigen::MatrixXcd& theta, double tol) {
  if (theta.rows() != theta.cols()) return false;
  const Eigen::Index n = theta.rows();
  if ((theta - theta.transpose()).norm() > tol) return false;
  return (theta * theta.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm() <= tol;
}

bool is_power_feasible(const Eigen::MatrixXcd& w, double pt, double rel_tol) {
  return std::abs(w.squaredNorm() - pt) <= rel_tol * pt;
}

void validate_feasible(const BeamformingState& state, const SystemConfig& cfg) {
  if (state.W.rows() != cfg.L || state.W.cols() != cfg.K)
    throw std::runtime_error("state: W must be L x K");
  if (state.Theta.rows() != cfg.N || state.Theta.cols() != cfg.N)
    throw std::runtime_error("state: Theta must be N x N");
  if (!is_power_feasible(state.W, cfg.Pt))
    throw std::runtime_error("state: ||W||_F^2 != Pt beyond tolerance");
  if (!is_symmetric_unitary(state.Theta))
    throw std::runtime_error("state: Theta is off the symmetric unitary manifold");
}

Eigen::MatrixXcd project_symmetric_unitary(const Eigen::MatrixXcd& z) {
  if (z.rows() != z.cols())
    throw std::invalid_argument("project_symmetric_unitary: input must be square");
  const Eigen::Index n = z.rows();

  Eigen::MatrixXcd zs = z + z.transpose();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(zs, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();

  if (s(0) == 0.0) return Eigen::MatrixXcd::Identity(n, n);

  Eigen::Index rank = 0;
  const double cut = 1e-10 * s(0);
  while (rank < n && s(rank) > cut) ++rank;

  if (rank == n) return svd.matrixU() * svd.matrixV().adjoint();

  Eigen::MatrixXcd u(n, n);
  u.leftCols(rank) = svd.matrixU().leftCols(rank);
  u.rightCols(n - rank) = svd.matrixV().rightCols(n - rank).conjugate();
  return u * svd.matrixV().adjoint();
}

Eigen::MatrixXcd project_power_sphere(const Eigen::MatrixXcd& w, double pt) {
  if (pt <= 0.0)
    throw std::invalid_argument("project_power_sphere: power budget must be > 0");
  double norm = w.norm();
  if (norm == 0.0)
    throw std::invalid_argument(
        "project_power_sphere: zero matrix has no nearest point on the sphere");
  return (std::sqrt(pt) / norm) * w;
}

double spectral_shift(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("spectral_shift: input must be square");
  double scale = a.norm();
  if ((a - a.adjoint()).norm() > 1e-8 * std::max(1.0, scale))
    throw std::invalid_argument("spectral_shift: input is not Hermitian");
  if (scale == 0.0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? top : 0.0;
}

}  // namespace bdris
