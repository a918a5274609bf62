// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace bdris {

// Nearest point on {Theta : Theta = Theta^T, Theta Theta^H = I} in Frobenius
// distance. Symmetrizes Z, takes an SVD U S V^H with non-increasing singular
// values, completes the rank-R left factor with the conjugated trailing
// columns of V, and returns [U_R, conj(V_(N-R))] V^H. Rank is counted with
// threshold s_i > 1e-10 * s_max; the all-zero input returns the identity
// (every manifold point is equidistant from it).
Eigen::MatrixXcd project_symmetric_unitary(const Eigen::MatrixXcd& z);

// sqrt(pt) * w / ||w||_F; throws std::invalid_argument for pt <= 0 or w = 0
// (the zero matrix has no nearest point on the sphere).
Eigen::MatrixXcd project_power_sphere(const Eigen::MatrixXcd& w, double pt);

// Largest eigenvalue of a Hermitian PSD matrix, so that rho*I - a is PSD.
// Throws std::invalid_argument if a is not Hermitian within tolerance.
double spectral_shift(const Eigen::MatrixXcd& a);

}  // namespace bdris
