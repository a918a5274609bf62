// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bdris/fp_core.hpp"
#include "bdris/rng.hpp"
#include "bdris/types.hpp"

// Independent brute-force verifiers. Everything here evaluates objectives
// with element-wise loops on matrix coefficients, never through the trace
// identities or helper routines the solver uses, so agreement between the
// two paths is evidence rather than tautology. Sizes are deliberately small
// (N <= 4, L <= 4, K <= 3 in the checks that use these).
namespace bdris::oracle {

// Feasible scattering samples: projections of complex Gaussian matrices,
// diversified by random unitary congruences Q Theta Q^T (which preserve both
// symmetry and unitarity).
Eigen::MatrixXcd random_theta_sample(int n, Rng& rng);
std::vector<Eigen::MatrixXcd> random_feasible_theta(int n, int count, Rng& rng);

// 2 Re tr(Theta M) - tr(Theta X Theta^H Y) via quadruple loops
double naive_theta_objective(const SurrogateMatrices& mats,
                             const Eigen::MatrixXcd& theta);

struct SearchResult {
  double value = 0.0;
  Eigen::MatrixXcd theta;
};

SearchResult brute_force_theta_objective(const SurrogateMatrices& mats,
                                         const std::vector<Eigen::MatrixXcd>& samples);

// Streaming variant for large sample budgets: draws count samples from the
// seeded generator, splitting them across workers deterministically.
SearchResult best_theta_random_search(const SurrogateMatrices& mats, int count,
                                      std::uint64_t seed, int workers);

// log2(1 + Pt ||h_1||^2 sigma_max(E)^2 / noise_1); requires K = 1
double single_user_bound(const ChannelSet& ch, const SystemConfig& cfg);

// max over `count` random feasible Theta of ||h_1^H Theta E||, used to
// confirm the bound above is attainable on the manifold; requires K = 1
double best_single_user_gain(const ChannelSet& ch, int count, std::uint64_t seed,
                             int workers);

// |central finite difference slope - analytic_slope| / max(|analytic_slope|, tiny)
double fd_relative_error(const std::function<double(const Eigen::MatrixXcd&)>& objective,
                         const Eigen::MatrixXcd& point, const Eigen::MatrixXcd& direction,
                         double analytic_slope, double step);

// Slope consistency of the linearized scattering surrogate at Phi = theta:
// compares the analytic slope of the linearization against a central finite
// difference of the shifted true objective 2 Re tr(Theta M) + tr(Theta X
// Theta^H (rho1 I - Y)) along `direction`; returns the relative discrepancy.
double finite_difference_check(const SurrogateMatrices& mats, double rho1,
                               const Eigen::MatrixXcd& theta,
                               const Eigen::MatrixXcd& direction, double step);

// random unit-norm tangent direction i(S Theta + Theta S^T), S Hermitian
Eigen::MatrixXcd tangent_direction(const Eigen::MatrixXcd& theta, Rng& rng);

}  // namespace bdris::oracle
