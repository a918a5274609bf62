// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "bdris/channel.hpp"
#include "bdris/config.hpp"
#include "bdris/fp_core.hpp"
#include "bdris/oracle.hpp"
#include "bdris/projections.hpp"
#include "bdris/rng.hpp"

namespace bdris::testutil {

inline SystemConfig small_config(int l, int n, int k, std::uint64_t seed,
                                 double snr_db = 20.0) {
  SystemConfig cfg = default_config();
  cfg.L = l;
  cfg.N = n;
  cfg.K = k;
  cfg.weights.assign(static_cast<std::size_t>(k), 1.0);
  cfg.noise_powers = noise_for_snr(cfg, snr_db);
  cfg.rng_seed = seed;
  validate(cfg);
  return cfg;
}

inline Eigen::MatrixXcd random_complex(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_gaussian();
  return g;
}

// random feasible state with the closed-form auxiliaries evaluated at it
struct Instance {
  SystemConfig cfg;
  ChannelSet ch;
  BeamformingState st;
  Eigen::MatrixXcd F;
  Eigen::VectorXd alpha;
  Eigen::VectorXcd beta;
  SurrogateMatrices mats;
};

inline Instance make_instance(int l, int n, int k, std::uint64_t seed) {
  Instance in;
  in.cfg = small_config(l, n, k, seed);
  Rng rng(seed);
  in.ch = generate_channels(in.cfg, rng);
  in.st.Theta = oracle::random_theta_sample(n, rng);
  in.st.W = project_power_sphere(random_complex(l, k, rng), in.cfg.Pt);
  in.F = effective_channels(in.ch, in.st.Theta);
  in.alpha = update_alpha(in.F, in.st.W, in.cfg);
  in.beta = update_beta(in.F, in.st.W, in.alpha, in.cfg);
  in.mats = build_surrogate_matrices(in.ch, in.st.W, in.alpha, in.beta, in.cfg);
  return in;
}

}  // namespace bdris::testutil
