// SPDX-License-Identifier: Apache-2.0
#include "bdris/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "bdris/config.hpp"

namespace bdris {

ChannelSet generate_channels(const SystemConfig& cfg, Rng& rng) {
  validate(cfg);

  const double two_pi = 6.283185307179586476925286766559;
  const double radius = cfg.user_area_diameter / 2.0;

  // user positions, uniform over the disk
  std::vector<std::array<double, 2>> users(static_cast<std::size_t>(cfg.K));
  for (auto& u : users) {
    double r = radius * std::sqrt(rng.uniform());
    double phi = two_pi * rng.uniform();
    u = {cfg.user_area_center[0] + r * std::cos(phi),
         cfg.user_area_center[1] + r * std::sin(phi)};
  }

  ChannelSet ch;
  ch.H.resize(cfg.N, cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    double d = std::hypot(users[static_cast<std::size_t>(k)][0] - cfg.ris_position[0],
                          users[static_cast<std::size_t>(k)][1] - cfg.ris_position[1]);
    double scale = std::sqrt(pathloss_linear(cfg.pathloss_ref_db, cfg.pathloss_exp_ris_user, d));
    for (int n = 0; n < cfg.N; ++n) ch.H(n, k) = scale * rng.complex_gaussian();
  }

  ch.E.resize(cfg.N, cfg.L);
  {
    double d = std::hypot(cfg.bs_position[0] - cfg.ris_position[0],
                          cfg.bs_position[1] - cfg.ris_position[1]);
    double scale = std::sqrt(pathloss_linear(cfg.pathloss_ref_db, cfg.pathloss_exp_bs_ris, d));
    for (int l = 0; l < cfg.L; ++l)
      for (int n = 0; n < cfg.N; ++n) ch.E(n, l) = scale * rng.complex_gaussian();
  }
  return ch;
}

Eigen::MatrixXcd effective_channels(const ChannelSet& ch, const Eigen::MatrixXcd& theta) {
  if (ch.H.rows() != ch.E.rows())
    throw std::invalid_argument("effective_channels: H and E row counts differ");
  if (theta.rows() != ch.H.rows() || theta.cols() != ch.H.rows())
    throw std::invalid_argument("effective_channels: Theta must be N x N");
  return ch.E.adjoint() * theta.adjoint() * ch.H;
}

}  // namespace bdris
