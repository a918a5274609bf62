// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bdris/rng.hpp"
#include "bdris/types.hpp"

namespace bdris {

// Rayleigh fading with distance path loss: entries are CN(0, P(d)) where
// P(d) = pathloss_linear(ref_db, exponent, d). User positions are drawn
// uniformly over the configured disk, then column k of H is scaled by the
// surface-to-user-k distance. Draw order is fixed (positions, then H by
// columns, then E by columns) so a seed pins the whole set bitwise.
ChannelSet generate_channels(const SystemConfig& cfg, Rng& rng);

// Effective BS->user channels F (L x K) for a given scattering state:
// column k satisfies f_k^H = h_k^H Theta E, i.e. F = E^H Theta^H H.
Eigen::MatrixXcd effective_channels(const ChannelSet& ch, const Eigen::MatrixXcd& theta);

}  // namespace bdris
