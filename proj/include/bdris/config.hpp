// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bdris/types.hpp"

namespace bdris {

// Simulation defaults: L = K = 32, N = 16, unit weights, equal noise powers
// set for a 20 dB transmit SNR (see noise_for_snr below).
SystemConfig default_config();

// Reads a flat JSON object. Unknown keys are rejected, missing file or
// malformed values throw with the key/path in the message.
SystemConfig load_config(const std::filesystem::path& path);

void save_config(const SystemConfig& cfg, const std::filesystem::path& path);
std::string config_to_json(const SystemConfig& cfg);

// Stable 64-bit FNV-1a fingerprint of the canonical JSON form; stamped into
// every CSV the harness emits.
std::uint64_t config_fingerprint(const SystemConfig& cfg);

// 10^(ref_db/10) * d^(-exponent); requires d > 0
double pathloss_linear(double ref_db, double exponent, double distance_m);

// Reference two-hop budget: path loss BS->surface times path loss from the
// surface to the center of the user area.
double nominal_two_hop_pathloss(const SystemConfig& cfg);

// Per-user noise power for a given transmit SNR. SNR is Pt over noise in dB,
// with noise expressed in units of the nominal two-hop path loss, so the
// received SINR scale is set by the deployment geometry rather than by the
// raw (~ -140 dB) cascade loss.
std::vector<double> noise_for_snr(const SystemConfig& cfg, double snr_db);

// copy of cfg with noise_powers set for snr_db
SystemConfig with_snr(const SystemConfig& cfg, double snr_db);

// copy of cfg with a different surface size
SystemConfig with_elements(const SystemConfig& cfg, int n);

}  // namespace bdris
