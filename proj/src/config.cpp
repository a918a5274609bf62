// SPDX-License-Identifier: Apache-2.0
#include "bdris/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bdris {

namespace {

double dist2d(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("config: " + msg);
}

}  // namespace

void validate(const SystemConfig& cfg) {
  require(cfg.L >= 1, "L must be >= 1");
  require(cfg.N >= 1, "N must be >= 1");
  require(cfg.K >= 1, "K must be >= 1");
  require(cfg.Pt > 0.0, "Pt must be > 0");
  require(static_cast<int>(cfg.noise_powers.size()) == cfg.K,
          "noise_powers must have length K");
  require(static_cast<int>(cfg.weights.size()) == cfg.K,
          "weights must have length K");
  for (double v : cfg.noise_powers) require(v > 0.0, "noise_powers entries must be > 0");
  for (double v : cfg.weights) require(v >= 0.0, "weights entries must be >= 0");
  require(cfg.user_area_diameter >= 0.0, "user_area_diameter must be >= 0");
  require(cfg.pathloss_exp_bs_ris > 0.0, "pathloss_exp_bs_ris must be > 0");
  require(cfg.pathloss_exp_ris_user > 0.0, "pathloss_exp_ris_user must be > 0");
  require(cfg.eps_outer > 0.0, "eps_outer must be > 0");
  require(cfg.eps_inner > 0.0, "eps_inner must be > 0");
  require(cfg.max_outer_iters >= 1, "max_outer_iters must be >= 1");
  require(cfg.max_inner_iters >= 1, "max_inner_iters must be >= 1");
  require(dist2d(cfg.bs_position, cfg.ris_position) > 0.0,
          "bs_position and ris_position must differ");
  require(dist2d(cfg.ris_position, cfg.user_area_center) > cfg.user_area_diameter / 2.0,
          "ris_position must lie outside the user area");
}

double pathloss_linear(double ref_db, double exponent, double distance_m) {
  if (distance_m <= 0.0)
    throw std::invalid_argument("pathloss_linear: distance must be > 0");
  return std::pow(10.0, ref_db / 10.0) * std::pow(distance_m, -exponent);
}

double nominal_two_hop_pathloss(const SystemConfig& cfg) {
  double d1 = dist2d(cfg.bs_position, cfg.ris_position);
  double d2 = dist2d(cfg.ris_position, cfg.user_area_center);
  return pathloss_linear(cfg.pathloss_ref_db, cfg.pathloss_exp_bs_ris, d1) *
         pathloss_linear(cfg.pathloss_ref_db, cfg.pathloss_exp_ris_user, d2);
}

std::vector<double> noise_for_snr(const SystemConfig& cfg, double snr_db) {
  double sigma2 = cfg.Pt * nominal_two_hop_pathloss(cfg) * std::pow(10.0, -snr_db / 10.0);
  return std::vector<double>(static_cast<std::size_t>(cfg.K), sigma2);
}

SystemConfig with_snr(const SystemConfig& cfg, double snr_db) {
  SystemConfig out = cfg;
  out.noise_powers = noise_for_snr(cfg, snr_db);
  return out;
}

SystemConfig with_elements(const SystemConfig& cfg, int n) {
  SystemConfig out = cfg;
  out.N = n;
  return out;
}

SystemConfig default_config() {
  SystemConfig cfg;
  cfg.weights.assign(static_cast<std::size_t>(cfg.K), 1.0);
  cfg.noise_powers = noise_for_snr(cfg, 20.0);
  validate(cfg);
  return cfg;
}

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "L", "N", "K", "Pt", "noise_powers", "weights",
    "bs_position", "ris_position", "user_area_center", "user_area_diameter",
    "pathloss_ref_db", "pathloss_exp_bs_ris", "pathloss_exp_ris_user",
    "eps_outer", "eps_inner", "max_outer_iters", "max_inner_iters", "rng_seed"};

std::array<double, 2> as_point(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("config: " + key + " must be a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const SystemConfig& c) {
  json j;
  j["L"] = c.L;
  j["N"] = c.N;
  j["K"] = c.K;
  j["Pt"] = c.Pt;
  j["noise_powers"] = c.noise_powers;
  j["weights"] = c.weights;
  j["bs_position"] = c.bs_position;
  j["ris_position"] = c.ris_position;
  j["user_area_center"] = c.user_area_center;
  j["user_area_diameter"] = c.user_area_diameter;
  j["pathloss_ref_db"] = c.pathloss_ref_db;
  j["pathloss_exp_bs_ris"] = c.pathloss_exp_bs_ris;
  j["pathloss_exp_ris_user"] = c.pathloss_exp_ris_user;
  j["eps_outer"] = c.eps_outer;
  j["eps_inner"] = c.eps_inner;
  j["max_outer_iters"] = c.max_outer_iters;
  j["max_inner_iters"] = c.max_inner_iters;
  j["rng_seed"] = c.rng_seed;
  return j;
}

}  // namespace

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config: parse error in " + path.string() + ": " + e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("config: top level must be a JSON object");

  for (const auto& item : j.items()) {
    if (!kKnownKeys.count(item.key()))
      throw std::invalid_argument("config: unknown key \"" + item.key() + "\"");
  }

  SystemConfig c = default_config();
  // dimensions first so dependent defaults (noise, weights) can resize
  if (j.contains("L")) c.L = j["L"].get<int>();
  if (j.contains("N")) c.N = j["N"].get<int>();
  if (j.contains("K")) c.K = j["K"].get<int>();
  if (j.contains("Pt")) c.Pt = j["Pt"].get<double>();
  if (j.contains("bs_position")) c.bs_position = as_point(j["bs_position"], "bs_position");
  if (j.contains("ris_position")) c.ris_position = as_point(j["ris_position"], "ris_position");
  if (j.contains("user_area_center"))
    c.user_area_center = as_point(j["user_area_center"], "user_area_center");
  if (j.contains("user_area_diameter")) c.user_area_diameter = j["user_area_diameter"].get<double>();
  if (j.contains("pathloss_ref_db")) c.pathloss_ref_db = j["pathloss_ref_db"].get<double>();
  if (j.contains("pathloss_exp_bs_ris")) c.pathloss_exp_bs_ris = j["pathloss_exp_bs_ris"].get<double>();
  if (j.contains("pathloss_exp_ris_user"))
    c.pathloss_exp_ris_user = j["pathloss_exp_ris_user"].get<double>();
  if (j.contains("eps_outer")) c.eps_outer = j["eps_outer"].get<double>();
  if (j.contains("eps_inner")) c.eps_inner = j["eps_inner"].get<double>();
  if (j.contains("max_outer_iters")) c.max_outer_iters = j["max_outer_iters"].get<int>();
  if (j.contains("max_inner_iters")) c.max_inner_iters = j["max_inner_iters"].get<int>();
  if (j.contains("rng_seed")) c.rng_seed = j["rng_seed"].get<std::uint64_t>();

  if (j.contains("weights"))
    c.weights = j["weights"].get<std::vector<double>>();
  else
    c.weights.assign(static_cast<std::size_t>(c.K), 1.0);
  if (j.contains("noise_powers"))
    c.noise_powers = j["noise_powers"].get<std::vector<double>>();
  else
    c.noise_powers = noise_for_snr(c, 20.0);

  validate(c);
  return c;
}

std::string config_to_json(const SystemConfig& cfg) {
  return to_json(cfg).dump(2);
}

void save_config(const SystemConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("config: cannot write " + path.string());
  out << config_to_json(cfg) << "\n";
}

std::uint64_t config_fingerprint(const SystemConfig& cfg) {
  // FNV-1a over the canonical dump (nlohmann objects iterate key-sorted)
  std::string s = to_json(cfg).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace bdris
