// SPDX-License-Identifier: Apache-2.0
#include "bdris/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "bdris/channel.hpp"
#include "bdris/config.hpp"
#include "bdris/oracle.hpp"
#include "bdris/projections.hpp"
#include "bdris/version.hpp"

namespace bdris::harness {

namespace {

using clock_type = std::chrono::steady_clock;

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::filesystem::path resolve_output(const ExperimentSpec& spec, const char* stem) {
  if (!spec.output_path.empty()) return spec.output_path;
  const char* dir = std::getenv("BDRIS_OUTPUT_DIR");
  std::filesystem::path base = dir ? dir : ".";
  return base / (std::string(stem) + ".csv");
}

std::ofstream open_csv(const std::filesystem::path& path, const SystemConfig& cfg,
                       const char* header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("harness: cannot write " + path.string());
  char line[128];
  std::snprintf(line, sizeof(line), "# config_hash=%016llx seed=%llu version=%s\n",
                static_cast<unsigned long long>(config_fingerprint(cfg)),
                static_cast<unsigned long long>(cfg.rng_seed), BDRIS_VERSION);
  out << line << header << "\n";
  return out;
}

std::string fmt_g(double v, int digits = 15) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

SolverReport run_trial(const SystemConfig& cfg, std::uint64_t trial_seed) {
  SystemConfig c = cfg;
  c.rng_seed = trial_seed;
  Rng rng(trial_seed);
  ChannelSet ch = generate_channels(c, rng);
  return solve_fp_psla(ch, c, SolverOptions::from_config(c), default_init(ch, c));
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats compute_stats(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  if (count <= 0) return;
  workers = std::min(resolve_workers(workers), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void run_single(const ExperimentSpec& spec) {
  const SystemConfig& cfg = spec.base_config;
  validate(cfg);
  SolverReport rep = run_trial(cfg, cfg.rng_seed);

  if (!spec.output_path.empty()) {
    std::ofstream out = open_csv(spec.output_path, cfg, "outer_iter,wsr,elapsed_s");
    for (std::size_t i = 0; i < rep.wsr_trajectory.size(); ++i)
      out << (i + 1) << "," << fmt_g(rep.wsr_trajectory[i]) << ","
          << fmt_g(rep.iter_elapsed_s[i], 6) << "\n";
  }

  std::cout << "wsr " << fmt_g(rep.final_wsr()) << " bits\n"
            << "outer_iterations " << rep.outer_iterations() << "\n"
            << "termination "
            << (rep.termination == SolverReport::Termination::converged ? "converged"
                                                                        : "max_iters")
            << "\n"
            << "wall_time_s " << fmt_g(rep.wall_time_total, 6) << "\n";
}

void run_convergence(const ExperimentSpec& spec) {
  const SystemConfig& base = spec.base_config;
  validate(base);
  if (spec.trials < 1) throw std::invalid_argument("harness: trials must be >= 1");
  if (spec.sweep_values.empty())
    throw std::invalid_argument("harness: convergence needs at least one SNR value");

  const int snrs = static_cast<int>(spec.sweep_values.size());
  const int total = snrs * spec.trials;
  std::vector<SolverReport> reports(static_cast<std::size_t>(total));
  parallel_for(total, spec.parallel_workers, [&](int idx) {
    int si = idx / spec.trials;
    int t = idx % spec.trials;
    SystemConfig cfg = with_snr(base, spec.sweep_values[static_cast<std::size_t>(si)]);
    reports[static_cast<std::size_t>(idx)] =
        run_trial(cfg, base.rng_seed + static_cast<std::uint64_t>(t));
  });

  std::ofstream out = open_csv(resolve_output(spec, "convergence"), base,
                               "snr_db,trial,outer_iter,wsr,elapsed_s");
  for (int si = 0; si < snrs; ++si)
    for (int t = 0; t < spec.trials; ++t) {
      const SolverReport& rep = reports[static_cast<std::size_t>(si * spec.trials + t)];
      for (std::size_t i = 0; i < rep.wsr_trajectory.size(); ++i)
        out << fmt_g(spec.sweep_values[static_cast<std::size_t>(si)], 10) << "," << t << ","
            << (i + 1) << "," << fmt_g(rep.wsr_trajectory[i]) << ","
            << fmt_g(rep.iter_elapsed_s[i], 6) << "\n";
    }
}

namespace {

void run_aggregate_sweep(const ExperimentSpec& spec, bool sweep_elements,
                         const char* stem, const char* header) {
  const SystemConfig& base = spec.base_config;
  validate(base);
  if (spec.trials < 1) throw std::invalid_argument("harness: trials must be >= 1");
  if (spec.sweep_values.empty())
    throw std::invalid_argument("harness: sweep needs at least one value");

  const int vals = static_cast<int>(spec.sweep_values.size());
  const int total = vals * spec.trials;
  std::vector<double> wsr(static_cast<std::size_t>(total));
  std::vector<double> time_s(static_cast<std::size_t>(total));
  parallel_for(total, spec.parallel_workers, [&](int idx) {
    int vi = idx / spec.trials;
    int t = idx % spec.trials;
    double value = spec.sweep_values[static_cast<std::size_t>(vi)];
    SystemConfig cfg = sweep_elements ? with_elements(base, static_cast<int>(value))
                                      : with_snr(base, value);
    SolverReport rep = run_trial(cfg, base.rng_seed + static_cast<std::uint64_t>(t));
    wsr[static_cast<std::size_t>(idx)] = rep.final_wsr();
    time_s[static_cast<std::size_t>(idx)] = rep.wall_time_total;
  });

  std::ofstream out = open_csv(resolve_output(spec, stem), base, header);
  std::vector<Stats> stats(static_cast<std::size_t>(vals));
  for (int vi = 0; vi < vals; ++vi) {
    std::vector<double> w(wsr.begin() + vi * spec.trials,
                          wsr.begin() + (vi + 1) * spec.trials);
    std::vector<double> ts(time_s.begin() + vi * spec.trials,
                           time_s.begin() + (vi + 1) * spec.trials);
    stats[static_cast<std::size_t>(vi)] = compute_stats(w);
    const Stats& s = stats[static_cast<std::size_t>(vi)];
    out << fmt_g(spec.sweep_values[static_cast<std::size_t>(vi)], 10) << ","
        << fmt_g(s.mean) << "," << fmt_g(s.stddev) << ","
        << fmt_g(compute_stats(ts).mean, 6) << "\n";
  }

  if (sweep_elements) {
    // larger surfaces should not hurt on average; flag clear reversals
    for (int vi = 1; vi < vals; ++vi) {
      const Stats& prev = stats[static_cast<std::size_t>(vi - 1)];
      const Stats& cur = stats[static_cast<std::size_t>(vi)];
      if (cur.mean + cur.stddev < prev.mean)
        std::cerr << "warning: mean wsr drops from n="
                  << spec.sweep_values[static_cast<std::size_t>(vi - 1)] << " to n="
                  << spec.sweep_values[static_cast<std::size_t>(vi)]
                  << " by more than one standard deviation\n";
    }
  }
}

}  // namespace

void run_sweep_n(const ExperimentSpec& spec) {
  run_aggregate_sweep(spec, true, "sweep_n", "n,mean_wsr,std_wsr,mean_time_s");
}

void run_sweep_snr(const ExperimentSpec& spec) {
  run_aggregate_sweep(spec, false, "sweep_snr", "snr_db,mean_wsr,std_wsr,mean_time_s");
}

std::vector<TimingRow> measure_theta_scaling(const SystemConfig& base,
                                             const std::vector<int>& sizes, int trials,
                                             std::uint64_t seed) {
  std::vector<TimingRow> rows;
  SolverOptions opts;
  opts.eps_inner = 1e-12;  // run the loop to the cap so means are stable
  opts.max_inner_iters = 12;
  for (int n : sizes) {
    SystemConfig cfg = with_elements(base, n);
    validate(cfg);
    TimingRow row;
    row.n = n;
    double total_s = 0.0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(seed + static_cast<std::uint64_t>(t));
      ChannelSet ch = generate_channels(cfg, rng);
      BeamformingState st = default_init(ch, cfg);
      Eigen::MatrixXcd F = effective_channels(ch, st.Theta);
      Eigen::VectorXd alpha = update_alpha(F, st.W, cfg);
      Eigen::VectorXcd beta = update_beta(F, st.W, alpha, cfg);
      SurrogateMatrices mats = build_surrogate_matrices(ch, st.W, alpha, beta, cfg);
      // start far from stationarity so every call does full iterations
      Eigen::MatrixXcd g(n, n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.complex_gaussian();
      Eigen::MatrixXcd theta0 = project_symmetric_unitary(g);

      auto t0 = clock_type::now();
      PslaResult res = psla_theta(mats, theta0, opts);
      total_s += std::chrono::duration<double>(clock_type::now() - t0).count();
      row.inner_iters += res.iters;
    }
    row.mean_inner_theta_s = row.inner_iters > 0
                                 ? total_s / static_cast<double>(row.inner_iters)
                                 : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<WTimingRow> measure_w_scaling(const SystemConfig& base,
                                          const std::vector<int>& sizes, int trials,
                                          std::uint64_t seed) {
  std::vector<WTimingRow> rows;
  SolverOptions opts;
  opts.eps_inner = 1e-12;
  opts.max_inner_iters = 12;
  for (int n : sizes) {
    SystemConfig cfg = with_elements(base, n);
    validate(cfg);
    WTimingRow row;
    row.n = n;
    double total_s = 0.0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(seed + static_cast<std::uint64_t>(t));
      ChannelSet ch = generate_channels(cfg, rng);
      BeamformingState st = default_init(ch, cfg);
      Eigen::MatrixXcd F = effective_channels(ch, st.Theta);
      Eigen::VectorXd alpha = update_alpha(F, st.W, cfg);
      Eigen::VectorXcd beta = update_beta(F, st.W, alpha, cfg);
      Eigen::MatrixXcd g(cfg.L, cfg.K);
      for (int j = 0; j < cfg.K; ++j)
        for (int i = 0; i < cfg.L; ++i) g(i, j) = rng.complex_gaussian();
      Eigen::MatrixXcd w0 = project_power_sphere(g, cfg.Pt);

      auto t0 = clock_type::now();
      PslaResult res = psla_w(F, alpha, beta, w0, cfg, opts);
      total_s += std::chrono::duration<double>(clock_type::now() - t0).count();
      row.inner_iters += res.iters;
    }
    row.mean_inner_w_s =
        row.inner_iters > 0 ? total_s / static_cast<double>(row.inner_iters) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

void emit_timing_profile(const ExperimentSpec& spec) {
  const SystemConfig& base = spec.base_config;
  validate(base);
  if (spec.sweep_values.empty())
    throw std::invalid_argument("harness: timing needs at least one surface size");
  std::vector<int> sizes;
  for (double v : spec.sweep_values) sizes.push_back(static_cast<int>(v));
  std::vector<TimingRow> rows =
      measure_theta_scaling(base, sizes, spec.trials, base.rng_seed);
  std::ofstream out = open_csv(resolve_output(spec, "timing"), base,
                               "n,mean_inner_theta_time_s,inner_iters");
  for (const TimingRow& r : rows)
    out << r.n << "," << fmt_g(r.mean_inner_theta_s, 6) << "," << r.inner_iters << "\n";
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]);
    double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct VerifyInstance {
  SystemConfig cfg;
  ChannelSet ch;
  BeamformingState st;
  Eigen::MatrixXcd F;
  Eigen::VectorXd alpha;
  Eigen::VectorXcd beta;
  SurrogateMatrices mats;
};

SystemConfig small_config(int l, int n, int k, std::uint64_t seed) {
  SystemConfig cfg = default_config();
  cfg.L = l;
  cfg.N = n;
  cfg.K = k;
  cfg.weights.assign(static_cast<std::size_t>(k), 1.0);
  cfg.noise_powers = noise_for_snr(cfg, 20.0);
  cfg.rng_seed = seed;
  return cfg;
}

VerifyInstance make_instance(int l, int n, int k, std::uint64_t seed) {
  VerifyInstance in;
  in.cfg = small_config(l, n, k, seed);
  Rng rng(seed);
  in.ch = generate_channels(in.cfg, rng);
  in.st = default_init(in.ch, in.cfg);
  // roughen the precoder so instances are not all near-matched
  Eigen::MatrixXcd g(in.cfg.L, in.cfg.K);
  for (int j = 0; j < in.cfg.K; ++j)
    for (int i = 0; i < in.cfg.L; ++i) g(i, j) = rng.complex_gaussian();
  in.st.W = project_power_sphere(in.st.W + 0.5 * in.st.W.norm() * g / g.norm(), in.cfg.Pt);
  in.F = effective_channels(in.ch, in.st.Theta);
  in.alpha = update_alpha(in.F, in.st.W, in.cfg);
  in.beta = update_beta(in.F, in.st.W, in.alpha, in.cfg);
  in.mats = build_surrogate_matrices(in.ch, in.st.W, in.alpha, in.beta, in.cfg);
  return in;
}

// reformulated objective with natural logs; its max over (alpha, beta) is the
// weighted sum rate in nats, so it upper-bounds every evaluation
double surrogate_nats(const Eigen::VectorXd& alpha, const Eigen::VectorXcd& beta,
                      const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& W,
                      const SystemConfig& cfg) {
  Eigen::MatrixXcd G = F.adjoint() * W;
  double value = 0.0;
  for (int k = 0; k < cfg.K; ++k) {
    double total = cfg.noise_powers[static_cast<std::size_t>(k)];
    for (int j = 0; j < cfg.K; ++j) total += std::norm(G(k, j));
    double hk = 2.0 * std::sqrt(1.0 + alpha(k)) * std::real(std::conj(beta(k)) * G(k, k)) -
                alpha(k) - std::norm(beta(k)) * total + std::log(1.0 + alpha(k));
    value += cfg.weights[static_cast<std::size_t>(k)] * hk;
  }
  return value;
}

class VerifyReporter {
 public:
  explicit VerifyReporter(std::ostream& out) : out_(out) {}

  void check(const std::string& name, bool pass, const std::string& detail) {
    out_ << (pass ? "[ok]   " : "[FAIL] ") << name;
    if (!detail.empty()) out_ << " (" << detail << ")";
    out_ << "\n";
    all_ &= pass;
  }

  bool all() const { return all_; }

 private:
  std::ostream& out_;
  bool all_ = true;
};

}  // namespace

bool run_verify(std::uint64_t seed, int workers, std::ostream& out) {
  VerifyReporter rep(out);

  {  // samples actually live on the manifold
    Rng rng(seed);
    double worst_sym = 0.0, worst_unit = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Eigen::MatrixXcd th = oracle::random_theta_sample(4, rng);
      worst_sym = std::max(worst_sym, (th - th.transpose()).norm());
      worst_unit = std::max(
          worst_unit, (th * th.adjoint() - Eigen::MatrixXcd::Identity(4, 4)).norm());
    }
    rep.check("manifold membership of 1000 samples",
              worst_sym <= 1e-8 && worst_unit <= 1e-8,
              "max asymmetry " + fmt_g(worst_sym, 3) + ", max unitarity defect " +
                  fmt_g(worst_unit, 3));
  }

  {  // no sampled manifold point beats the projection in distance
    double worst = -1e300;
    std::vector<double> gaps(50);
    parallel_for(50, workers, [&](int i) {
      Rng rng(seed + 1000 + static_cast<std::uint64_t>(i));
      Eigen::MatrixXcd z(4, 4);
      for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) z(r, c) = 2.0 * rng.complex_gaussian();
      Eigen::MatrixXcd proj = project_symmetric_unitary(z);
      double dp = (z - proj).norm();
      double gap = -1e300;
      for (int s = 0; s < 2000; ++s) {
        double dq = (z - oracle::random_theta_sample(4, rng)).norm();
        gap = std::max(gap, dp - dq);
      }
      gaps[static_cast<std::size_t>(i)] = gap;
    });
    for (double g : gaps) worst = std::max(worst, g);
    rep.check("projection optimality vs 50x2000 samples", worst <= 1e-9,
              "worst distance excess " + fmt_g(worst, 3));
  }

  {  // reformulation equals the rate at the closed-form auxiliaries
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      VerifyInstance in = make_instance(4, 4, 3, seed + 2000 + static_cast<std::uint64_t>(i));
      double wsr = weighted_sum_rate(in.F, in.st.W, in.cfg);
      double sur = surrogate_value(in.alpha, in.beta, in.F, in.st.W, in.cfg);
      worst = std::max(worst, std::abs(sur - wsr) / std::max(1.0, std::abs(wsr)));
    }
    rep.check("auxiliary-update tightness on 200 instances", worst <= 1e-10,
              "worst relative mismatch " + fmt_g(worst, 3));
  }

  {  // perturbed auxiliaries never beat the rate (natural-log form)
    double worst = -1e300;
    for (int i = 0; i < 200; ++i) {
      VerifyInstance in = make_instance(4, 4, 3, seed + 3000 + static_cast<std::uint64_t>(i));
      Rng rng(seed + 4000 + static_cast<std::uint64_t>(i));
      double wsr_nats = weighted_sum_rate(in.F, in.st.W, in.cfg) * std::log(2.0);
      for (int p = 0; p < 5; ++p) {
        Eigen::VectorXd a = in.alpha;
        Eigen::VectorXcd b = in.beta;
        for (int k = 0; k < in.cfg.K; ++k) {
          a(k) *= 0.25 + 1.5 * rng.uniform();
          b(k) *= (0.5 + rng.uniform()) *
                  std::exp(std::complex<double>(0.0, 0.6 * (rng.uniform() - 0.5)));
        }
        double sur = surrogate_nats(a, b, in.F, in.st.W, in.cfg);
        worst = std::max(worst,
                         (sur - wsr_nats) / std::max(1.0, std::abs(wsr_nats)));
      }
    }
    rep.check("surrogate upper bound over 1000 perturbations", worst <= 1e-9,
              "worst relative excess " + fmt_g(worst, 3));
  }

  {  // matrix-form objective vs direct per-user evaluation
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      VerifyInstance in = make_instance(4, 4, 3, seed + 5000 + static_cast<std::uint64_t>(i));
      Rng rng(seed + 6000 + static_cast<std::uint64_t>(i));
      Eigen::MatrixXcd th = oracle::random_theta_sample(4, rng);
      double matform = oracle::naive_theta_objective(in.mats, th);
      Eigen::MatrixXcd Fq = effective_channels(in.ch, th);
      Eigen::MatrixXcd G = Fq.adjoint() * in.st.W;
      double direct = 0.0;
      for (int k = 0; k < in.cfg.K; ++k) {
        double inter = 0.0;
        for (int j = 0; j < in.cfg.K; ++j) inter += std::norm(G(k, j));
        double w = in.cfg.weights[static_cast<std::size_t>(k)];
        direct += 2.0 * w * std::sqrt(1.0 + in.alpha(k)) *
                      std::real(std::conj(in.beta(k)) * G(k, k)) -
                  w * std::norm(in.beta(k)) * inter;
      }
      worst = std::max(worst,
                       std::abs(matform - direct) / std::max(1.0, std::abs(direct)));
    }
    rep.check("matrix form matches per-user objective on 100 instances", worst <= 1e-9,
              "worst relative mismatch " + fmt_g(worst, 3));
  }

  {  // linearization bound for quadratic trace forms
    Rng rng(seed + 7000);
    double worst_ineq = -1e300, worst_eq = 0.0;
    for (int i = 0; i < 500; ++i) {
      Eigen::MatrixXcd ga(4, 4), gb(4, 4), th(4, 4), ph(4, 4);
      for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) {
          ga(r, c) = rng.complex_gaussian();
          gb(r, c) = rng.complex_gaussian();
          th(r, c) = rng.complex_gaussian();
          ph(r, c) = rng.complex_gaussian();
        }
      Eigen::MatrixXcd a = ga * ga.adjoint();
      Eigen::MatrixXcd b = gb * gb.adjoint();
      auto quad = [&](const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& q) {
        return ((p * a * q.adjoint() * b).trace()).real();
      };
      double lhs = quad(th, th);
      double rhs = 2.0 * quad(ph, th) - quad(ph, ph);
      double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      worst_ineq = std::max(worst_ineq, (rhs - lhs) / scale);
      Eigen::MatrixXcd at_point = th;
      double rhs_eq = 2.0 * quad(at_point, th) - quad(at_point, at_point);
      worst_eq = std::max(worst_eq, std::abs(rhs_eq - lhs) / scale);
    }
    rep.check("trace linearization minorizes on 500 PSD pairs",
              worst_ineq <= 1e-9 && worst_eq <= 1e-10,
              "worst violation " + fmt_g(worst_ineq, 3));
  }

  {  // scattering loop beats random search
    double worst = -1e300;
    SolverOptions opts;
    opts.eps_inner = 1e-6;
    opts.max_inner_iters = 300;
    for (int i = 0; i < 5; ++i) {
      VerifyInstance in = make_instance(4, 4, 3, seed + 8000 + static_cast<std::uint64_t>(i));
      Rng rng(seed + 9000 + static_cast<std::uint64_t>(i));
      Eigen::MatrixXcd theta0 = oracle::random_theta_sample(4, rng);
      PslaResult res = psla_theta(in.mats, theta0, opts);
      double solver_obj = theta_objective(in.mats, res.value);
      oracle::SearchResult best = oracle::best_theta_random_search(
          in.mats, 20000, seed + 9500 + static_cast<std::uint64_t>(i), workers);
      worst = std::max(worst, (best.value - solver_obj) /
                                  std::max(1e-12, std::abs(best.value)));
    }
    rep.check("scattering loop dominates 20000-sample search x5", worst <= 1e-3,
              "worst relative shortfall " + fmt_g(worst, 3));
  }

  {  // precoder loop beats random search on the power sphere
    double worst = -1e300;
    SolverOptions opts;
    opts.eps_inner = 1e-6;
    opts.max_inner_iters = 300;
    for (int i = 0; i < 5; ++i) {
      VerifyInstance in = make_instance(4, 4, 3, seed + 10000 + static_cast<std::uint64_t>(i));
      Eigen::VectorXcd s1;
      Eigen::VectorXd s2;
      make_sigmas(in.alpha, in.beta, in.cfg.weights, s1, s2);
      PslaResult res = psla_w(in.F, in.alpha, in.beta, in.st.W, in.cfg, opts);
      double solver_obj = w_objective(in.F, s1, s2, res.value);
      Rng rng(seed + 11000 + static_cast<std::uint64_t>(i));
      double best = -1e300;
      for (int s = 0; s < 20000; ++s) {
        Eigen::MatrixXcd g(in.cfg.L, in.cfg.K);
        for (int c = 0; c < in.cfg.K; ++c)
          for (int r = 0; r < in.cfg.L; ++r) g(r, c) = rng.complex_gaussian();
        best = std::max(
            best, w_objective(in.F, s1, s2, project_power_sphere(g, in.cfg.Pt)));
      }
      worst = std::max(worst, (best - solver_obj) / std::max(1e-12, std::abs(best)));
    }
    rep.check("precoder loop dominates 20000-sample search x5", worst <= 1e-3,
              "worst relative shortfall " + fmt_g(worst, 3));
  }

  {  // the spectral-norm gain cap is reachable on the manifold
    SystemConfig cfg = small_config(4, 3, 1, seed + 12000);
    Rng rng(seed + 12000);
    ChannelSet ch = generate_channels(cfg, rng);
    double h2 = ch.H.col(0).squaredNorm();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ch.E);
    double cap = std::sqrt(h2) * svd.singularValues()(0);
    double reached = oracle::best_single_user_gain(ch, 100000, seed + 13000, workers);
    rep.check("single-user gain cap reachable at n=3",
              reached >= (1.0 - 0.02) * cap && reached <= cap * (1.0 + 1e-9),
              "reached " + fmt_g(reached / cap, 6) + " of cap");
  }

  {  // linearization slope matches finite differences
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      VerifyInstance in = make_instance(4, 4, 3, seed + 14000 + static_cast<std::uint64_t>(i));
      Rng rng(seed + 15000 + static_cast<std::uint64_t>(i));
      Eigen::MatrixXcd th = oracle::random_theta_sample(4, rng);
      Eigen::MatrixXcd dir = oracle::tangent_direction(th, rng);
      double rho1 = spectral_shift(in.mats.Y);
      worst = std::max(worst,
                       oracle::finite_difference_check(in.mats, rho1, th, dir, 1e-5));
    }
    rep.check("surrogate slope matches finite differences x50", worst <= 1e-4,
              "worst relative error " + fmt_g(worst, 3));
  }

  return rep.all();
}

}  // namespace bdris::harness
