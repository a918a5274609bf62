// SPDX-License-Identifier: Apache-2.0
#include "bdris/oracle.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bdris/harness.hpp"
#include "bdris/projections.hpp"

namespace bdris::oracle {

namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd random_complex(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_gaussian();
  return g;
}

Eigen::MatrixXcd random_unitary(int n, Rng& rng) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(random_complex(n, n, rng),
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// 2 Re tr(Theta M) with explicit sums
double naive_linear_term(const Eigen::MatrixXcd& theta, const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(theta.rows());
  cd tr(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tr += theta(i, j) * m(j, i);
  return 2.0 * tr.real();
}

// tr(Theta X Theta^H B) with explicit sums
double naive_quadratic_term(const Eigen::MatrixXcd& theta, const Eigen::MatrixXcd& x,
                            const Eigen::MatrixXcd& b) {
  const int n = static_cast<int>(theta.rows());
  cd tr(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          tr += theta(i, j) * x(j, k) * std::conj(theta(l, k)) * b(l, i);
  return tr.real();
}

// deterministic chunked search so results do not depend on the worker count
constexpr int kChunk = 4096;

std::uint64_t chunk_seed(std::uint64_t seed, int chunk) {
  return seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(chunk + 1);
}

}  // namespace

Eigen::MatrixXcd random_theta_sample(int n, Rng& rng) {
  Eigen::MatrixXcd theta = project_symmetric_unitary(random_complex(n, n, rng));
  if (rng.uniform() < 0.5) {
    Eigen::MatrixXcd q = random_unitary(n, rng);
    theta = q * theta * q.transpose();
  }
  return theta;
}

std::vector<Eigen::MatrixXcd> random_feasible_theta(int n, int count, Rng& rng) {
  if (n < 1 || count < 0)
    throw std::invalid_argument("random_feasible_theta: bad dimensions");
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(random_theta_sample(n, rng));
  return out;
}

double naive_theta_objective(const SurrogateMatrices& mats, const Eigen::MatrixXcd& theta) {
  return naive_linear_term(theta, mats.M) -
         naive_quadratic_term(theta, mats.X, mats.Y);
}

SearchResult brute_force_theta_objective(const SurrogateMatrices& mats,
                                         const std::vector<Eigen::MatrixXcd>& samples) {
  if (samples.empty())
    throw std::invalid_argument("brute_force_theta_objective: no samples");
  SearchResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (const auto& theta : samples) {
    double v = naive_theta_objective(mats, theta);
    if (v > best.value) {
      best.value = v;
      best.theta = theta;
    }
  }
  return best;
}

SearchResult best_theta_random_search(const SurrogateMatrices& mats, int count,
                                      std::uint64_t seed, int workers) {
  const int n = static_cast<int>(mats.M.rows());
  const int chunks = (count + kChunk - 1) / kChunk;
  std::vector<SearchResult> per_chunk(static_cast<std::size_t>(chunks));
  harness::parallel_for(chunks, workers, [&](int c) {
    Rng rng(chunk_seed(seed, c));
    int lo = c * kChunk;
    int hi = std::min(count, lo + kChunk);
    SearchResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int i = lo; i < hi; ++i) {
      Eigen::MatrixXcd theta = random_theta_sample(n, rng);
      double v = naive_theta_objective(mats, theta);
      if (v > best.value) {
        best.value = v;
        best.theta = theta;
      }
    }
    per_chunk[static_cast<std::size_t>(c)] = best;
  });
  SearchResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (const auto& b : per_chunk)
    if (b.value > best.value) best = b;
  return best;
}

double single_user_bound(const ChannelSet& ch, const SystemConfig& cfg) {
  if (cfg.K != 1)
    throw std::invalid_argument("single_user_bound: requires K = 1");
  double h2 = 0.0;
  for (int i = 0; i < ch.H.rows(); ++i) h2 += std::norm(ch.H(i, 0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ch.E);
  double smax = svd.singularValues()(0);
  return std::log2(1.0 + cfg.Pt * h2 * smax * smax / cfg.noise_powers[0]);
}

double best_single_user_gain(const ChannelSet& ch, int count, std::uint64_t seed,
                             int workers) {
  if (ch.H.cols() != 1)
    throw std::invalid_argument("best_single_user_gain: requires K = 1");
  const int n = static_cast<int>(ch.H.rows());
  const int l = static_cast<int>(ch.E.cols());
  const int chunks = (count + kChunk - 1) / kChunk;
  std::vector<double> per_chunk(static_cast<std::size_t>(chunks), 0.0);
  harness::parallel_for(chunks, workers, [&](int c) {
    Rng rng(chunk_seed(seed, c));
    int lo = c * kChunk;
    int hi = std::min(count, lo + kChunk);
    double best = 0.0;
    for (int s = lo; s < hi; ++s) {
      Eigen::MatrixXcd theta = random_theta_sample(n, rng);
      // ||h^H Theta E|| via explicit sums
      double gain2 = 0.0;
      for (int col = 0; col < l; ++col) {
        cd acc(0.0, 0.0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            acc += std::conj(ch.H(i, 0)) * theta(i, j) * ch.E(j, col);
        gain2 += std::norm(acc);
      }
      best = std::max(best, std::sqrt(gain2));
    }
    per_chunk[static_cast<std::size_t>(c)] = best;
  });
  double best = 0.0;
  for (double b : per_chunk) best = std::max(best, b);
  return best;
}

double fd_relative_error(const std::function<double(const Eigen::MatrixXcd&)>& objective,
                         const Eigen::MatrixXcd& point, const Eigen::MatrixXcd& direction,
                         double analytic_slope, double step) {
  if (step <= 0.0) throw std::invalid_argument("fd_relative_error: step must be > 0");
  double fp = objective(point + step * direction);
  double fm = objective(point - step * direction);
  double fd = (fp - fm) / (2.0 * step);
  return std::abs(fd - analytic_slope) / std::max(std::abs(analytic_slope), 1e-12);
}

double finite_difference_check(const SurrogateMatrices& mats, double rho1,
                               const Eigen::MatrixXcd& theta,
                               const Eigen::MatrixXcd& direction, double step) {
  const int n = static_cast<int>(theta.rows());
  Eigen::MatrixXcd b = rho1 * Eigen::MatrixXcd::Identity(n, n) - mats.Y;

  // shifted true objective 2 Re tr(Theta M) + tr(Theta X Theta^H B)
  auto objective = [&](const Eigen::MatrixXcd& t) {
    return naive_linear_term(t, mats.M) + naive_quadratic_term(t, mats.X, b);
  };

  // slope of the linearization at Phi = theta along `direction`:
  // 2 Re tr(D M) + 2 Re tr(Theta X D^H B)
  double slope = naive_linear_term(direction, mats.M);
  {
    cd tr(0.0, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            tr += theta(i, j) * mats.X(j, k) * std::conj(direction(l, k)) * b(l, i);
    slope += 2.0 * tr.real();
  }
  return fd_relative_error(objective, theta, direction, slope, step);
}

Eigen::MatrixXcd tangent_direction(const Eigen::MatrixXcd& theta, Rng& rng) {
  const int n = static_cast<int>(theta.rows());
  for (int attempt = 0; attempt < 16; ++attempt) {
    Eigen::MatrixXcd a = random_complex(n, n, rng);
    Eigen::MatrixXcd s = 0.5 * (a + a.adjoint());
    Eigen::MatrixXcd d = cd(0.0, 1.0) * (s * theta + theta * s.transpose());
    double norm = d.norm();
    if (norm > 1e-12) return d / norm;
  }
  throw std::runtime_error("tangent_direction: degenerate draws");
}

}  // namespace bdris::oracle
