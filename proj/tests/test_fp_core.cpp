// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"

using namespace bdris;
using cd = std::complex<double>;

namespace {

// natural-log counterpart of the reformulated objective, used for the global
// upper-bound property (in nats it never exceeds ln 2 times the sum rate)
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

}  // namespace

TEST_CASE("single-user rate matches the closed form") {
  Eigen::MatrixXcd F(1, 1), W(1, 1);
  F(0, 0) = cd(0.3, 0.4);
  W(0, 0) = cd(2.0, 0.0);
  // |conj(f) w|^2 = 0.25 * 4 = 1, rate = log2(1 + 1 / 0.5) = log2(3)
  CHECK(user_rate(F, W, 0, 0.5) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));

  CHECK_THROWS_AS(user_rate(F, W, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(user_rate(F, W, 0, 0.0), std::invalid_argument);
}

TEST_CASE("two-user rates include cross interference") {
  Eigen::MatrixXcd F(2, 2), W(2, 2);
  F << cd(1.0, 0.0), cd(0.0, 1.0), cd(0.5, -0.5), cd(1.0, 1.0);
  W << cd(0.8, 0.1), cd(-0.3, 0.4), cd(0.0, 0.7), cd(0.6, 0.0);

  SystemConfig cfg = testutil::small_config(2, 2, 2, 1);
  cfg.noise_powers = {0.2, 0.4};
  cfg.weights = {1.0, 2.5};

  double expect = 0.0;
  for (int k = 0; k < 2; ++k) {
    cd des(0.0, 0.0);
    double inter = 0.0;
    for (int j = 0; j < 2; ++j) {
      cd g(0.0, 0.0);
      for (int l = 0; l < 2; ++l) g += std::conj(F(l, k)) * W(l, j);
      if (j == k)
        des = g;
      else
        inter += std::norm(g);
    }
    double sinr = std::norm(des) / (inter + cfg.noise_powers[static_cast<std::size_t>(k)]);
    expect += cfg.weights[static_cast<std::size_t>(k)] * std::log2(1.0 + sinr);
  }
  CHECK(weighted_sum_rate(F, W, cfg) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("auxiliary updates reproduce the per-user ratios") {
  testutil::Instance in = testutil::make_instance(4, 4, 3, 31);
  Eigen::MatrixXcd G = in.F.adjoint() * in.st.W;

  for (int k = 0; k < 3; ++k) {
    double inter = 0.0;
    for (int j = 0; j < 3; ++j)
      if (j != k) inter += std::norm(G(k, j));
    double noise = in.cfg.noise_powers[static_cast<std::size_t>(k)];
    double sinr = std::norm(G(k, k)) / (inter + noise);
    CHECK(in.alpha(k) == doctest::Approx(sinr).epsilon(1e-12));

    double total = noise;
    for (int j = 0; j < 3; ++j) total += std::norm(G(k, j));
    cd expect = std::sqrt(1.0 + in.alpha(k)) * G(k, k) / total;
    CHECK(std::abs(in.beta(k) - expect) <= 1e-12 * std::abs(expect));
  }
}

TEST_CASE("reformulated objective touches the rate at the updates") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    testutil::Instance in = testutil::make_instance(4, 4, 3, seed);
    double wsr = weighted_sum_rate(in.F, in.st.W, in.cfg);
    double sur = surrogate_value(in.alpha, in.beta, in.F, in.st.W, in.cfg);
    CHECK(std::abs(sur - wsr) <= 1e-11 * std::max(1.0, std::abs(wsr)));
  }
}

TEST_CASE("perturbed auxiliaries never beat the rate in natural logs") {
  Rng rng(200);
  double worst = -1e300;
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    testutil::Instance in = testutil::make_instance(4, 4, 3, seed);
    double cap = weighted_sum_rate(in.F, in.st.W, in.cfg) * std::log(2.0);
    for (int p = 0; p < 10; ++p) {
      Eigen::VectorXd a = in.alpha;
      Eigen::VectorXcd b = in.beta;
      for (int k = 0; k < 3; ++k) {
        a(k) *= 0.2 + 1.8 * rng.uniform();
        b(k) *= (0.4 + 1.2 * rng.uniform()) *
                std::exp(cd(0.0, 0.8 * (rng.uniform() - 0.5)));
      }
      double val = surrogate_nats(a, b, in.F, in.st.W, in.cfg);
      worst = std::max(worst, (val - cap) / std::max(1.0, std::abs(cap)));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("sigma diagonals follow the auxiliary definitions") {
  Eigen::VectorXd alpha(2);
  alpha << 3.0, 0.5;
  Eigen::VectorXcd beta(2);
  beta << cd(0.5, -0.25), cd(-1.0, 2.0);
  std::vector<double> weights = {1.5, 0.25};

  Eigen::VectorXcd s1;
  Eigen::VectorXd s2;
  make_sigmas(alpha, beta, weights, s1, s2);

  CHECK(std::abs(s1(0) - 1.5 * 2.0 * cd(0.5, 0.25)) <= 1e-15);
  CHECK(std::abs(s1(1) - 0.25 * std::sqrt(1.5) * cd(-1.0, -2.0)) <= 1e-15);
  CHECK(s2(0) == doctest::Approx(1.5 * 0.3125).epsilon(1e-14));
  CHECK(s2(1) == doctest::Approx(0.25 * 5.0).epsilon(1e-14));

  Eigen::VectorXd short_alpha(1);
  short_alpha << 1.0;
  CHECK_THROWS_AS(make_sigmas(short_alpha, beta, weights, s1, s2),
                  std::invalid_argument);
}

TEST_CASE("surrogate matrices assemble the documented products") {
  testutil::Instance in = testutil::make_instance(3, 4, 2, 41);
  const int n = 4, l = 3, k = 2;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cd m(0.0, 0.0);
      for (int a = 0; a < l; ++a)
        for (int b = 0; b < k; ++b)
          m += in.ch.E(i, a) * in.st.W(a, b) * in.mats.Sigma1(b) * std::conj(in.ch.H(j, b));
      CHECK(std::abs(in.mats.M(i, j) - m) <= 1e-12 * std::max(1.0, std::abs(m)));

      cd x(0.0, 0.0);
      for (int a = 0; a < l; ++a)
        for (int b = 0; b < k; ++b)
          for (int c = 0; c < l; ++c)
            x += in.ch.E(i, a) * in.st.W(a, b) * std::conj(in.st.W(c, b)) *
                 std::conj(in.ch.E(j, c));
      CHECK(std::abs(in.mats.X(i, j) - x) <= 1e-12 * std::max(1.0, std::abs(x)));

      cd y(0.0, 0.0);
      for (int b = 0; b < k; ++b)
        y += in.ch.H(i, b) * in.mats.Sigma2(b) * std::conj(in.ch.H(j, b));
      CHECK(std::abs(in.mats.Y(i, j) - y) <= 1e-12 * std::max(1.0, std::abs(y)));
    }

  CHECK((in.mats.X - in.mats.X.adjoint()).norm() <= 1e-14 * in.mats.X.norm());
  CHECK((in.mats.Y - in.mats.Y.adjoint()).norm() <= 1e-14 * in.mats.Y.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ex(in.mats.X);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ey(in.mats.Y);
  CHECK(ex.eigenvalues().minCoeff() >= -1e-12 * in.mats.X.norm());
  CHECK(ey.eigenvalues().minCoeff() >= -1e-12 * std::max(1e-300, in.mats.Y.norm()));
}

TEST_CASE("scattering objective agrees between matrix and element forms") {
  Rng rng(50);
  for (std::uint64_t seed = 500; seed < 520; ++seed) {
    testutil::Instance in = testutil::make_instance(4, 4, 3, seed);
    Eigen::MatrixXcd theta = oracle::random_theta_sample(4, rng);
    double fast = theta_objective(in.mats, theta);
    double slow = oracle::naive_theta_objective(in.mats, theta);
    CHECK(std::abs(fast - slow) <= 1e-10 * std::max(1.0, std::abs(slow)));
  }
}

TEST_CASE("precoder objective agrees with an element-wise evaluation") {
  testutil::Instance in = testutil::make_instance(4, 4, 3, 61);
  Rng rng(61);
  Eigen::MatrixXcd w = project_power_sphere(testutil::random_complex(4, 3, rng),
                                            in.cfg.Pt);

  cd linear(0.0, 0.0);
  double quad = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      cd g(0.0, 0.0);
      for (int l = 0; l < 4; ++l) g += std::conj(in.F(l, k)) * w(l, j);
      if (j == k) linear += in.mats.Sigma1(k) * g;
      quad += in.mats.Sigma2(k) * std::norm(g);
    }
  }
  double expect = 2.0 * linear.real() - quad;
  double got = w_objective(in.F, in.mats.Sigma1, in.mats.Sigma2, w);
  CHECK(std::abs(got - expect) <= 1e-11 * std::max(1.0, std::abs(expect)));
}

TEST_CASE("the spectral shift moves the objective by a constant on the manifold") {
  testutil::Instance in = testutil::make_instance(4, 4, 3, 71);
  Rng rng(71);
  double rho = spectral_shift(in.mats.Y);
  double offset = rho * in.mats.X.trace().real();

  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXcd theta = oracle::random_theta_sample(4, rng);
    // shifted form: 2 Re tr(Theta M) + tr(Theta X Theta^H (rho I - Y))
    Eigen::MatrixXcd b =
        rho * Eigen::MatrixXcd::Identity(4, 4) - in.mats.Y;
    Eigen::MatrixXcd tx = theta * in.mats.X;
    Eigen::MatrixXcd ty = theta.adjoint() * b;
    double shifted = 2.0 * theta.cwiseProduct(in.mats.M.transpose()).sum().real() +
                     tx.cwiseProduct(ty.transpose()).sum().real();
    double plain = theta_objective(in.mats, theta);
    CHECK(std::abs(shifted - (plain + offset)) <=
          1e-10 * std::max(1.0, std::abs(shifted)));
  }
}
