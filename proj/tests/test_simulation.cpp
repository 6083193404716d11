#include <doctest.h>

#include <cmath>

#include "mssv/simulation.hpp"
#include "testutil.hpp"

using namespace mssv;

namespace {

DgpSpec two_regime_spec() {
  DgpSpec spec;
  spec.N = 2;
  spec.p = 1;
  spec.d = 1;
  spec.M = 2;
  spec.T = 200;
  spec.seed = 5;
  spec.A.resize(2, 3);
  spec.A << 0.5, 0.1, 0.2, 0.0, 0.4, -0.1;
  Eigen::MatrixXd b1(2, 2), b2(2, 2);
  b1 << 2.0, 0.0, 0.5, 1.5;
  b2 << 1.0, 0.0, -0.4, 2.5;
  spec.B = {b1, b2};
  spec.kappa = {0, 0};
  spec.P.resize(2, 2);
  spec.P << 0.9, 0.1, 0.2, 0.8;
  spec.pi0 = Eigen::Vector2d(0.5, 0.5);
  spec.rho = Eigen::Vector2d(0.9, 0.8);
  spec.omega.resize(2, 2);
  spec.omega << 0.3, 0.6, -0.4, 0.2;
  return spec;
}

}  // namespace

TEST_CASE("simulate is seed-repeatable and recovery reproduces the shocks") {
  const DgpSpec spec = two_regime_spec();
  RngStream r1(spec.seed), r2(spec.seed);
  const SimulationOutput a = simulate(spec, r1);
  const SimulationOutput b = simulate(spec, r2);
  CHECK((a.raw - b.raw).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.s - b.s).cwiseAbs().maxCoeff() == 0);

  // u_t rebuilt from the dataset and true parameters matches the stored shocks
  for (int t = 0; t < spec.T; ++t) {
    const Eigen::VectorXd eps =
        a.data.Y.row(t).transpose() - spec.A * a.data.X.row(t).transpose();
    const Eigen::VectorXd u = spec.B[a.s(t)] * eps;
    CHECK((u - a.u.col(t)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("degenerate Markov settings pin the regime path") {
  DgpSpec spec = two_regime_spec();
  spec.P << 1.0, 0.0, 0.0, 1.0;
  spec.pi0 = Eigen::Vector2d(1.0, 0.0);
  RngStream rng(9);
  const SimulationOutput out = simulate(spec, rng);
  CHECK(out.s.minCoeff() == 0);
  CHECK(out.s.maxCoeff() == 0);
}

TEST_CASE("homoskedastic single-regime shocks have covariance (B'B)^{-1}") {
  DgpSpec spec = two_regime_spec();
  spec.M = 1;
  spec.B.resize(1);
  spec.kappa = {0};
  spec.P = Eigen::MatrixXd::Ones(1, 1);
  spec.pi0 = Eigen::VectorXd::Ones(1);
  spec.omega = Eigen::MatrixXd::Zero(2, 1);
  spec.T = 10000;
  RngStream rng(11);
  const SimulationOutput out = simulate(spec, rng);

  Eigen::MatrixXd eps(spec.T, 2);
  for (int t = 0; t < spec.T; ++t)
    eps.row(t) = out.data.Y.row(t) - (spec.A * out.data.X.row(t).transpose()).transpose();
  const Eigen::MatrixXd cov = eps.transpose() * eps / spec.T;
  const Eigen::MatrixXd target = (spec.B[0].transpose() * spec.B[0]).inverse();
  CHECK((cov - target).cwiseAbs().maxCoeff() < 0.05 * target.cwiseAbs().maxCoeff());
}

TEST_CASE("companion stability is enforced") {
  DgpSpec spec = two_regime_spec();
  spec.A(0, 0) = 1.2;
  spec.A(1, 1) = 1.1;
  CHECK_THROWS(spec.validate());
}

TEST_CASE("path enumeration: single-period posterior is pi0 times density") {
  Eigen::MatrixXd logf(1, 2);
  logf << std::log(0.3), std::log(0.9);
  Eigen::MatrixXd P(2, 2);
  P << 0.7, 0.3, 0.4, 0.6;
  const Eigen::Vector2d pi0(0.25, 0.75);
  const Eigen::MatrixXd marg = brute_force_path_posterior(logf, P, pi0);
  const double w1 = 0.25 * 0.3, w2 = 0.75 * 0.9;
  CHECK(marg(0, 0) == doctest::Approx(w1 / (w1 + w2)));
  CHECK(marg(0, 1) == doctest::Approx(w2 / (w1 + w2)));
}

TEST_CASE("path enumeration: uniform densities return the prior chain marginals") {
  const int t_len = 6;
  Eigen::MatrixXd logf = Eigen::MatrixXd::Zero(t_len, 2);
  Eigen::MatrixXd P(2, 2);
  P << 0.85, 0.15, 0.4, 0.6;
  const Eigen::Vector2d pi0(0.5, 0.5);
  const Eigen::MatrixXd marg = brute_force_path_posterior(logf, P, pi0);
  Eigen::VectorXd predicted = pi0;
  for (int t = 0; t < t_len; ++t) {
    CHECK(marg(t, 0) == doctest::Approx(predicted(0)).epsilon(1e-10));
    predicted = P.transpose() * predicted;
  }
}

TEST_CASE("grid oracle: standard normal grid matches the error function") {
  Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(4001, -10.0, 10.0);
  const Eigen::VectorXd pmf =
      grid_density_oracle([](double x) { return -0.5 * x * x; }, grid);
  CHECK(pmf.sum() == doctest::Approx(1.0).epsilon(1e-12));
  double cum = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    cum += pmf(i);
    if (grid(i) > 1.0) break;
  }
  // CDF at ~1.0 vs closed form
  const double target = 0.5 * std::erfc(-1.0 / std::sqrt(2.0));
  CHECK(cum == doctest::Approx(target).epsilon(1e-3));

  // symmetry of an even integrand
  for (int i = 0; i < grid.size() / 2; ++i)
    CHECK(pmf(i) == doctest::Approx(pmf(grid.size() - 1 - i)).epsilon(1e-9));
}

TEST_CASE("grid oracle rejects grids that truncate visible mass") {
  Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(101, -1.0, 1.0);
  CHECK_THROWS(grid_density_oracle([](double x) { return -0.5 * x * x; }, grid));
}
