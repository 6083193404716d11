#ifndef MSSV_TESTS_FIXTURES_HPP
#define MSSV_TESTS_FIXTURES_HPP

#include "mssv/rng.hpp"
#include "mssv/simulation.hpp"
#include "mssv/types.hpp"

namespace fixtures {

// Minimal valid configuration with a triangular pattern on every equation
// unless masks are supplied.
inline mssv::ModelConfig small_config(int n, int p, int m_count,
                                      std::vector<std::string> masks = {}, int tvi_equation = -1) {
  mssv::ModelConfig config;
  config.N = n;
  config.p = p;
  config.d = 1;
  config.M = m_count;
  config.tvi_equation = (tvi_equation >= 0) ? tvi_equation : n - 1;
  if (masks.empty()) {
    std::string tri(n, '0');
    for (int j = 0; j <= config.tvi_equation; ++j) tri[j] = '*';
    masks = {tri};
  }
  config.pattern_masks = masks;
  config.K = static_cast<int>(masks.size());
  config.mcmc.iterations = 20;
  config.mcmc.burnin = 10;
  return config;
}

// Valid state with identity-like B, prior-mean A and quiet volatilities.
inline mssv::ParameterState blank_state(const mssv::ModelConfig& config, int t_len) {
  mssv::ParameterState state;
  const int n = config.N;
  const int k = n * config.p + config.d;
  state.A = Eigen::MatrixXd::Zero(n, k);
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n);
  state.B.assign(config.M, b);
  state.kappa.assign(config.M, 0);
  state.P = Eigen::MatrixXd::Constant(config.M, config.M, 1.0 / config.M);
  state.pi0 = Eigen::VectorXd::Constant(config.M, 1.0 / config.M);
  state.s = Eigen::VectorXi::Zero(t_len);
  state.h = Eigen::MatrixXd::Zero(n, t_len);
  state.rho = Eigen::VectorXd::Constant(n, 0.5);
  state.omega = Eigen::MatrixXd::Constant(n, config.M, 0.1);
  state.sigma2_omega = Eigen::VectorXd::Ones(n);
  state.q = Eigen::MatrixXi::Constant(n, t_len, 4);
  state.gamma_A = Eigen::VectorXd::Ones(n);
  state.gamma_B = Eigen::VectorXd::Ones(n);
  state.s_A = Eigen::VectorXd::Ones(n);
  state.s_B = Eigen::VectorXd::Ones(n);
  state.s_gamma_A = 1.0;
  state.s_gamma_B = 1.0;
  return state;
}

// Simple stable two-regime process for integration-style tests.
inline mssv::DgpSpec recovery_dgp(int t_len = 400, std::uint64_t seed = 7) {
  mssv::DgpSpec spec;
  spec.N = 3;
  spec.p = 1;
  spec.d = 1;
  spec.M = 2;
  spec.T = t_len;
  spec.seed = seed;
  spec.A.resize(3, 4);
  spec.A << 0.5, 0.1, 0.0, 0.1,
            0.1, 0.4, 0.0, 0.2,
            0.0, 0.1, 0.3, -0.1;
  Eigen::MatrixXd b1(3, 3), b2(3, 3);
  b1 << 2.0, 0.0, 0.0,
        0.5, 2.0, 0.0,
        0.0, 1.0, 2.0;   // selected-equation pattern "0**"
  b2 << 2.5, 0.0, 0.0,
        -0.5, 1.8, 0.0,
        1.2, 0.0, 2.4;   // selected-equation pattern "*0*"
  spec.B = {b1, b2};
  spec.kappa = {1, 0};
  spec.P.resize(2, 2);
  spec.P << 0.95, 0.05, 0.06, 0.94;
  spec.pi0 = Eigen::Vector2d(0.5, 0.5);
  spec.rho = Eigen::Vector3d(0.75, 0.7, 0.7);
  spec.omega.resize(3, 2);
  spec.omega << 0.35, 0.6,
                0.45, -0.4,
                0.55, 0.3;
  return spec;
}

inline mssv::ModelConfig recovery_config(int iterations, int burnin, int thin = 1) {
  mssv::ModelConfig config;
  config.N = 3;
  config.p = 1;
  config.d = 1;
  config.M = 2;
  config.K = 2;
  config.tvi_equation = 2;
  config.pattern_masks = {"*0*", "0**"};
  config.mcmc.iterations = iterations;
  config.mcmc.burnin = burnin;
  config.mcmc.thin = thin;
  return config;
}

}  // namespace fixtures

#endif
