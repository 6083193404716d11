#include "mssv/autoregressive.hpp"

#include <cmath>
#include <stdexcept>

#include "mssv/distributions.hpp"

namespace mssv {

Eigen::VectorXd minnesota_prior_mean(int equation, int n, int p, int d) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n * p + d);
  mean(equation) = 1.0;  // own first lag
  return mean;
}

Eigen::VectorXd minnesota_prior_scale(int n, int p, int d) {
  Eigen::VectorXd scale(n * p + d);
  for (int lag = 1; lag <= p; ++lag)
    scale.segment((lag - 1) * n, n).setConstant(1.0 / (static_cast<double>(lag) * lag));
  if (d > 0) scale.tail(d).setConstant(100.0);
  return scale;
}

ConditionalNormal a_row_conditional(int equation, const ParameterState& state, const Dataset& data) {
  const int n = data.N();
  const int t_len = data.T();
  const int k = static_cast<int>(data.X.cols());
  const int p = (k - (k % n)) / n;
  const int d = k - n * p;
  const Eigen::VectorXd mean0 = minnesota_prior_mean(equation, n, p, d);
  const Eigen::VectorXd scale0 = minnesota_prior_scale(n, p, d);

  Eigen::MatrixXd a_zero = state.A;
  a_zero.row(equation).setZero();
  const Eigen::MatrixXd resid = data.Y.transpose() - a_zero * data.X.transpose();

  ConditionalNormal out;
  out.precision = (1.0 / state.gamma_A(equation)) * scale0.cwiseInverse().asDiagonal();
  out.location = out.precision * mean0;

  for (int t = 0; t < t_len; ++t) {
    const int m = state.s(t);
    const Eigen::VectorXd col = state.B[m].col(equation);
    double wsum = 0.0, rhs = 0.0;
    for (int i = 0; i < n; ++i) {
      const double inv_sig = std::exp(-state.omega(i, m) * state.h(i, t));
      const double z = state.B[m].row(i).dot(resid.col(t));
      wsum += col(i) * col(i) * inv_sig;
      rhs += col(i) * z * inv_sig;
    }
    out.precision.noalias() += wsum * (data.X.row(t).transpose() * data.X.row(t));
    out.location.noalias() += rhs * data.X.row(t).transpose();
  }
  return out;
}

void sample_a_row(int equation, ParameterState& state, const Dataset& data, RngStream& rng) {
  const ConditionalNormal cond = a_row_conditional(equation, state, data);
  try {
    state.A.row(equation) = sample_mvn_precision(cond.location, cond.precision, rng).transpose();
  } catch (const std::runtime_error&) {
    throw std::runtime_error("autoregressive draw: precision not positive definite for equation " +
                             std::to_string(equation + 1));
  }
}

void sample_a_hyperparams(ParameterState& state, const PriorSettings& prior, RngStream& rng) {
  const int n = state.N();
  const int k = static_cast<int>(state.A.cols());
  const int p = (k - (k % n)) / n;
  const int d = k - n * p;
  const Eigen::VectorXd scale0 = minnesota_prior_scale(n, p, d);

  for (int eq = 0; eq < n; ++eq) {
    const Eigen::VectorXd dev = state.A.row(eq).transpose() - minnesota_prior_mean(eq, n, p, d);
    const double quad = (dev.array().square() / scale0.array()).sum();
    state.gamma_A(eq) = sample_ig2(state.s_A(eq) + quad, prior.nu_A + k, rng);
    const double scale = 1.0 / (1.0 / state.s_gamma_A + 0.5 / state.gamma_A(eq));
    state.s_A(eq) = sample_gamma(scale, prior.nu_gamma_A + 0.5 * prior.nu_A, rng);
  }
  state.s_gamma_A = sample_ig2(prior.s_sA + 2.0 * state.s_A.sum(),
                               prior.nu_sA + 2.0 * n * prior.nu_gamma_A, rng);
}

}  // namespace mssv
