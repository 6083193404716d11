#include "mssv/volatility.hpp"

#include <cmath>
#include <stdexcept>

#include "mssv/distributions.hpp"

namespace mssv {

namespace omori {

const double kProb[kComponents] = {0.00609, 0.04775, 0.13057, 0.20674, 0.22715,
                                   0.18842, 0.12047, 0.05591, 0.01575, 0.00115};
const double kMean[kComponents] = {1.92677,  1.34744,  0.73504,  0.02266,  -0.85173,
                                   -1.97278, -3.46788, -5.55246, -8.68384, -14.65000};
const double kVar[kComponents] = {0.11265, 0.17788, 0.26768, 0.40611, 0.62699,
                                  0.98583, 1.57469, 2.54498, 4.16591, 7.33342};

double mixture_mean() {
  double m = 0.0;
  for (int j = 0; j < kComponents; ++j) m += kProb[j] * kMean[j];
  return m;
}

double mixture_variance() {
  const double m = mixture_mean();
  double second = 0.0;
  for (int j = 0; j < kComponents; ++j) second += kProb[j] * (kVar[j] + kMean[j] * kMean[j]);
  return second - m * m;
}

double mixture_cdf(double x) {
  double acc = 0.0;
  for (int j = 0; j < kComponents; ++j)
    acc += kProb[j] * 0.5 * std::erfc(-(x - kMean[j]) / std::sqrt(2.0 * kVar[j]));
  return acc;
}

}  // namespace omori

Eigen::MatrixXd transformed_shocks(const ParameterState& state, const Dataset& data) {
  const int t_len = data.T();
  const Eigen::MatrixXd resid = data.Y.transpose() - state.A * data.X.transpose();
  Eigen::MatrixXd u_tilde(state.N(), t_len);
  for (int t = 0; t < t_len; ++t) {
    const Eigen::VectorXd u = state.B[state.s(t)] * resid.col(t);
    u_tilde.col(t) = (u.array().square() + kLogShockOffset).log();
  }
  return u_tilde;
}

Eigen::VectorXd mixture_posterior(double u_tilde_value, double level) {
  Eigen::VectorXd logw(omori::kComponents);
  for (int j = 0; j < omori::kComponents; ++j) {
    const double dev = u_tilde_value - level - omori::kMean[j];
    logw(j) = std::log(omori::kProb[j]) - 0.5 * std::log(omori::kVar[j]) -
              0.5 * dev * dev / omori::kVar[j];
  }
  const double lse = log_sum_exp(logw);
  return (logw.array() - lse).exp();
}

void sample_mixture_indicators(int n, ParameterState& state, const Eigen::RowVectorXd& u_tilde,
                               RngStream& rng) {
  const int t_len = state.T();
  Eigen::VectorXd logw(omori::kComponents);
  for (int t = 0; t < t_len; ++t) {
    const double level = state.omega(n, state.s(t)) * state.h(n, t);
    for (int j = 0; j < omori::kComponents; ++j) {
      const double dev = u_tilde(t) - level - omori::kMean[j];
      logw(j) = std::log(omori::kProb[j]) - 0.5 * std::log(omori::kVar[j]) -
                0.5 * dev * dev / omori::kVar[j];
    }
    state.q(n, t) = sample_categorical_logits(logw, rng);
  }
}

void h_conditional(int n, const ParameterState& state, const Eigen::RowVectorXd& u_tilde,
                   TridiagonalSpd* precision, Eigen::VectorXd* location) {
  const int t_len = state.T();
  const double rho = state.rho(n);
  precision->diag.resize(t_len);
  precision->off = Eigen::VectorXd::Constant(t_len - 1, -rho);
  location->resize(t_len);
  for (int t = 0; t < t_len; ++t) {
    const double w = state.omega(n, state.s(t));
    const double inv_vq = 1.0 / omori::kVar[state.q(n, t)];
    precision->diag(t) = w * w * inv_vq + ((t + 1 < t_len) ? 1.0 + rho * rho : 1.0);
    (*location)(t) = w * inv_vq * (u_tilde(t) - omori::kMean[state.q(n, t)]);
  }
}

void sample_log_volatilities(int n, ParameterState& state, const Eigen::RowVectorXd& u_tilde,
                             RngStream& rng) {
  TridiagonalSpd precision;
  Eigen::VectorXd location;
  h_conditional(n, state, u_tilde, &precision, &location);
  state.h.row(n) = sample_mvn_precision(location, precision, rng).transpose();
}

void sample_omega(int n, int m, ParameterState& state, const Eigen::RowVectorXd& u_tilde,
                  RngStream& rng) {
  double prec = 1.0 / state.sigma2_omega(n);
  double loc = 0.0;
  for (int t = 0; t < state.T(); ++t) {
    if (state.s(t) != m) continue;
    const double inv_vq = 1.0 / omori::kVar[state.q(n, t)];
    prec += state.h(n, t) * state.h(n, t) * inv_vq;
    loc += state.h(n, t) * inv_vq * (u_tilde(t) - omori::kMean[state.q(n, t)]);
  }
  state.omega(n, m) = loc / prec + rng.normal() / std::sqrt(prec);
}

namespace {

// AR(1) regression moments of a log-volatility path with h_0 = 0.
void ar1_moments(const Eigen::RowVectorXd& h, double* den, double* num) {
  const int t_len = static_cast<int>(h.size());
  *den = 0.0;
  *num = 0.0;
  for (int t = 0; t + 1 < t_len; ++t) *den += h(t) * h(t);
  for (int t = 1; t < t_len; ++t) *num += h(t) * h(t - 1);
}

double draw_rho(const Eigen::RowVectorXd& h, RngStream& rng) {
  double den, num;
  ar1_moments(h, &den, &num);
  if (den <= 0.0) return 2.0 * rng.uniform() - 1.0;  // flat prior, no information
  return sample_truncated_normal(num / den, 1.0 / den, -1.0, 1.0, rng);
}

}  // namespace

void sample_rho(int n, ParameterState& state, RngStream& rng) {
  state.rho(n) = draw_rho(state.h.row(n), rng);
}

void sample_sigma_omega2(int n, ParameterState& state, const PriorSettings& prior, RngStream& rng) {
  const double order = state.M() * prior.sigma2_omega_shape - 0.5;
  const double chi = state.omega.row(n).squaredNorm();
  state.sigma2_omega(n) = sample_gig(order, chi, 2.0 / prior.sigma2_omega_scale, rng);
}

void asis_interweave(int n, ParameterState& state, RngStream& rng) {
  const int t_len = state.T();
  const int m_count = state.M();
  const double rho = state.rho(n);

  Eigen::RowVectorXd h_centered(t_len);
  for (int t = 0; t < t_len; ++t) h_centered(t) = state.omega(n, state.s(t)) * state.h(n, t);

  Eigen::VectorXd omega_new = state.omega.row(n).transpose();
  std::vector<bool> skipped(m_count, false);
  for (int m = 0; m < m_count; ++m) {
    if (state.omega(n, m) == 0.0) {
      skipped[m] = true;  // centered transform undefined; keep the non-centered draw
      continue;
    }
    int t_m = 0;
    double chi = 0.0;
    for (int t = 0; t < t_len; ++t) {
      if (state.s(t) != m) continue;
      ++t_m;
      double v = h_centered(t);
      if (t > 0 && state.s(t - 1) == m) v -= rho * h_centered(t - 1);
      chi += v * v;
    }
    const double scale2 =
        sample_gig(-0.5 * (t_m - 1.0), chi, 1.0 / state.sigma2_omega(n), rng);
    const double sign = (rng.uniform() < 0.5) ? -1.0 : 1.0;
    omega_new(m) = sign * std::sqrt(scale2);
  }

  state.rho(n) = draw_rho(h_centered, rng);

  for (int t = 0; t < t_len; ++t) {
    const int m = state.s(t);
    if (!skipped[m]) state.h(n, t) = h_centered(t) / omega_new(m);
  }
  state.omega.row(n) = omega_new.transpose();
}

void sample_sv_block(ParameterState& state, const Dataset& data, const PriorSettings& prior,
                     RngStream& rng, bool interweave) {
  const Eigen::MatrixXd u_tilde = transformed_shocks(state, data);
  for (int n = 0; n < state.N(); ++n) {
    sample_mixture_indicators(n, state, u_tilde.row(n), rng);
    sample_log_volatilities(n, state, u_tilde.row(n), rng);
    for (int m = 0; m < state.M(); ++m) sample_omega(n, m, state, u_tilde.row(n), rng);
    sample_rho(n, state, rng);
    sample_sigma_omega2(n, state, prior, rng);
    if (interweave) asis_interweave(n, state, rng);
  }
}

}  // namespace mssv
