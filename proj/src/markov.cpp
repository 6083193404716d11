#include "mssv/markov.hpp"

#include <cmath>
#include <stdexcept>

#include "mssv/distributions.hpp"

namespace mssv {

RegimePath make_regime_path(const Eigen::VectorXi& s, int regimes) {
  RegimePath path;
  path.s = s;
  path.counts = Eigen::VectorXi::Zero(regimes);
  path.transitions = Eigen::MatrixXi::Zero(regimes, regimes);
  for (int t = 0; t < s.size(); ++t) {
    path.counts(s(t)) += 1;
    if (t > 0) path.transitions(s(t - 1), s(t)) += 1;
  }
  return path;
}

Eigen::MatrixXd regime_log_densities(const ParameterState& state, const Dataset& data) {
  const int n = state.N();
  const int m_count = state.M();
  const int t_len = data.T();
  const double log2pi = std::log(2.0 * M_PI);

  const Eigen::MatrixXd resid = data.Y.transpose() - state.A * data.X.transpose();

  Eigen::MatrixXd logf(t_len, m_count);
  for (int m = 0; m < m_count; ++m) {
    const double logdet = std::log(std::abs(state.B[m].partialPivLu().determinant()));
    const Eigen::MatrixXd shocks = state.B[m] * resid;
    for (int t = 0; t < t_len; ++t) {
      double acc = logdet - 0.5 * n * log2pi;
      for (int i = 0; i < n; ++i) {
        const double log_sig2 = state.omega(i, m) * state.h(i, t);
        acc -= 0.5 * (log_sig2 + shocks(i, t) * shocks(i, t) * std::exp(-log_sig2));
      }
      logf(t, m) = acc;
    }
  }
  return logf;
}

double log_likelihood(const ParameterState& state, const Dataset& data) {
  const Eigen::MatrixXd logf = regime_log_densities(state, data);
  double total = 0.0;
  for (int t = 0; t < data.T(); ++t) total += logf(t, state.s(t));
  return total;
}

Eigen::MatrixXd forward_filter(const Eigen::MatrixXd& log_densities, const Eigen::MatrixXd& P,
                               const Eigen::VectorXd& pi0) {
  const int t_len = static_cast<int>(log_densities.rows());
  const int m_count = static_cast<int>(log_densities.cols());
  Eigen::MatrixXd filtered(t_len, m_count);
  Eigen::VectorXd predicted = pi0;
  for (int t = 0; t < t_len; ++t) {
    const double shift = log_densities.row(t).maxCoeff();
    if (!std::isfinite(shift))
      throw std::runtime_error("forward filter: all regime densities vanish at t = " +
                               std::to_string(t + 1));
    Eigen::VectorXd joint(m_count);
    for (int m = 0; m < m_count; ++m)
      joint(m) = predicted(m) * std::exp(log_densities(t, m) - shift);
    const double norm = joint.sum();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw std::runtime_error("forward filter: probability mass vanished at t = " +
                               std::to_string(t + 1));
    filtered.row(t) = joint.transpose() / norm;
    predicted = P.transpose() * filtered.row(t).transpose();
  }
  return filtered;
}

namespace {

int draw_from_probs(const Eigen::VectorXd& prob, RngStream& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  for (int i = 0; i < prob.size(); ++i) {
    cum += prob(i);
    if (u <= cum) return i;
  }
  return static_cast<int>(prob.size()) - 1;
}

}  // namespace

Eigen::VectorXi ffbs_draw(const Eigen::MatrixXd& log_densities, const Eigen::MatrixXd& P,
                          const Eigen::VectorXd& pi0, RngStream& rng) {
  const int t_len = static_cast<int>(log_densities.rows());
  const Eigen::MatrixXd filtered = forward_filter(log_densities, P, pi0);

  Eigen::VectorXi s(t_len);
  s(t_len - 1) = draw_from_probs(filtered.row(t_len - 1).transpose(), rng);
  for (int t = t_len - 2; t >= 0; --t) {
    Eigen::VectorXd prob =
        filtered.row(t).transpose().cwiseProduct(P.col(s(t + 1)));
    prob /= prob.sum();
    s(t) = draw_from_probs(prob, rng);
  }
  return s;
}

RegimePath ffbs(const ParameterState& state, const Dataset& data, RngStream& rng) {
  if (state.M() == 1) {
    return make_regime_path(Eigen::VectorXi::Zero(data.T()), 1);
  }
  const Eigen::MatrixXd logf = regime_log_densities(state, data);
  return make_regime_path(ffbs_draw(logf, state.P, state.pi0, rng), state.M());
}

void sample_transition_matrix(ParameterState& state, const PriorSettings& prior,
                              const RegimePath& path, RngStream& rng) {
  const int m_count = state.M();
  for (int m = 0; m < m_count; ++m) {
    Eigen::VectorXd alpha = Eigen::VectorXd::Ones(m_count);
    alpha(m) += prior.dirichlet_boost;
    alpha += path.transitions.row(m).cast<double>().transpose();
    state.P.row(m) = sample_dirichlet(alpha, rng).transpose();
  }
}

void sample_initial_probs(ParameterState& state, const RegimePath& path, RngStream& rng) {
  Eigen::VectorXd alpha = Eigen::VectorXd::Ones(state.M());
  alpha(path.s(0)) += 1.0;
  state.pi0 = sample_dirichlet(alpha, rng);
}

}  // namespace mssv
