#include "mssv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mssv/structural.hpp"

namespace mssv {

HdiSummary summarize_draws(std::vector<double> draws, double mass) {
  if (draws.empty()) throw std::invalid_argument("summarize_draws: no draws");
  if (!(mass > 0.0) || !(mass <= 1.0)) throw std::invalid_argument("summarize_draws: mass in (0,1]");
  std::sort(draws.begin(), draws.end());
  const int n = static_cast<int>(draws.size());

  HdiSummary out;
  out.median = (n % 2 == 1) ? draws[n / 2] : 0.5 * (draws[n / 2 - 1] + draws[n / 2]);

  int width = static_cast<int>(std::ceil(mass * n));
  width = std::min(std::max(width, 1), n);
  int best = 0;
  double best_span = draws[width - 1] - draws[0];
  for (int i = 1; i + width <= n; ++i) {
    const double span = draws[i + width - 1] - draws[i];
    if (span < best_span) {
      best_span = span;
      best = i;
    }
  }
  out.lower = draws[best];
  out.upper = draws[best + width - 1];
  return out;
}

Eigen::MatrixXd tvi_probabilities(const PosteriorArchive& archive) {
  if (archive.draws.empty()) throw std::invalid_argument("tvi_probabilities: empty archive");
  const int m_count = archive.draws.front().M();
  const int k_count = std::max(archive.manifest.K, 1);
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(m_count, k_count);
  for (const ParameterState& draw : archive.draws)
    for (int m = 0; m < m_count; ++m) table(m, draw.kappa[m]) += 1.0;
  return table / static_cast<double>(archive.size());
}

Eigen::MatrixXd regime_probabilities(const PosteriorArchive& archive) {
  if (archive.draws.empty()) throw std::invalid_argument("regime_probabilities: empty archive");
  const int t_len = archive.draws.front().T();
  const int m_count = archive.draws.front().M();
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(t_len, m_count);
  for (const ParameterState& draw : archive.draws)
    for (int t = 0; t < t_len; ++t) table(t, draw.s(t)) += 1.0;
  return table / static_cast<double>(archive.size());
}

std::vector<HetRegimeReport> verify_heteroskedasticity(const PosteriorArchive& archive,
                                                       int equation, double epsilon) {
  if (archive.draws.empty()) throw std::invalid_argument("verify_heteroskedasticity: empty archive");
  const int m_count = archive.draws.front().M();
  std::vector<HetRegimeReport> reports(m_count);
  for (int m = 0; m < m_count; ++m) {
    HetRegimeReport& rep = reports[m];
    rep.regime = m;
    rep.draws.reserve(archive.size());
    std::vector<double> folded;
    folded.reserve(archive.size());
    int near_zero = 0;
    for (const ParameterState& draw : archive.draws) {
      const double w = draw.omega(equation, m);
      rep.draws.push_back(w);
      folded.push_back(std::abs(w));
      if (std::abs(w) < epsilon) ++near_zero;
    }
    rep.fraction_near_zero = static_cast<double>(near_zero) / archive.size();
    rep.abs_omega = summarize_draws(folded, 0.90);
    rep.identified = rep.abs_omega.lower > epsilon;
  }
  return reports;
}

Eigen::MatrixXd var_irf(const Eigen::MatrixXd& A, int n, int p, const Eigen::VectorXd& impact,
                        int horizons) {
  Eigen::MatrixXd theta(n, horizons + 1);
  theta.col(0) = impact;
  for (int h = 1; h <= horizons; ++h) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
    for (int lag = 1; lag <= std::min(h, p); ++lag)
      acc.noalias() += A.middleCols((lag - 1) * n, n) * theta.col(h - lag);
    theta.col(h) = acc;
  }
  return theta;
}

namespace {

struct ArchiveDims {
  int n, m_count, t_len, p, d;
};

ArchiveDims dims_of(const PosteriorArchive& archive) {
  const ParameterState& first = archive.draws.front();
  ArchiveDims dims;
  dims.n = first.N();
  dims.m_count = first.M();
  dims.t_len = first.T();
  const int k = static_cast<int>(first.A.cols());
  dims.p = (k - (k % dims.n)) / dims.n;
  dims.d = k - dims.n * dims.p;
  return dims;
}

// Impact column of shock `shock` under sign-normalized B, rescaled so the
// instrument moves by `size`. Returns false for singular or zero-impact draws.
bool scaled_impact(const Eigen::MatrixXd& B, int shock, int instrument, double size,
                   Eigen::VectorXd* impact) {
  const Eigen::MatrixXd bn = normalize_signs(B);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bn);
  if (std::abs(lu.determinant()) <= 0.0) return false;
  Eigen::VectorXd col = lu.solve(Eigen::VectorXd::Unit(B.rows(), shock));
  const double at_instrument = col(instrument);
  if (at_instrument == 0.0 || !std::isfinite(at_instrument)) return false;
  *impact = col * (size / at_instrument);
  return impact->allFinite();
}

}  // namespace

IrfResult impulse_responses(const PosteriorArchive& archive, int shock, int horizons, double size,
                            int instrument, double mass) {
  if (archive.draws.empty()) throw std::invalid_argument("impulse_responses: empty archive");
  const ArchiveDims dims = dims_of(archive);
  if (shock < 0 || shock >= dims.n) throw std::invalid_argument("impulse_responses: shock out of range");
  if (instrument < 0) instrument = shock;

  IrfResult result;
  result.shock = shock;
  result.instrument = instrument;
  result.size = size;
  result.mass = mass;
  result.horizons = horizons;

  // values[m][var][h] across draws
  std::vector<std::vector<std::vector<std::vector<double>>>> values(
      dims.m_count, std::vector<std::vector<std::vector<double>>>(
                        dims.n, std::vector<std::vector<double>>(horizons + 1)));

  for (const ParameterState& draw : archive.draws) {
    for (int m = 0; m < dims.m_count; ++m) {
      Eigen::VectorXd impact;
      if (!scaled_impact(draw.B[m], shock, instrument, size, &impact)) {
        ++result.skipped_draws;
        continue;
      }
      const Eigen::MatrixXd theta = var_irf(draw.A, dims.n, dims.p, impact, horizons);
      for (int var = 0; var < dims.n; ++var)
        for (int h = 0; h <= horizons; ++h) values[m][var][h].push_back(theta(var, h));
    }
  }

  result.median.assign(dims.m_count, std::vector<Eigen::VectorXd>(dims.n));
  result.lower = result.median;
  result.upper = result.median;
  for (int m = 0; m < dims.m_count; ++m)
    for (int var = 0; var < dims.n; ++var) {
      Eigen::VectorXd med(horizons + 1), lo(horizons + 1), hi(horizons + 1);
      for (int h = 0; h <= horizons; ++h) {
        if (values[m][var][h].empty())
          throw std::runtime_error("impulse_responses: no usable draws in regime " +
                                   std::to_string(m + 1));
        const HdiSummary s = summarize_draws(values[m][var][h], mass);
        med(h) = s.median;
        lo(h) = s.lower;
        hi(h) = s.upper;
      }
      result.median[m][var] = med;
      result.lower[m][var] = lo;
      result.upper[m][var] = hi;
    }
  return result;
}

std::vector<double> impact_response_distribution(const PosteriorArchive& archive, int shock,
                                                 int variable, double size, int regime,
                                                 int instrument, int pattern_filter) {
  if (archive.draws.empty())
    throw std::invalid_argument("impact_response_distribution: empty archive");
  if (instrument < 0) instrument = shock;
  std::vector<double> out;
  for (const ParameterState& draw : archive.draws) {
    if (pattern_filter >= 0 && draw.kappa[regime] != pattern_filter) continue;
    Eigen::VectorXd impact;
    if (!scaled_impact(draw.B[regime], shock, instrument, size, &impact)) continue;
    out.push_back(impact(variable));
  }
  if (out.empty())
    throw std::runtime_error("impact_response_distribution: no draws match the pattern filter");
  return out;
}

Eigen::MatrixXd structural_shocks(const ParameterState& draw, const Dataset& data) {
  const int t_len = data.T();
  std::vector<Eigen::MatrixXd> b_norm(draw.M());
  for (int m = 0; m < draw.M(); ++m) b_norm[m] = normalize_signs(draw.B[m]);
  const Eigen::MatrixXd resid = data.Y.transpose() - draw.A * data.X.transpose();
  Eigen::MatrixXd shocks(draw.N(), t_len);
  for (int t = 0; t < t_len; ++t) shocks.col(t) = b_norm[draw.s(t)] * resid.col(t);
  return shocks;
}

CumulativeEffects cumulative_effects(const PosteriorArchive& archive, const Dataset& data,
                                     int window, int shock, double mass) {
  if (archive.draws.empty()) throw std::invalid_argument("cumulative_effects: empty archive");
  if (window < 1) throw std::invalid_argument("cumulative_effects: window must be positive");
  const ArchiveDims dims = dims_of(archive);

  CumulativeEffects result;
  result.shock = shock;
  result.window = window;
  result.mass = mass;
  result.truncated.resize(dims.t_len);
  for (int t = 0; t < dims.t_len; ++t) result.truncated[t] = (t + 1) < window;

  std::vector<std::vector<std::vector<double>>> values(
      dims.n, std::vector<std::vector<double>>(dims.t_len));

  for (const ParameterState& draw : archive.draws) {
    const Eigen::MatrixXd shocks = structural_shocks(draw, data);
    // unit-shock responses per regime, horizons 0..window-1
    std::vector<Eigen::MatrixXd> theta(dims.m_count);
    for (int m = 0; m < dims.m_count; ++m) {
      const Eigen::MatrixXd bn = normalize_signs(draw.B[m]);
      const Eigen::VectorXd impact =
          bn.partialPivLu().solve(Eigen::VectorXd::Unit(dims.n, shock));
      theta[m] = var_irf(draw.A, dims.n, dims.p, impact, window - 1);
    }
    for (int t = 0; t < dims.t_len; ++t) {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(dims.n);
      for (int j = 0; j < window && j <= t; ++j)
        acc += theta[draw.s(t - j)].col(j) * shocks(shock, t - j);
      for (int var = 0; var < dims.n; ++var) values[var][t].push_back(acc(var));
    }
  }

  result.series.assign(dims.n, std::vector<HdiSummary>(dims.t_len));
  for (int var = 0; var < dims.n; ++var)
    for (int t = 0; t < dims.t_len; ++t)
      result.series[var][t] = summarize_draws(values[var][t], mass);
  return result;
}

Eigen::MatrixXd reconstruct_path(const ParameterState& draw, const Dataset& data,
                                 int policy_equation, int donor_regime) {
  const int n = draw.N();
  const int t_len = data.T();
  const int k = static_cast<int>(draw.A.cols());
  const int p = (k - (k % n)) / n;
  const int d = k - n * p;
  if (donor_regime >= draw.M()) throw std::invalid_argument("reconstruct_path: donor regime out of range");

  std::vector<Eigen::MatrixXd> b_norm(draw.M());
  for (int m = 0; m < draw.M(); ++m) b_norm[m] = normalize_signs(draw.B[m]);

  // counterfactual structural matrices: policy row taken from the donor
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu(draw.M());
  std::vector<Eigen::MatrixXd> b_cf(draw.M());
  for (int m = 0; m < draw.M(); ++m) {
    b_cf[m] = b_norm[m];
    const int source = (donor_regime >= 0) ? donor_regime : m;
    b_cf[m].row(policy_equation) = b_norm[source].row(policy_equation);
    lu[m] = Eigen::PartialPivLU<Eigen::MatrixXd>(b_cf[m]);
  }

  const Eigen::MatrixXd resid = data.Y.transpose() - draw.A * data.X.transpose();

  Eigen::MatrixXd path(t_len, n);
  Eigen::VectorXd lag_buffer = data.X.row(0).transpose();  // presample lags
  for (int t = 0; t < t_len; ++t) {
    const int m = draw.s(t);
    const Eigen::VectorXd shocks = b_norm[m] * resid.col(t);
    Eigen::VectorXd rebuilt(n);
    for (int i = 0; i < n; ++i) {
      const double half_log_sig2 = 0.5 * draw.omega(i, m) * draw.h(i, t);
      const double z = shocks(i) * std::exp(-half_log_sig2);
      const int source = (i == policy_equation && donor_regime >= 0) ? donor_regime : m;
      const double half_log_sig2_cf = 0.5 * draw.omega(i, source) * draw.h(i, t);
      rebuilt(i) = z * std::exp(half_log_sig2_cf);
    }
    const Eigen::VectorXd eps = lu[m].solve(rebuilt);
    Eigen::VectorXd x(k);
    x = lag_buffer;
    if (d == 1) x(n * p) = 1.0;
    const Eigen::VectorXd y = draw.A * x + eps;
    path.row(t) = y.transpose();
    // shift lags
    if (p > 1)
      lag_buffer.segment(n, n * (p - 1)) = lag_buffer.head(n * (p - 1)).eval();
    lag_buffer.head(n) = y;
  }
  return path;
}

CounterfactualResult counterfactual(const PosteriorArchive& archive, const Dataset& data,
                                    int policy_equation, int donor_regime, double mass) {
  if (archive.draws.empty()) throw std::invalid_argument("counterfactual: empty archive");
  const ArchiveDims dims = dims_of(archive);
  if (donor_regime < 0 || donor_regime >= dims.m_count)
    throw std::invalid_argument("counterfactual: donor regime out of range");
  if (policy_equation < 0 || policy_equation >= dims.n)
    throw std::invalid_argument("counterfactual: policy equation out of range");

  CounterfactualResult result;
  result.policy_equation = policy_equation;
  result.donor_regime = donor_regime;
  result.mass = mass;

  std::vector<std::vector<std::vector<double>>> cf(
      dims.n, std::vector<std::vector<double>>(dims.t_len));
  auto actual = cf;

  for (const ParameterState& draw : archive.draws) {
    const Eigen::MatrixXd cf_path = reconstruct_path(draw, data, policy_equation, donor_regime);
    const Eigen::MatrixXd model_path = reconstruct_path(draw, data, policy_equation, -1);
    for (int var = 0; var < dims.n; ++var)
      for (int t = 0; t < dims.t_len; ++t) {
        cf[var][t].push_back(cf_path(t, var));
        actual[var][t].push_back(model_path(t, var));
      }
  }

  result.counterfactual.assign(dims.n, std::vector<HdiSummary>(dims.t_len));
  result.model_implied = result.counterfactual;
  for (int var = 0; var < dims.n; ++var)
    for (int t = 0; t < dims.t_len; ++t) {
      result.counterfactual[var][t] = summarize_draws(cf[var][t], mass);
      result.model_implied[var][t] = summarize_draws(actual[var][t], mass);
    }
  return result;
}

RegimeMoments regime_moments(const PosteriorArchive& archive, const Dataset& data,
                             const std::vector<bool>& difference) {
  if (archive.draws.empty()) throw std::invalid_argument("regime_moments: empty archive");
  const ArchiveDims dims = dims_of(archive);
  if (!difference.empty() && static_cast<int>(difference.size()) != dims.n)
    throw std::invalid_argument("regime_moments: difference flag length mismatch");

  RegimeMoments result;
  const Eigen::MatrixXd probs = regime_probabilities(archive);
  result.mode_path.resize(dims.t_len);
  for (int t = 0; t < dims.t_len; ++t) {
    int arg = 0;
    probs.row(t).maxCoeff(&arg);
    result.mode_path(t) = arg;
  }

  Eigen::MatrixXd shock_mean_t = Eigen::MatrixXd::Zero(dims.n, dims.t_len);
  for (const ParameterState& draw : archive.draws) shock_mean_t += structural_shocks(draw, data);
  shock_mean_t /= static_cast<double>(archive.size());

  result.data_mean = Eigen::MatrixXd::Zero(dims.n, dims.m_count);
  result.data_sd = Eigen::MatrixXd::Zero(dims.n, dims.m_count);
  result.shock_mean = Eigen::MatrixXd::Zero(dims.n, dims.m_count);
  result.shock_sd = Eigen::MatrixXd::Zero(dims.n, dims.m_count);

  for (int var = 0; var < dims.n; ++var) {
    const bool diff = !difference.empty() && difference[var];
    for (int m = 0; m < dims.m_count; ++m) {
      std::vector<double> xs, us;
      for (int t = 0; t < dims.t_len; ++t) {
        if (result.mode_path(t) != m) continue;
        if (diff) {
          if (t == 0) continue;
          xs.push_back(data.Y(t, var) - data.Y(t - 1, var));
        } else {
          xs.push_back(data.Y(t, var));
        }
        us.push_back(shock_mean_t(var, t));
      }
      auto moments = [](const std::vector<double>& v, double* mean, double* sd) {
        if (v.empty()) {
          *mean = std::numeric_limits<double>::quiet_NaN();
          *sd = std::numeric_limits<double>::quiet_NaN();
          return;
        }
        double m1 = 0.0;
        for (double x : v) m1 += x;
        m1 /= v.size();
        double m2 = 0.0;
        for (double x : v) m2 += (x - m1) * (x - m1);
        *mean = m1;
        *sd = v.size() > 1 ? std::sqrt(m2 / (v.size() - 1)) : 0.0;
      };
      moments(xs, &result.data_mean(var, m), &result.data_sd(var, m));
      moments(us, &result.shock_mean(var, m), &result.shock_sd(var, m));
    }
  }
  return result;
}

}  // namespace mssv
