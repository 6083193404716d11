#include "mssv/simulation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "mssv/distributions.hpp"

namespace mssv {

double companion_spectral_radius(const Eigen::MatrixXd& A, int n, int p) {
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n * p, n * p);
  comp.topRows(n) = A.leftCols(n * p);
  if (p > 1) comp.block(n, 0, n * (p - 1), n * (p - 1)).setIdentity();
  return comp.eigenvalues().cwiseAbs().maxCoeff();
}

void DgpSpec::validate() const {
  if (N < 1 || p < 1 || T < 1) throw std::invalid_argument("dgp: N, p, T must be positive");
  if (d != 0 && d != 1) throw std::invalid_argument("dgp: d must be 0 or 1");
  if (A.rows() != N || A.cols() != N * p + d) throw std::invalid_argument("dgp: A dimensions");
  if (static_cast<int>(B.size()) != M || static_cast<int>(kappa.size()) != M)
    throw std::invalid_argument("dgp: B or kappa regime count mismatch");
  for (const auto& b : B) {
    if (b.rows() != N || b.cols() != N) throw std::invalid_argument("dgp: B dimensions");
    if (std::abs(b.partialPivLu().determinant()) <= 0.0) throw std::invalid_argument("dgp: B singular");
  }
  if (P.rows() != M || P.cols() != M || pi0.size() != M) throw std::invalid_argument("dgp: P or pi0 dimensions");
  for (int m = 0; m < M; ++m)
    if (std::abs(P.row(m).sum() - 1.0) > 1e-9 || P.row(m).minCoeff() < 0.0)
      throw std::invalid_argument("dgp: P rows must lie on the simplex");
  if (std::abs(pi0.sum() - 1.0) > 1e-9 || pi0.minCoeff() < 0.0)
    throw std::invalid_argument("dgp: pi0 must lie on the simplex");
  if (rho.size() != N || rho.cwiseAbs().maxCoeff() >= 1.0)
    throw std::invalid_argument("dgp: rho must lie in (-1,1)");
  if (omega.rows() != N || omega.cols() != M) throw std::invalid_argument("dgp: omega dimensions");
  if (companion_spectral_radius(A, N, p) >= 1.0)
    throw std::invalid_argument("dgp: companion matrix must be stable (spectral radius < 1)");
}

namespace {

int draw_categorical(const Eigen::VectorXd& prob, RngStream& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  for (int i = 0; i < prob.size(); ++i) {
    cum += prob(i);
    if (u <= cum) return i;
  }
  return static_cast<int>(prob.size()) - 1;
}

}  // namespace

SimulationOutput simulate(const DgpSpec& spec, RngStream& rng) {
  spec.validate();
  const int n = spec.N, p = spec.p, t_len = spec.T;

  SimulationOutput out;
  out.s.resize(t_len);
  out.h.resize(n, t_len);
  out.u.resize(n, t_len);
  out.raw = Eigen::MatrixXd::Zero(t_len + p, n);

  out.s(0) = draw_categorical(spec.pi0, rng);
  for (int t = 1; t < t_len; ++t)
    out.s(t) = draw_categorical(spec.P.row(out.s(t - 1)).transpose(), rng);

  for (int eq = 0; eq < n; ++eq) {
    double prev = 0.0;  // h_{n,0} = 0
    for (int t = 0; t < t_len; ++t) {
      prev = spec.rho(eq) * prev + rng.normal();
      out.h(eq, t) = prev;
    }
  }

  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;
  lu.reserve(spec.M);
  for (const auto& b : spec.B) lu.emplace_back(b);

  for (int t = 0; t < t_len; ++t) {
    const int m = out.s(t);
    for (int eq = 0; eq < n; ++eq) {
      const double sd = std::exp(0.5 * spec.omega(eq, m) * out.h(eq, t));
      out.u(eq, t) = sd * rng.normal();
    }
    Eigen::VectorXd x(n * p + spec.d);
    for (int lag = 1; lag <= p; ++lag)
      x.segment((lag - 1) * n, n) = out.raw.row(p + t - lag).transpose();
    if (spec.d == 1) x(n * p) = 1.0;
    const Eigen::VectorXd eps = lu[m].solve(out.u.col(t));
    out.raw.row(p + t) = (spec.A * x + eps).transpose();
  }

  out.data = prepare_dataset(out.raw, p, spec.d);
  return out;
}

Eigen::MatrixXd brute_force_path_posterior(const Eigen::MatrixXd& log_densities,
                                           const Eigen::MatrixXd& P,
                                           const Eigen::VectorXd& pi0) {
  const int t_len = static_cast<int>(log_densities.rows());
  const int m = static_cast<int>(log_densities.cols());
  if (P.rows() != m || P.cols() != m || pi0.size() != m)
    throw std::invalid_argument("brute_force_path_posterior: dimension mismatch");
  double paths = std::pow(static_cast<double>(m), t_len);
  if (paths > (1 << 24)) throw std::invalid_argument("brute_force_path_posterior: path space too large");
  const long total = static_cast<long>(paths);

  std::vector<int> path(t_len);
  std::vector<double> log_weight(total);
  double max_lw = -std::numeric_limits<double>::infinity();
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (int t = 0; t < t_len; ++t) {
      path[t] = static_cast<int>(rem % m);
      rem /= m;
    }
    double lw = std::log(pi0(path[0])) + log_densities(0, path[0]);
    for (int t = 1; t < t_len; ++t)
      lw += std::log(P(path[t - 1], path[t])) + log_densities(t, path[t]);
    log_weight[idx] = lw;
    max_lw = std::max(max_lw, lw);
  }

  Eigen::MatrixXd marginal = Eigen::MatrixXd::Zero(t_len, m);
  double norm = 0.0;
  for (long idx = 0; idx < total; ++idx) {
    const double w = std::exp(log_weight[idx] - max_lw);
    norm += w;
    long rem = idx;
    for (int t = 0; t < t_len; ++t) {
      marginal(t, static_cast<int>(rem % m)) += w;
      rem /= m;
    }
  }
  return marginal / norm;
}

namespace {

Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& grid) {
  const int n = static_cast<int>(grid.size());
  if (n < 3) throw std::invalid_argument("grid_density_oracle: grid too small");
  Eigen::VectorXd w(n);
  w(0) = 0.5 * (grid(1) - grid(0));
  w(n - 1) = 0.5 * (grid(n - 1) - grid(n - 2));
  for (int i = 1; i + 1 < n; ++i) w(i) = 0.5 * (grid(i + 1) - grid(i - 1));
  return w;
}

void check_coverage(double boundary_max, double interior_max) {
  if (boundary_max > 1e-8 * interior_max)
    throw std::runtime_error("grid_density_oracle: grid does not cover the distribution's mass");
}

}  // namespace

Eigen::VectorXd grid_density_oracle(const std::function<double(double)>& log_density,
                                    const Eigen::VectorXd& grid) {
  const int n = static_cast<int>(grid.size());
  Eigen::VectorXd logf(n);
  for (int i = 0; i < n; ++i) logf(i) = log_density(grid(i));
  const double shift = logf.maxCoeff();
  const Eigen::VectorXd w = trapezoid_weights(grid);
  Eigen::VectorXd pmf(n);
  for (int i = 0; i < n; ++i) pmf(i) = std::exp(logf(i) - shift) * w(i);
  check_coverage(std::max(pmf(0), pmf(n - 1)), pmf.maxCoeff());
  return pmf / pmf.sum();
}

Eigen::MatrixXd grid_density_oracle(const std::function<double(double, double)>& log_density,
                                    const Eigen::VectorXd& grid_x,
                                    const Eigen::VectorXd& grid_y) {
  const int nx = static_cast<int>(grid_x.size());
  const int ny = static_cast<int>(grid_y.size());
  Eigen::MatrixXd logf(nx, ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) logf(i, j) = log_density(grid_x(i), grid_y(j));
  const double shift = logf.maxCoeff();
  const Eigen::VectorXd wx = trapezoid_weights(grid_x);
  const Eigen::VectorXd wy = trapezoid_weights(grid_y);
  Eigen::MatrixXd pmf(nx, ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) pmf(i, j) = std::exp(logf(i, j) - shift) * wx(i) * wy(j);
  double boundary = 0.0;
  boundary = std::max(boundary, pmf.row(0).maxCoeff());
  boundary = std::max(boundary, pmf.row(nx - 1).maxCoeff());
  boundary = std::max(boundary, pmf.col(0).maxCoeff());
  boundary = std::max(boundary, pmf.col(ny - 1).maxCoeff());
  check_coverage(boundary, pmf.maxCoeff());
  return pmf / pmf.sum();
}

}  // namespace mssv
