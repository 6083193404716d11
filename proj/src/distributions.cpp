#include "mssv/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mssv {

Eigen::MatrixXd TridiagonalSpd::dense() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = diag(i);
    if (i + 1 < n) {
      a(i, i + 1) = off(i);
      a(i + 1, i) = off(i);
    }
  }
  return a;
}

TridiagonalCholesky TridiagonalCholesky::compute(const TridiagonalSpd& a) {
  const Eigen::Index n = a.size();
  if (a.off.size() != n - 1) throw std::invalid_argument("tridiagonal: band length mismatch");
  TridiagonalCholesky c;
  c.d.resize(n);
  c.e.resize(n > 0 ? n - 1 : 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    double v = a.diag(i);
    if (i > 0) v -= c.e(i - 1) * c.e(i - 1);
    if (!(v > 0.0)) throw std::runtime_error("tridiagonal Cholesky: matrix not positive definite");
    c.d(i) = std::sqrt(v);
    if (i + 1 < n) c.e(i) = a.off(i) / c.d(i);
  }
  return c;
}

Eigen::VectorXd TridiagonalCholesky::solve_lower(const Eigen::VectorXd& r) const {
  const Eigen::Index n = d.size();
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double v = r(i);
    if (i > 0) v -= e(i - 1) * y(i - 1);
    y(i) = v / d(i);
  }
  return y;
}

Eigen::VectorXd TridiagonalCholesky::solve_upper(const Eigen::VectorXd& r) const {
  const Eigen::Index n = d.size();
  Eigen::VectorXd x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double v = r(i);
    if (i + 1 < n) v -= e(i) * x(i + 1);
    x(i) = v / d(i);
  }
  return x;
}

Eigen::VectorXd TridiagonalCholesky::solve(const Eigen::VectorXd& r) const {
  return solve_upper(solve_lower(r));
}

double sample_gamma(double scale, double shape, RngStream& rng) {
  if (!(scale > 0.0) || !(shape > 0.0))
    throw std::invalid_argument("sample_gamma: scale and shape must be positive");
  return scale * rng.gamma(shape);
}

double sample_ig2(double s, double nu, RngStream& rng) {
  if (!(s > 0.0) || !(nu > 0.0))
    throw std::invalid_argument("sample_ig2: scale and shape must be positive");
  // x = s / chi2_nu
  return s / (2.0 * rng.gamma(0.5 * nu));
}

namespace {

// Mode of the two-parameter GIG density y^{lambda-1} exp(-(omega/2)(y+1/y)),
// written to avoid cancellation for either sign of lambda-1.
double gig_mode(double lambda, double omega) {
  if (lambda >= 1.0)
    return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
  return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

// Ratio-of-uniforums for the two-parameter GIG, no mode shift.
double gig_rou_noshift(double lambda, double omega, RngStream& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double ym = ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) / omega;
  const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);
  for (;;) {
    const double u = um * rng.uniform();
    const double v = rng.uniform();
    const double x = u / v;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Ratio-of-uniforms with the mode shifted to zero; for large lambda or omega.
double gig_rou_shift(double lambda, double omega, RngStream& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);

  // u bounds from the cubic for the extrema of (x - xm) sqrt(f(x)/f(xm))
  const double a = -(2.0 * (lambda + 1.0) / omega + xm);
  const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
  const double c = xm;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double fi = std::acos(-q / (2.0 * std::sqrt(-p * p * p / 27.0)));
  const double fak = 2.0 * std::sqrt(-p / 3.0);
  const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
  const double y2 = fak * std::cos(fi / 3.0 + 4.0 * M_PI / 3.0) - a / 3.0;
  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);

  for (;;) {
    const double u = uminus + rng.uniform() * (uplus - uminus);
    const double v = rng.uniform();
    const double x = u / v + xm;
    if (x > 0.0 && std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Rejection from a three-piece hat (constant / power / exponential) for
// 0 <= lambda < 1 and small omega, where ratio-of-uniforms degenerates.
double gig_three_piece(double lambda, double omega, RngStream& rng) {
  const double xm = gig_mode(lambda, omega);
  const double x0 = omega / (1.0 - lambda);
  const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
  const double area0 = k0 * x0;

  double k1 = 0.0, k2, area1 = 0.0, area2, xs;
  if (x0 >= 2.0 / omega) {
    xs = x0;
    k2 = std::pow(x0, lambda - 1.0);
    area2 = k2 * (2.0 / omega) * std::exp(-0.5 * omega * x0);
  } else {
    xs = 2.0 / omega;
    k1 = std::exp(-omega);
    area1 = (lambda == 0.0) ? k1 * std::log(2.0 / (omega * x0))
                            : k1 * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda)) / lambda;
    k2 = std::pow(2.0 / omega, lambda - 1.0);
    area2 = k2 * (2.0 / omega) * std::exp(-1.0);
  }
  const double total = area0 + area1 + area2;

  for (;;) {
    double v = total * rng.uniform();
    double x, hx;
    if (v <= area0) {
      x = x0 * v / area0;
      hx = k0;
    } else if ((v -= area0) <= area1) {
      if (lambda == 0.0) {
        x = x0 * std::exp(v / k1);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, lambda) + v * lambda / k1, 1.0 / lambda);
        hx = k1 * std::pow(x, lambda - 1.0);
      }
    } else {
      v -= area1;
      x = -(2.0 / omega) * std::log(std::exp(-0.5 * omega * xs) - v * omega / (2.0 * k2));
      hx = k2 * std::exp(-0.5 * omega * x);
    }
    const double fx = std::exp((lambda - 1.0) * std::log(x) - 0.5 * omega * (x + 1.0 / x));
    if (rng.uniform() * hx <= fx) return x;
  }
}

// Two-parameter GIG(lambda, omega) for lambda >= 0, omega > 0, following the
// regime selection of Hormann and Leydold.
double gig_two_param(double lambda, double omega, RngStream& rng) {
  if (lambda > 2.0 || omega > 3.0) return gig_rou_shift(lambda, omega, rng);
  if (lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) return gig_rou_noshift(lambda, omega, rng);
  return gig_three_piece(lambda, omega, rng);
}

}  // namespace

double sample_gig(double lambda, double chi, double psi, RngStream& rng) {
  if (chi < 0.0 || psi < 0.0) throw std::invalid_argument("sample_gig: chi and psi must be nonnegative");
  if (chi == 0.0 && psi == 0.0) throw std::invalid_argument("sample_gig: chi and psi cannot both be zero");
  if (chi == 0.0) {
    if (!(lambda > 0.0)) throw std::invalid_argument("sample_gig: chi = 0 requires lambda > 0");
    return sample_gamma(2.0 / psi, lambda, rng);
  }
  if (psi == 0.0) {
    if (!(lambda < 0.0)) throw std::invalid_argument("sample_gig: psi = 0 requires lambda < 0");
    return sample_ig2(chi, -2.0 * lambda, rng);
  }
  const double omega = std::sqrt(chi) * std::sqrt(psi);
  const double alpha = std::sqrt(chi / psi);
  if (!(omega > 0.0)) {
    // product underflow; fall back to the dominant limb
    if (lambda > 0.0) return sample_gamma(2.0 / psi, lambda, rng);
    if (lambda < 0.0) return sample_ig2(chi, -2.0 * lambda, rng);
    throw std::runtime_error("sample_gig: parameters underflow with lambda = 0");
  }
  const double y = (lambda >= 0.0) ? gig_two_param(lambda, omega, rng)
                                   : 1.0 / gig_two_param(-lambda, omega, rng);
  return alpha * y;
}

namespace {

// Truncated standard normal on (a, b), Robert (1995)-style accept-reject.
double truncated_std_normal(double a, double b, RngStream& rng) {
  if (a <= 0.0 && b >= 0.0) {
    if (b - a < std::sqrt(2.0 * M_PI)) {
      for (;;) {
        const double z = a + (b - a) * rng.uniform();
        if (rng.uniform() <= std::exp(-0.5 * z * z)) return z;
      }
    }
    for (;;) {
      const double z = rng.normal();
      if (z >= a && z <= b) return z;
    }
  }
  if (b < 0.0) return -truncated_std_normal(-b, -a, rng);

  // both bounds positive
  const double root = std::sqrt(a * a + 4.0);
  const double blim = a + 2.0 * std::sqrt(M_E) / (a + root) * std::exp((a * a - a * root) / 4.0);
  if (b > blim) {
    const double lam = 0.5 * (a + root);
    for (;;) {
      const double z = a + rng.exponential(lam);
      if (z > b) continue;
      if (rng.uniform() <= std::exp(-0.5 * (z - lam) * (z - lam))) return z;
    }
  }
  for (;;) {
    const double z = a + (b - a) * rng.uniform();
    if (rng.uniform() <= std::exp(0.5 * (a * a - z * z))) return z;
  }
}

}  // namespace

double sample_truncated_normal(double mu, double var, double lower, double upper, RngStream& rng) {
  if (!(var > 0.0)) throw std::invalid_argument("sample_truncated_normal: variance must be positive");
  if (!(lower < upper)) throw std::invalid_argument("sample_truncated_normal: requires lower < upper");
  const double sd = std::sqrt(var);
  const double z = truncated_std_normal((lower - mu) / sd, (upper - mu) / sd, rng);
  return mu + sd * z;
}

Eigen::VectorXd sample_dirichlet(const Eigen::VectorXd& alpha, RngStream& rng) {
  const Eigen::Index k = alpha.size();
  if (k == 0) throw std::invalid_argument("sample_dirichlet: empty parameter vector");
  for (Eigen::Index i = 0; i < k; ++i)
    if (!(alpha(i) > 0.0)) throw std::invalid_argument("sample_dirichlet: all parameters must be positive");
  Eigen::VectorXd g(k);
  for (;;) {
    for (Eigen::Index i = 0; i < k; ++i) g(i) = rng.gamma(alpha(i));
    const double sum = g.sum();
    if (sum > 0.0) return g / sum;
  }
}

Eigen::VectorXd sample_mvn_precision(const Eigen::VectorXd& location_premult,
                                     const Eigen::MatrixXd& precision, RngStream& rng) {
  const Eigen::Index n = precision.rows();
  if (precision.cols() != n || location_premult.size() != n)
    throw std::invalid_argument("sample_mvn_precision: dimension mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("sample_mvn_precision: precision matrix not positive definite");
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
  // mean = Prec^{-1} loc, draw = mean + L'^{-1} z
  Eigen::VectorXd x = llt.solve(location_premult);
  x += llt.matrixU().solve(z);
  return x;
}

Eigen::VectorXd sample_mvn_precision(const Eigen::VectorXd& location_premult,
                                     const TridiagonalSpd& precision, RngStream& rng) {
  const Eigen::Index n = precision.size();
  if (location_premult.size() != n)
    throw std::invalid_argument("sample_mvn_precision: dimension mismatch");
  const TridiagonalCholesky chol = TridiagonalCholesky::compute(precision);
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
  Eigen::VectorXd x = chol.solve(location_premult);
  x += chol.solve_upper(z);
  return x;
}

double log_sum_exp(const Eigen::VectorXd& x) {
  if (x.size() == 0) return -std::numeric_limits<double>::infinity();
  const double m = x.maxCoeff();
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += std::exp(x(i) - m);
  return m + std::log(acc);
}

int sample_categorical_logits(const Eigen::VectorXd& log_weights, RngStream& rng) {
  const double lse = log_sum_exp(log_weights);
  if (!std::isfinite(lse))
    throw std::runtime_error("sample_categorical_logits: all weights vanish");
  const double u = rng.uniform();
  double cum = 0.0;
  const Eigen::Index k = log_weights.size();
  for (Eigen::Index i = 0; i < k; ++i) {
    cum += std::exp(log_weights(i) - lse);
    if (u <= cum) return static_cast<int>(i);
  }
  return static_cast<int>(k - 1);
}

}  // namespace mssv
