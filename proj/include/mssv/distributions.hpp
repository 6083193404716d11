#ifndef MSSV_DISTRIBUTIONS_HPP
#define MSSV_DISTRIBUTIONS_HPP

#include <Eigen/Dense>

#include "mssv/rng.hpp"

namespace mssv {

// Symmetric positive-definite tridiagonal matrix stored by bands.
// diag has length n, off has length n-1 (first sub/superdiagonal).
struct TridiagonalSpd {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  Eigen::Index size() const { return diag.size(); }
  Eigen::MatrixXd dense() const;
};

// Lower-bidiagonal Cholesky factor of a TridiagonalSpd, L L' = A.
struct TridiagonalCholesky {
  Eigen::VectorXd d;  // main diagonal of L
  Eigen::VectorXd e;  // subdiagonal of L

  // Throws if the matrix is not positive definite.
  static TridiagonalCholesky compute(const TridiagonalSpd& a);

  Eigen::VectorXd solve_lower(const Eigen::VectorXd& r) const;  // L y = r
  Eigen::VectorXd solve_upper(const Eigen::VectorXd& r) const;  // L' x = r
  Eigen::VectorXd solve(const Eigen::VectorXd& r) const;        // L L' x = r
};

// Gamma with density proportional to x^{shape-1} exp(-x/scale); mean = scale*shape.
double sample_gamma(double scale, double shape, RngStream& rng);

// Inverted gamma 2 with density proportional to x^{-(nu+2)/2} exp(-s/(2x));
// mean = s/(nu-2) for nu > 2.
double sample_ig2(double s, double nu, RngStream& rng);

// Generalized inverse Gaussian with density proportional to
//   x^{lambda-1} exp(-(chi/x + psi*x)/2),  x > 0.
// Boundary cases: chi = 0 requires lambda > 0 (gamma limb); psi = 0 requires
// lambda < 0 (inverse-gamma limb). Both zero is invalid.
double sample_gig(double lambda, double chi, double psi, RngStream& rng);

// Normal(mu, var) truncated to (lower, upper); robust in far tails.
double sample_truncated_normal(double mu, double var, double lower, double upper,
                               RngStream& rng);

// Dirichlet draw; alpha entries must be positive.
Eigen::VectorXd sample_dirichlet(const Eigen::VectorXd& alpha, RngStream& rng);

// Draw from N(Omega * location_premult, Omega) where Omega = precision^{-1}.
// The location argument is the precision-premultiplied mean, as produced by
// conjugate updates. Throws if the precision is not positive definite.
Eigen::VectorXd sample_mvn_precision(const Eigen::VectorXd& location_premult,
                                     const Eigen::MatrixXd& precision, RngStream& rng);

// Same draw with a tridiagonal precision; O(n) via the banded Cholesky.
// Consumes the same number of normal variates, in the same order, as the
// dense overload, so the two paths agree draw-for-draw under a shared seed.
Eigen::VectorXd sample_mvn_precision(const Eigen::VectorXd& location_premult,
                                     const TridiagonalSpd& precision, RngStream& rng);

// log(sum(exp(x))) with max subtraction; -inf for an empty or all -inf input.
double log_sum_exp(const Eigen::VectorXd& x);

// Categorical draw from unnormalized log weights. Throws if all weights are -inf.
int sample_categorical_logits(const Eigen::VectorXd& log_weights, RngStream& rng);

}  // namespace mssv

#endif
