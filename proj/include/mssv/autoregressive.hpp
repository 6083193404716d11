#ifndef MSSV_AUTOREGRESSIVE_HPP
#define MSSV_AUTOREGRESSIVE_HPP

#include <Eigen/Dense>

#include "mssv/rng.hpp"
#include "mssv/types.hpp"

namespace mssv {

// Minnesota-style prior moments for one row of A: mean puts 1 on the own
// first lag, the diagonal scale decays with the squared lag and is 100 on
// deterministic terms.
Eigen::VectorXd minnesota_prior_mean(int equation, int n, int p, int d);
Eigen::VectorXd minnesota_prior_scale(int n, int p, int d);

// Precision and precision-premultiplied mean of a conjugate normal full
// conditional; the draw is N(precision^{-1} location, precision^{-1}).
struct ConditionalNormal {
  Eigen::MatrixXd precision;
  Eigen::VectorXd location;

  Eigen::VectorXd mean() const { return precision.llt().solve(location); }
};

// Full conditional of row `equation` of A given the other rows, the regime
// path and the volatilities, built from the transformed regression
// z_t = B_{s_t}(y_t - A_{n=0} x_t) = ([B]_{.n} (x) x_t') a_n' + u_t.
ConditionalNormal a_row_conditional(int equation, const ParameterState& state, const Dataset& data);

// Exact conjugate draw of row `equation` of A, in place.
void sample_a_row(int equation, ParameterState& state, const Dataset& data, RngStream& rng);

// Conjugate sweep of (gamma_A, s_A, s_gamma_A), in place.
void sample_a_hyperparams(ParameterState& state, const PriorSettings& prior, RngStream& rng);

}  // namespace mssv

#endif
