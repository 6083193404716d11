#ifndef MSSV_VOLATILITY_HPP
#define MSSV_VOLATILITY_HPP

#include <Eigen/Dense>

#include "mssv/distributions.hpp"
#include "mssv/rng.hpp"
#include "mssv/types.hpp"

namespace mssv {

// Ten-component normal mixture approximating the log chi^2_1 distribution,
// constants verbatim from the published table. The unit tests pin the
// implied moments as a guard against transcription errors.
namespace omori {
constexpr int kComponents = 10;
extern const double kProb[kComponents];
extern const double kMean[kComponents];
extern const double kVar[kComponents];

double mixture_mean();
double mixture_variance();
double mixture_cdf(double x);
}  // namespace omori

// Offset guarding log(u^2) against exact-zero residuals.
constexpr double kLogShockOffset = 1e-10;

// log((B_{s_t} (y_t - A x_t))^2 + offset), N x T.
Eigen::MatrixXd transformed_shocks(const ParameterState& state, const Dataset& data);

// Normalized posterior over the ten mixture components for one observation,
// given level = omega_n(s_t) h_{n,t}.
Eigen::VectorXd mixture_posterior(double u_tilde_value, double level);

// Per-t independent categorical draws of the mixture indicators for shock n.
void sample_mixture_indicators(int n, ParameterState& state,
                               const Eigen::RowVectorXd& u_tilde, RngStream& rng);

// Tridiagonal precision diag(omega^2) diag(sigma_q^{-2}) + H_rho' H_rho and
// its location vector; the h_n full conditional is
// N(precision^{-1} location, precision^{-1}).
void h_conditional(int n, const ParameterState& state, const Eigen::RowVectorXd& u_tilde,
                   TridiagonalSpd* precision, Eigen::VectorXd* location);

// Exact T-variate normal draw of h_n through the banded Cholesky.
void sample_log_volatilities(int n, ParameterState& state, const Eigen::RowVectorXd& u_tilde,
                             RngStream& rng);

// Scalar normal draw of omega_n(m) from its regime-m full conditional.
void sample_omega(int n, int m, ParameterState& state, const Eigen::RowVectorXd& u_tilde,
                  RngStream& rng);

// Truncated-normal draw of rho_n on (-1,1); uniform when h is identically zero.
void sample_rho(int n, ParameterState& state, RngStream& rng);

// GIG draw of sigma2_omega_n with order M*shape - 1/2.
void sample_sigma_omega2(int n, ParameterState& state, const PriorSettings& prior, RngStream& rng);

// Ancillarity-sufficiency interweave: move to the centered parameterization
// h~ = omega h, redraw the regime scales via GIG with a random sign, resample
// rho from h~, and map back. Regimes whose omega is exactly zero are skipped.
void asis_interweave(int n, ParameterState& state, RngStream& rng);

// Full SV sweep for all equations: q, h, omega, rho, sigma2_omega, then the
// interweave (which can be disabled for mixing comparisons).
void sample_sv_block(ParameterState& state, const Dataset& data, const PriorSettings& prior,
                     RngStream& rng, bool interweave = true);

}  // namespace mssv

#endif
