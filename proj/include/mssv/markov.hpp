#ifndef MSSV_MARKOV_HPP
#define MSSV_MARKOV_HPP

#include <Eigen/Dense>

#include "mssv/rng.hpp"
#include "mssv/types.hpp"

namespace mssv {

struct RegimePath {
  Eigen::VectorXi s;
  Eigen::VectorXi counts;       // observations per regime
  Eigen::MatrixXi transitions;  // n_ij counts, i -> j
};

RegimePath make_regime_path(const Eigen::VectorXi& s, int regimes);

// T x M table of log p(y_t | s_t = m, theta): the |det B_m| Jacobian plus the
// Gaussian shock densities with sigma2_{n,t} evaluated under regime m's omega.
Eigen::MatrixXd regime_log_densities(const ParameterState& state, const Dataset& data);

// Log-likelihood along the state's realized regime path.
double log_likelihood(const ParameterState& state, const Dataset& data);

// Forward filter in normalized space; row t holds p(s_t = m | y_{1:t}).
// Throws (naming t) when every regime density vanishes at some t.
Eigen::MatrixXd forward_filter(const Eigen::MatrixXd& log_densities, const Eigen::MatrixXd& P,
                               const Eigen::VectorXd& pi0);

// Exact joint draw of the path from its full conditional:
// forward-filtering, then backward sampling of s_T, s_{T-1}, ..., s_1.
Eigen::VectorXi ffbs_draw(const Eigen::MatrixXd& log_densities, const Eigen::MatrixXd& P,
                          const Eigen::VectorXd& pi0, RngStream& rng);

RegimePath ffbs(const ParameterState& state, const Dataset& data, RngStream& rng);

// Row m of P ~ Dirichlet(1 + d_m e_m + n_{m.}), in place.
void sample_transition_matrix(ParameterState& state, const PriorSettings& prior,
                              const RegimePath& path, RngStream& rng);

// pi0 ~ Dirichlet(1 + e_{s_1}); pi0 is the distribution of the first state.
void sample_initial_probs(ParameterState& state, const RegimePath& path, RngStream& rng);

}  // namespace mssv

#endif
