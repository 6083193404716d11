#ifndef MSSV_STRUCTURAL_HPP
#define MSSV_STRUCTURAL_HPP

#include <Eigen/Dense>

#include "mssv/rng.hpp"
#include "mssv/types.hpp"

namespace mssv {

// Sufficient statistics for one structural row's generalized-normal full
// conditional within one regime:
//   precision = gamma^{-1} I_N + sum_{t: s_t=m} e_t e_t' / sigma2_{n,t},
// with e_t = y_t - A x_t the reduced-form residual.
struct RowPosteriorContext {
  int equation = 0;
  int regime = 0;
  int T_m = 0;
  double gamma = 1.0;
  Eigen::MatrixXd data_scatter;  // likelihood part only
  Eigen::MatrixXd precision;     // prior + likelihood
};

RowPosteriorContext make_row_context(int equation, int regime, const ParameterState& state,
                                     const Dataset& data);

// One draw of the free coefficients b of row `ctx.equation` of B_{ctx.regime},
// holding the other rows of B fixed. The full conditional is proportional to
// |det B(b)|^{T_m} exp(-b V P V' b'/2); the draw whitens to the free space,
// splits off the direction that moves the determinant, and gives it a
// random-sign square-rooted gamma coefficient.
Eigen::VectorXd sample_structural_row(const RowPosteriorContext& ctx, const Eigen::MatrixXd& B,
                                      const RestrictionPattern& pattern, RngStream& rng);

// Unnormalized log full-conditional density of the free coefficients.
double log_row_conditional_density(const RowPosteriorContext& ctx, const Eigen::MatrixXd& B,
                                   const RestrictionPattern& pattern, const Eigen::VectorXd& b);

struct TviDraw {
  int k = 0;
  Eigen::VectorXd b;
};

// Joint draw of (pattern index, row coefficients) for the selected equation
// in regime m: one fresh candidate row per pattern, then a multinomial draw
// over patterns with weights proportional to the regime-m likelihood times
// the coefficient prior (normalizing constants that differ across pattern
// dimensions included) times the flat 1/K pattern prior. Candidates for
// unselected patterns are discarded.
TviDraw sample_tvi_indicator(int equation, int regime, const ParameterState& state,
                             const RestrictionPatternSet& patterns, const Dataset& data,
                             RngStream& rng);

// Conjugate sweep of the structural shrinkage hierarchy
// (gamma_B, s_B, s_gamma_B), in place.
void sample_b_hyperparams(ParameterState& state, const RestrictionPatternSet& patterns,
                          const PriorSettings& prior, RngStream& rng);

// Flip rows of B so every diagonal element is positive; zero diagonals fall
// back to the sign of the row's first nonzero entry (counted in tie_breaks
// when provided). Idempotent; |det| unchanged.
Eigen::MatrixXd normalize_signs(const Eigen::MatrixXd& B, int* tie_breaks = nullptr);

}  // namespace mssv

#endif
