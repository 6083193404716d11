#ifndef MSSV_ANALYSIS_HPP
#define MSSV_ANALYSIS_HPP

#include <Eigen/Dense>
#include <vector>

#include "mssv/types.hpp"

namespace mssv {

struct HdiSummary {
  double median = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Shortest interval containing `mass` of the draws, plus the sample median.
HdiSummary summarize_draws(std::vector<double> draws, double mass);

// Fraction of draws selecting each pattern per regime; rows sum to one.
Eigen::MatrixXd tvi_probabilities(const PosteriorArchive& archive);

// Posterior regime probabilities, T x M; rows sum to one.
Eigen::MatrixXd regime_probabilities(const PosteriorArchive& archive);

struct HetRegimeReport {
  int regime = 0;
  double fraction_near_zero = 0.0;  // share of draws with |omega| < epsilon
  HdiSummary abs_omega;             // sign-folded posterior summary
  bool identified = false;          // 90% HDI of |omega| lies above epsilon
  std::vector<double> draws;        // raw omega draws for histogramming
};

// Per-regime check of the within-regime heteroskedasticity of shock n.
std::vector<HetRegimeReport> verify_heteroskedasticity(const PosteriorArchive& archive,
                                                       int equation, double epsilon);

// Dynamic responses to a one-off structural shock, holding the regime fixed
// along the horizon. Impact responses are columns of B_m^{-1} rescaled so the
// instrument variable moves by `size` at horizon zero.
struct IrfResult {
  int shock = 0;
  int instrument = 0;
  double size = 1.0;
  double mass = 0.95;
  int horizons = 0;
  int skipped_draws = 0;  // singular or zero-impact draws
  // [regime][variable] paths over horizons 0..H
  std::vector<std::vector<Eigen::VectorXd>> median, lower, upper;
};

IrfResult impulse_responses(const PosteriorArchive& archive, int shock, int horizons, double size,
                            int instrument = -1, double mass = 0.95);

// Horizon-zero responses of one variable across draws for one regime,
// optionally keeping only draws whose pattern indicator equals
// `pattern_filter`. Throws when the filter matches no draw.
std::vector<double> impact_response_distribution(const PosteriorArchive& archive, int shock,
                                                 int variable, double size, int regime,
                                                 int instrument = -1, int pattern_filter = -1);

// Responses accumulated over the trailing window of realized shocks.
struct CumulativeEffects {
  int shock = 0;
  int window = 12;
  double mass = 0.68;
  std::vector<bool> truncated;                      // t with fewer than `window` terms
  std::vector<std::vector<HdiSummary>> series;      // [variable][t]
};

CumulativeEffects cumulative_effects(const PosteriorArchive& archive, const Dataset& data,
                                     int window, int shock, double mass = 0.68);

// Observables rebuilt from one draw's standardized shocks with the policy
// row of B and its omega taken from `donor_regime`; donor_regime = -1
// reproduces the model-implied path (identity substitution).
Eigen::MatrixXd reconstruct_path(const ParameterState& draw, const Dataset& data,
                                 int policy_equation, int donor_regime);

struct CounterfactualResult {
  int policy_equation = 0;
  int donor_regime = 0;
  double mass = 0.68;
  std::vector<std::vector<HdiSummary>> counterfactual;  // [variable][t]
  std::vector<std::vector<HdiSummary>> model_implied;   // [variable][t]
};

CounterfactualResult counterfactual(const PosteriorArchive& archive, const Dataset& data,
                                    int policy_equation, int donor_regime, double mass = 0.68);

// Sample moments of data and posterior-mean structural shocks with
// observations allocated to regimes by the posterior-mode path. Variables
// flagged in `difference` enter in first differences.
struct RegimeMoments {
  Eigen::VectorXi mode_path;                 // T
  Eigen::MatrixXd data_mean, data_sd;        // N x M
  Eigen::MatrixXd shock_mean, shock_sd;      // N x M
};

RegimeMoments regime_moments(const PosteriorArchive& archive, const Dataset& data,
                             const std::vector<bool>& difference = {});

// Structural shocks u_t = B_{s_t} (y_t - A x_t) for one draw, with rows of B
// sign-normalized first.
Eigen::MatrixXd structural_shocks(const ParameterState& draw, const Dataset& data);

// Response paths of a VAR to a given impact vector, horizons 0..H.
Eigen::MatrixXd var_irf(const Eigen::MatrixXd& A, int n, int p, const Eigen::VectorXd& impact,
                        int horizons);

}  // namespace mssv

#endif
