#ifndef MSSV_TYPES_HPP
#define MSSV_TYPES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace mssv {

// Hyperparameters of the three-level shrinkage hierarchies, the Markov prior,
// and the log-volatility variance prior. Gamma is parameterized by (scale,
// shape) with density ~ x^{shape-1} exp(-x/scale); inverted gamma 2 by
// (s, nu) with density ~ x^{-(nu+2)/2} exp(-s/(2x)).
struct PriorSettings {
  double nu_B = 10.0;
  double nu_gamma_B = 10.0;
  double s_sB = 100.0;
  double nu_sB = 1.0;

  double nu_A = 10.0;
  double nu_gamma_A = 10.0;
  double s_sA = 10.0;
  double nu_sA = 10.0;

  // persistence boost d_m on the diagonal of the transition-matrix Dirichlet
  double dirichlet_boost = 11.0;

  // gamma prior on sigma2_omega
  double sigma2_omega_shape = 0.5;
  double sigma2_omega_scale = 1.0;
};

struct McmcSettings {
  int iterations = 20000;  // total, including burn-in
  int burnin = 10000;
  int thin = 1;
  std::uint64_t seed = 1;
};

struct ModelConfig {
  int N = 0;  // equations
  int p = 1;  // lags
  int d = 1;  // deterministic terms (v1 supports 0 or 1: constant)
  int M = 1;  // regimes
  int K = 1;  // identification patterns on the selected equation
  int tvi_equation = 0;  // 0-based equation index subject to pattern selection

  // per-pattern column masks for the selected equation, each a string of
  // length N over {'*','0'}: '*' = free coefficient, '0' = exclusion
  std::vector<std::string> pattern_masks;

  PriorSettings prior;
  McmcSettings mcmc;

  // Throws std::invalid_argument with a description on any violated invariant.
  void validate() const;
};

// One exclusion-restriction pattern for one equation: the 0/1 selection
// matrix V (r x N, one unit entry per row, columns in increasing order) and
// the indices of the free columns.
struct RestrictionPattern {
  Eigen::MatrixXd V;
  std::vector<int> free_columns;

  int r() const { return static_cast<int>(free_columns.size()); }

  // Row of B implied by free coefficients b (length r).
  Eigen::RowVectorXd expand(const Eigen::VectorXd& b) const;
  // Free coefficients recovered from a full row.
  Eigen::VectorXd compress(const Eigen::RowVectorXd& row) const;
};

// Patterns for every equation. The selected equation carries K alternatives,
// the remaining equations a single lower-triangular pattern. Patterns do not
// vary with the regime; the regime only picks among them.
class RestrictionPatternSet {
 public:
  RestrictionPatternSet() = default;
  RestrictionPatternSet(int n, int tvi_equation,
                        std::vector<std::vector<RestrictionPattern>> patterns);

  int equations() const { return n_; }
  int tvi_equation() const { return tvi_equation_; }
  int pattern_count(int equation) const;
  // regime argument kept for interface symmetry; patterns are regime-agnostic
  const RestrictionPattern& pattern(int equation, int regime, int k) const;

 private:
  int n_ = 0;
  int tvi_equation_ = 0;
  std::vector<std::vector<RestrictionPattern>> patterns_;
};

// Build the pattern set from the config's masks: the selected equation gets
// one pattern per mask, every other equation n the triangular mask freeing
// columns 0..n. A mask without free entries is rejected.
RestrictionPatternSet build_patterns(const ModelConfig& config);
RestrictionPatternSet build_patterns(const ModelConfig& config,
                                     const std::vector<std::string>& masks);

struct Dataset {
  Eigen::MatrixXd Y;  // T x N observations
  Eigen::MatrixXd X;  // T x (N*p+d) lagged regressors and deterministic terms
  std::vector<std::string> names;
  std::vector<std::string> time;  // labels for the T retained rows; may be empty

  int T() const { return static_cast<int>(Y.rows()); }
  int N() const { return static_cast<int>(Y.cols()); }
};

// Trim the first p rows into the regressor block: X_t = [y'_{t-1} ... y'_{t-p} d'_t].
// Throws on missing values (naming row and column) or insufficient length.
Dataset prepare_dataset(const Eigen::MatrixXd& raw, int p, int d,
                        std::vector<std::string> names = {},
                        std::vector<std::string> time = {});

// One complete Gibbs state.
struct ParameterState {
  Eigen::MatrixXd A;                // N x (N*p+d)
  std::vector<Eigen::MatrixXd> B;   // M matrices, N x N
  std::vector<int> kappa;           // M pattern indices (0-based)
  Eigen::MatrixXd P;                // M x M, rows on the simplex
  Eigen::VectorXd pi0;              // M
  Eigen::VectorXi s;                // T regime indices (0-based)
  Eigen::MatrixXd h;                // N x T log-volatilities
  Eigen::VectorXd rho;              // N, each in (-1,1)
  Eigen::MatrixXd omega;            // N x M volatility-of-log-volatility
  Eigen::VectorXd sigma2_omega;     // N
  Eigen::MatrixXi q;                // N x T mixture indicators (0..9)

  Eigen::VectorXd gamma_A, gamma_B;  // N
  Eigen::VectorXd s_A, s_B;          // N
  double s_gamma_A = 1.0, s_gamma_B = 1.0;

  int N() const { return static_cast<int>(A.rows()); }
  int M() const { return static_cast<int>(B.size()); }
  int T() const { return static_cast<int>(s.size()); }

  // Conditional shock variance sigma^2_{n,t} = exp(omega_n(s_t) h_{n,t}).
  double sigma2(int n, int t) const;
};

// Throws std::logic_error naming the violated ParameterState invariant.
void validate_state(const ParameterState& state, const RestrictionPatternSet& patterns);

struct ArchiveManifest {
  int format_version = 1;
  std::string config_hash;
  std::uint64_t seed = 0;
  int iterations = 0;
  int burnin = 0;
  int thin = 0;
  int stored = 0;
  int N = 0, p = 0, d = 0, M = 0, K = 0, T = 0;
  std::string created;
  std::string config_json;  // full configuration for self-contained archives
};

struct PosteriorArchive {
  ArchiveManifest manifest;
  std::vector<ParameterState> draws;

  int size() const { return static_cast<int>(draws.size()); }
};

// FNV-1a over the canonical config serialization; stable across platforms.
std::string config_hash(const ModelConfig& config);

}  // namespace mssv

#endif
