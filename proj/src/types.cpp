#include "mssv/types.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mssv {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void ModelConfig::validate() const {
  require(N >= 2, "config: N must be at least 2");
  require(p >= 1, "config: lag order p must be at least 1");
  require(d == 0 || d == 1, "config: deterministic term count d must be 0 or 1 (constant only)");
  require(M >= 1, "config: regime count M must be at least 1");
  require(K >= 1, "config: pattern count K must be at least 1");
  require(tvi_equation >= 0 && tvi_equation < N, "config: tvi_equation out of range 1..N");
  require(static_cast<int>(pattern_masks.size()) == K,
          "config: number of pattern masks must equal K");
  for (const auto& mask : pattern_masks) {
    require(static_cast<int>(mask.size()) == N, "config: pattern mask length must equal N");
    for (char c : mask) require(c == '*' || c == '0', "config: pattern mask characters must be '*' or '0'");
  }
  const PriorSettings& pr = prior;
  require(pr.nu_B > 0 && pr.nu_gamma_B > 0 && pr.s_sB > 0 && pr.nu_sB > 0,
          "config: structural prior hyperparameters must be positive");
  require(pr.nu_A > 0 && pr.nu_gamma_A > 0 && pr.s_sA > 0 && pr.nu_sA > 0,
          "config: autoregressive prior hyperparameters must be positive");
  require(pr.dirichlet_boost >= 0, "config: dirichlet_boost must be nonnegative");
  require(pr.sigma2_omega_shape > 0 && pr.sigma2_omega_scale > 0,
          "config: sigma2_omega prior shape and scale must be positive");
  require(mcmc.burnin >= 0, "config: burnin must be nonnegative");
  require(mcmc.iterations > mcmc.burnin, "config: iterations must exceed burnin");
  require(mcmc.thin >= 1, "config: thin must be at least 1");
}

Eigen::RowVectorXd RestrictionPattern::expand(const Eigen::VectorXd& b) const {
  if (b.size() != r()) throw std::invalid_argument("pattern: free-coefficient length mismatch");
  return b.transpose() * V;
}

Eigen::VectorXd RestrictionPattern::compress(const Eigen::RowVectorXd& row) const {
  if (row.size() != V.cols()) throw std::invalid_argument("pattern: row length mismatch");
  return V * row.transpose();
}

RestrictionPatternSet::RestrictionPatternSet(int n, int tvi_equation,
                                             std::vector<std::vector<RestrictionPattern>> patterns)
    : n_(n), tvi_equation_(tvi_equation), patterns_(std::move(patterns)) {}

int RestrictionPatternSet::pattern_count(int equation) const {
  return static_cast<int>(patterns_.at(equation).size());
}

const RestrictionPattern& RestrictionPatternSet::pattern(int equation, int, int k) const {
  return patterns_.at(equation).at(k);
}

namespace {

RestrictionPattern pattern_from_mask(const std::string& mask) {
  RestrictionPattern pat;
  const int n = static_cast<int>(mask.size());
  for (int j = 0; j < n; ++j)
    if (mask[j] == '*') pat.free_columns.push_back(j);
  const int r = static_cast<int>(pat.free_columns.size());
  if (r == 0) throw std::invalid_argument("pattern mask '" + mask + "' frees no coefficient (degenerate equation)");
  pat.V = Eigen::MatrixXd::Zero(r, n);
  for (int i = 0; i < r; ++i) pat.V(i, pat.free_columns[i]) = 1.0;
  return pat;
}

}  // namespace

RestrictionPatternSet build_patterns(const ModelConfig& config,
                                     const std::vector<std::string>& masks) {
  const int n = config.N;
  if (static_cast<int>(masks.size()) != config.K)
    throw std::invalid_argument("build_patterns: expected K pattern masks");
  std::vector<std::vector<RestrictionPattern>> pats(n);
  for (int eq = 0; eq < n; ++eq) {
    if (eq == config.tvi_equation) {
      for (const auto& mask : masks) {
        if (static_cast<int>(mask.size()) != n)
          throw std::invalid_argument("build_patterns: mask length must equal N");
        pats[eq].push_back(pattern_from_mask(mask));
      }
    } else {
      std::string tri(n, '0');
      for (int j = 0; j <= eq; ++j) tri[j] = '*';
      pats[eq].push_back(pattern_from_mask(tri));
    }
  }
  return RestrictionPatternSet(n, config.tvi_equation, std::move(pats));
}

RestrictionPatternSet build_patterns(const ModelConfig& config) {
  return build_patterns(config, config.pattern_masks);
}

Dataset prepare_dataset(const Eigen::MatrixXd& raw, int p, int d,
                        std::vector<std::string> names, std::vector<std::string> time) {
  const int t0 = static_cast<int>(raw.rows());
  const int n = static_cast<int>(raw.cols());
  if (p < 1) throw std::invalid_argument("prepare_dataset: p must be at least 1");
  if (d != 0 && d != 1) throw std::invalid_argument("prepare_dataset: d must be 0 or 1");
  if (t0 <= p) throw std::invalid_argument("prepare_dataset: need more than p rows of data");
  for (int i = 0; i < t0; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(raw(i, j))) {
        std::ostringstream msg;
        msg << "prepare_dataset: missing or non-finite value at row " << (i + 1) << ", column " << (j + 1);
        throw std::invalid_argument(msg.str());
      }

  Dataset data;
  const int t = t0 - p;
  data.Y = raw.bottomRows(t);
  data.X.resize(t, n * p + d);
  for (int row = 0; row < t; ++row) {
    for (int lag = 1; lag <= p; ++lag)
      data.X.block(row, (lag - 1) * n, 1, n) = raw.row(p + row - lag);
    if (d == 1) data.X(row, n * p) = 1.0;
  }
  data.names = std::move(names);
  if (!time.empty()) {
    if (static_cast<int>(time.size()) != t0)
      throw std::invalid_argument("prepare_dataset: time index length mismatch");
    data.time.assign(time.begin() + p, time.end());
  }
  return data;
}

double ParameterState::sigma2(int n, int t) const {
  return std::exp(omega(n, s(t)) * h(n, t));
}

void validate_state(const ParameterState& state, const RestrictionPatternSet& patterns) {
  const int n = state.N();
  const int m = state.M();
  const int t = state.T();
  auto fail = [](const std::string& what) { throw std::logic_error("state invariant violated: " + what); };

  if (static_cast<int>(state.kappa.size()) != m) fail("kappa size");
  for (int r = 0; r < m; ++r) {
    const Eigen::MatrixXd& b = state.B[r];
    if (b.rows() != n || b.cols() != n) fail("B dimensions");
    if (std::abs(b.partialPivLu().determinant()) <= 0.0) fail("B singular in regime " + std::to_string(r + 1));
    for (int eq = 0; eq < n; ++eq) {
      const int k = (eq == patterns.tvi_equation()) ? state.kappa[r] : 0;
      const RestrictionPattern& pat = patterns.pattern(eq, r, k);
      int next_free = 0;
      for (int j = 0; j < n; ++j) {
        const bool is_free = next_free < pat.r() && pat.free_columns[next_free] == j;
        if (is_free)
          ++next_free;
        else if (b(eq, j) != 0.0)
          fail("B entry off-pattern in regime " + std::to_string(r + 1));
      }
    }
  }
  if (state.P.rows() != m || state.P.cols() != m) fail("P dimensions");
  for (int i = 0; i < m; ++i) {
    if (state.P.row(i).minCoeff() < 0.0) fail("P has negative entries");
    if (std::abs(state.P.row(i).sum() - 1.0) > 1e-9) fail("P row does not sum to one");
  }
  if (std::abs(state.pi0.sum() - 1.0) > 1e-9 || state.pi0.minCoeff() < 0.0) fail("pi0 not a probability vector");
  for (int i = 0; i < t; ++i)
    if (state.s(i) < 0 || state.s(i) >= m) fail("regime index out of range");
  for (int eq = 0; eq < n; ++eq) {
    if (!(std::abs(state.rho(eq)) < 1.0)) fail("rho outside (-1,1)");
    if (!(state.sigma2_omega(eq) > 0.0)) fail("sigma2_omega not positive");
    if (!(state.gamma_A(eq) > 0.0) || !(state.gamma_B(eq) > 0.0)) fail("shrinkage gamma not positive");
    if (!(state.s_A(eq) > 0.0) || !(state.s_B(eq) > 0.0)) fail("shrinkage scale not positive");
  }
  if (!(state.s_gamma_A > 0.0) || !(state.s_gamma_B > 0.0)) fail("global shrinkage scale not positive");
  if (!state.h.allFinite()) fail("log-volatilities not finite");
  for (int eq = 0; eq < n; ++eq)
    for (int i = 0; i < t; ++i)
      if (state.q(eq, i) < 0 || state.q(eq, i) > 9) fail("mixture indicator out of range");
}

std::string config_hash(const ModelConfig& config) {
  std::ostringstream canon;
  canon.precision(17);
  canon << "N=" << config.N << ";p=" << config.p << ";d=" << config.d << ";M=" << config.M
        << ";K=" << config.K << ";tvi=" << config.tvi_equation << ";masks=";
  for (const auto& mask : config.pattern_masks) canon << mask << ",";
  const PriorSettings& pr = config.prior;
  canon << ";nuB=" << pr.nu_B << ";nugB=" << pr.nu_gamma_B << ";ssB=" << pr.s_sB
        << ";nusB=" << pr.nu_sB << ";nuA=" << pr.nu_A << ";nugA=" << pr.nu_gamma_A
        << ";ssA=" << pr.s_sA << ";nusA=" << pr.nu_sA << ";dm=" << pr.dirichlet_boost
        << ";soS=" << pr.sigma2_omega_shape << ";soC=" << pr.sigma2_omega_scale
        << ";iter=" << config.mcmc.iterations << ";burn=" << config.mcmc.burnin
        << ";thin=" << config.mcmc.thin;
  const std::string s = canon.str();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << hash;
  return out.str();
}

}  // namespace mssv
