#include "mssv/structural.hpp"

#include <cmath>
#include <stdexcept>

#include "mssv/distributions.hpp"

namespace mssv {

RowPosteriorContext make_row_context(int equation, int regime, const ParameterState& state,
                                     const Dataset& data) {
  const int n = data.N();
  RowPosteriorContext ctx;
  ctx.equation = equation;
  ctx.regime = regime;
  ctx.gamma = state.gamma_B(equation);
  ctx.data_scatter = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < data.T(); ++t) {
    if (state.s(t) != regime) continue;
    ++ctx.T_m;
    const Eigen::VectorXd eps = data.Y.row(t).transpose() - state.A * data.X.row(t).transpose();
    const double weight = std::exp(-state.omega(equation, regime) * state.h(equation, t));
    ctx.data_scatter.noalias() += weight * (eps * eps.transpose());
  }
  ctx.precision = ctx.data_scatter;
  ctx.precision.diagonal().array() += 1.0 / ctx.gamma;
  return ctx;
}

namespace {

// Unit vector orthogonal to all rows of B except `equation`; this is the
// direction along which the row moves det(B).
Eigen::VectorXd determinant_direction(const Eigen::MatrixXd& B, int equation) {
  const int n = static_cast<int>(B.rows());
  Eigen::MatrixXd others(n, n - 1);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    if (i == equation) continue;
    others.col(col++) = B.row(i).transpose();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(others);
  if (qr.rank() < n - 1)
    throw std::runtime_error("structural row draw: remaining rows of B are rank deficient");
  return qr.householderQ() * Eigen::VectorXd::Unit(n, n - 1);
}

}  // namespace

Eigen::VectorXd sample_structural_row(const RowPosteriorContext& ctx, const Eigen::MatrixXd& B,
                                      const RestrictionPattern& pattern, RngStream& rng) {
  const int r = pattern.r();
  const Eigen::MatrixXd W = pattern.V * ctx.precision * pattern.V.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(W);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("structural row draw: whitening matrix not positive definite");

  Eigen::VectorXd alpha(r);
  if (ctx.T_m == 0) {
    // likelihood vanishes; plain normal draw in the whitened space
    for (int i = 0; i < r; ++i) alpha(i) = rng.normal();
    return llt.matrixU().solve(alpha);
  }

  const Eigen::VectorXd direction = determinant_direction(B, ctx.equation);
  Eigen::VectorXd w = llt.matrixL().solve(pattern.V * direction);
  const double norm = w.norm();
  if (!(norm > 1e-300))
    throw std::runtime_error("structural row draw: pattern cannot move the determinant (singular system)");
  w /= norm;

  // orthonormal basis with first column along w
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(w);
  const Eigen::MatrixXd Q = qr.householderQ();

  const double magnitude = std::sqrt(sample_gamma(2.0, 0.5 * (ctx.T_m + 1.0), rng));
  alpha(0) = (rng.uniform() < 0.5) ? -magnitude : magnitude;
  for (int i = 1; i < r; ++i) alpha(i) = rng.normal();

  return llt.matrixU().solve(Q * alpha);
}

double log_row_conditional_density(const RowPosteriorContext& ctx, const Eigen::MatrixXd& B,
                                   const RestrictionPattern& pattern, const Eigen::VectorXd& b) {
  Eigen::MatrixXd full = B;
  full.row(ctx.equation) = pattern.expand(b);
  const double det = full.partialPivLu().determinant();
  if (det == 0.0) return -std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd W = pattern.V * ctx.precision * pattern.V.transpose();
  return ctx.T_m * std::log(std::abs(det)) - 0.5 * b.dot(W * b);
}

TviDraw sample_tvi_indicator(int equation, int regime, const ParameterState& state,
                             const RestrictionPatternSet& patterns, const Dataset& data,
                             RngStream& rng) {
  const int n_patterns = patterns.pattern_count(equation);
  const RowPosteriorContext ctx = make_row_context(equation, regime, state, data);

  std::vector<Eigen::VectorXd> candidates(n_patterns);
  Eigen::VectorXd log_weight(n_patterns);
  for (int k = 0; k < n_patterns; ++k) {
    const RestrictionPattern& pat = patterns.pattern(equation, regime, k);
    candidates[k] = sample_structural_row(ctx, state.B[regime], pat, rng);
    const Eigen::VectorXd& b = candidates[k];

    Eigen::MatrixXd full = state.B[regime];
    full.row(equation) = pat.expand(b);
    const double det = full.partialPivLu().determinant();
    if (det == 0.0) {
      log_weight(k) = -std::numeric_limits<double>::infinity();
      continue;
    }
    const Eigen::MatrixXd S = pat.V * ctx.data_scatter * pat.V.transpose();
    // regime-m likelihood factor times the b prior; pieces common across k cancel
    log_weight(k) = ctx.T_m * std::log(std::abs(det)) - 0.5 * b.dot(S * b) -
                    0.5 * b.squaredNorm() / ctx.gamma -
                    0.5 * pat.r() * std::log(2.0 * M_PI * ctx.gamma);
  }

  TviDraw draw;
  try {
    draw.k = sample_categorical_logits(log_weight, rng);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("pattern selection: all candidate weights vanished for equation " +
                             std::to_string(equation + 1) + ", regime " + std::to_string(regime + 1));
  }
  draw.b = candidates[draw.k];
  return draw;
}

void sample_b_hyperparams(ParameterState& state, const RestrictionPatternSet& patterns,
                          const PriorSettings& prior, RngStream& rng) {
  const int n = state.N();
  const int m = state.M();
  for (int eq = 0; eq < n; ++eq) {
    double ssq = 0.0;
    int r_total = 0;
    for (int reg = 0; reg < m; ++reg) {
      const int k = (eq == patterns.tvi_equation()) ? state.kappa[reg] : 0;
      const RestrictionPattern& pat = patterns.pattern(eq, reg, k);
      const Eigen::VectorXd b = pat.compress(state.B[reg].row(eq));
      ssq += b.squaredNorm();
      r_total += pat.r();
    }
    state.gamma_B(eq) = sample_ig2(state.s_B(eq) + ssq, prior.nu_B + r_total, rng);
    const double scale = 1.0 / (1.0 / state.s_gamma_B + 0.5 / state.gamma_B(eq));
    state.s_B(eq) = sample_gamma(scale, prior.nu_gamma_B + 0.5 * prior.nu_B, rng);
  }
  state.s_gamma_B = sample_ig2(prior.s_sB + 2.0 * state.s_B.sum(),
                               prior.nu_sB + 2.0 * n * prior.nu_gamma_B, rng);
}

Eigen::MatrixXd normalize_signs(const Eigen::MatrixXd& B, int* tie_breaks) {
  Eigen::MatrixXd out = B;
  const int n = static_cast<int>(B.rows());
  for (int i = 0; i < n; ++i) {
    double pivot = out(i, i);
    if (pivot == 0.0) {
      if (tie_breaks) ++(*tie_breaks);
      for (int j = 0; j < n; ++j)
        if (out(i, j) != 0.0) {
          pivot = out(i, j);
          break;
        }
    }
    if (pivot < 0.0) out.row(i) = -out.row(i);
  }
  return out;
}

}  // namespace mssv
