#include "mssv/gibbs.hpp"

#include <cmath>
#include <ctime>
#include <iostream>
#include <stdexcept>

#include "mssv/autoregressive.hpp"
#include "mssv/markov.hpp"
#include "mssv/structural.hpp"
#include "mssv/volatility.hpp"

namespace mssv {

namespace {

// IG2 prior mean, falling back to the mode when the mean does not exist.
double ig2_center(double s, double nu) { return nu > 2.0 ? s / (nu - 2.0) : s / (nu + 2.0); }

Eigen::MatrixXd masked_to_pattern(const Eigen::MatrixXd& B, const RestrictionPatternSet& patterns) {
  const int n = static_cast<int>(B.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int eq = 0; eq < n; ++eq) {
    const RestrictionPattern& pat = patterns.pattern(eq, 0, 0);
    for (int j : pat.free_columns) out(eq, j) = B(eq, j);
  }
  return out;
}

Eigen::MatrixXd identity_fallback(const RestrictionPatternSet& patterns, int n) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int eq = 0; eq < n; ++eq) {
    const RestrictionPattern& pat = patterns.pattern(eq, 0, 0);
    int col = pat.free_columns.front();
    for (int j : pat.free_columns)
      if (j == eq) col = eq;
    b(eq, col) = 1.0;
  }
  if (std::abs(b.partialPivLu().determinant()) <= 0.0)
    throw std::runtime_error("init_state: identity fallback is singular under the first pattern");
  return b;
}

}  // namespace

ParameterState init_state(const ModelConfig& config, const RestrictionPatternSet& patterns,
                          const Dataset& data, RngStream& rng) {
  config.validate();
  const int n = config.N;
  const int t_len = data.T();
  const int k = n * config.p + config.d;
  if (data.N() != n) throw std::invalid_argument("init_state: data has the wrong variable count");
  if (t_len <= k)
    throw std::invalid_argument("init_state: estimation requires T > N*p + d observations");

  ParameterState state;
  state.A.resize(n, k);
  for (int eq = 0; eq < n; ++eq)
    state.A.row(eq) = minnesota_prior_mean(eq, n, config.p, config.d).transpose();

  // structural start from the triangular factor of the LS residual covariance
  Eigen::MatrixXd b_start;
  bool fallback = false;
  {
    const Eigen::MatrixXd xtx = data.X.transpose() * data.X;
    Eigen::LLT<Eigen::MatrixXd> llt_x(xtx);
    if (llt_x.info() == Eigen::Success) {
      const Eigen::MatrixXd coef = llt_x.solve(data.X.transpose() * data.Y);
      const Eigen::MatrixXd resid = data.Y - data.X * coef;
      const Eigen::MatrixXd cov = resid.transpose() * resid / static_cast<double>(t_len);
      Eigen::LLT<Eigen::MatrixXd> llt_cov(cov);
      if (llt_cov.info() == Eigen::Success) {
        const Eigen::MatrixXd lower = llt_cov.matrixL();
        b_start = masked_to_pattern(
            lower.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n)), patterns);
        if (std::abs(b_start.partialPivLu().determinant()) <= 0.0) fallback = true;
      } else {
        fallback = true;
      }
    } else {
      fallback = true;
    }
  }
  if (fallback) {
    std::cerr << "init_state: least-squares initialization singular, using identity start\n";
    b_start = identity_fallback(patterns, n);
  }
  state.B.assign(config.M, b_start);
  state.kappa.assign(config.M, 0);

  state.P.resize(config.M, config.M);
  for (int m = 0; m < config.M; ++m) {
    Eigen::VectorXd alpha = Eigen::VectorXd::Ones(config.M);
    alpha(m) += config.prior.dirichlet_boost;
    state.P.row(m) = (alpha / alpha.sum()).transpose();
  }
  state.pi0 = Eigen::VectorXd::Constant(config.M, 1.0 / config.M);

  state.s.resize(t_len);
  for (int t = 0; t < t_len; ++t)
    state.s(t) = (config.M == 1) ? 0 : static_cast<int>(rng.next_u64() % config.M);

  state.h = Eigen::MatrixXd::Zero(n, t_len);
  state.rho = Eigen::VectorXd::Constant(n, 0.5);
  state.omega = Eigen::MatrixXd::Constant(n, config.M, 0.1);
  state.sigma2_omega = Eigen::VectorXd::Constant(
      n, config.prior.sigma2_omega_shape * config.prior.sigma2_omega_scale);
  state.q = Eigen::MatrixXi::Constant(n, t_len, 4);  // modal mixture component

  state.s_gamma_B = ig2_center(config.prior.s_sB, config.prior.nu_sB);
  state.s_B = Eigen::VectorXd::Constant(n, state.s_gamma_B * config.prior.nu_gamma_B);
  state.gamma_B = state.s_B.unaryExpr([&](double s) { return ig2_center(s, config.prior.nu_B); });
  state.s_gamma_A = ig2_center(config.prior.s_sA, config.prior.nu_sA);
  state.s_A = Eigen::VectorXd::Constant(n, state.s_gamma_A * config.prior.nu_gamma_A);
  state.gamma_A = state.s_A.unaryExpr([&](double s) { return ig2_center(s, config.prior.nu_A); });

  return state;
}

namespace {

void structural_block(ParameterState& state, const ModelConfig& config,
                      const RestrictionPatternSet& patterns, const Dataset& data, RngStream& rng) {
  for (int m = 0; m < config.M; ++m) {
    for (int eq = 0; eq < config.N; ++eq) {
      if (eq == config.tvi_equation && config.K > 1) {
        const TviDraw draw = sample_tvi_indicator(eq, m, state, patterns, data, rng);
        state.kappa[m] = draw.k;
        state.B[m].row(eq) = patterns.pattern(eq, m, draw.k).expand(draw.b);
      } else {
        const int k = (eq == config.tvi_equation) ? state.kappa[m] : 0;
        const RestrictionPattern& pat = patterns.pattern(eq, m, k);
        const RowPosteriorContext ctx = make_row_context(eq, m, state, data);
        state.B[m].row(eq) = pat.expand(sample_structural_row(ctx, state.B[m], pat, rng));
      }
    }
  }
  sample_b_hyperparams(state, patterns, config.prior, rng);
}

void autoregressive_block(ParameterState& state, const ModelConfig& config, const Dataset& data,
                          RngStream& rng) {
  for (int eq = 0; eq < config.N; ++eq) sample_a_row(eq, state, data, rng);
  sample_a_hyperparams(state, config.prior, rng);
}

void markov_block(ParameterState& state, const ModelConfig& config, const Dataset& data,
                  RngStream& rng) {
  const RegimePath path = ffbs(state, data, rng);
  state.s = path.s;
  sample_transition_matrix(state, config.prior, path, rng);
  sample_initial_probs(state, path, rng);
}

}  // namespace

void gibbs_sweep(ParameterState& state, const ModelConfig& config,
                 const RestrictionPatternSet& patterns, const Dataset& data, RngStream& rng) {
  structural_block(state, config, patterns, data, rng);
  autoregressive_block(state, config, data, rng);
  markov_block(state, config, data, rng);
  sample_sv_block(state, data, config.prior, rng);
}

PosteriorArchive run_gibbs(const ModelConfig& config, const RestrictionPatternSet& patterns,
                           const Dataset& data, std::uint64_t seed,
                           const std::function<void(int, int)>& progress) {
  config.validate();
  RngStream rng(seed);
  ParameterState state = init_state(config, patterns, data, rng);

  PosteriorArchive archive;
  const int total = config.mcmc.iterations;
  archive.draws.reserve((total - config.mcmc.burnin) / config.mcmc.thin);

  auto run_block = [&](const char* name, int iter, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& err) {
      throw std::runtime_error("gibbs iteration " + std::to_string(iter) + ", " + name +
                               " block: " + err.what());
    }
  };

  for (int iter = 1; iter <= total; ++iter) {
    run_block("structural", iter, [&] { structural_block(state, config, patterns, data, rng); });
    run_block("autoregressive", iter, [&] { autoregressive_block(state, config, data, rng); });
    run_block("markov", iter, [&] { markov_block(state, config, data, rng); });
    run_block("volatility", iter, [&] { sample_sv_block(state, data, config.prior, rng); });

    if (iter > config.mcmc.burnin && (iter - config.mcmc.burnin) % config.mcmc.thin == 0) {
      validate_state(state, patterns);
      archive.draws.push_back(state);
    }
    if (progress) progress(iter, total);
  }

  ArchiveManifest& man = archive.manifest;
  man.format_version = 1;
  man.config_hash = config_hash(config);
  man.seed = seed;
  man.iterations = config.mcmc.iterations;
  man.burnin = config.mcmc.burnin;
  man.thin = config.mcmc.thin;
  man.stored = archive.size();
  man.N = config.N;
  man.p = config.p;
  man.d = config.d;
  man.M = config.M;
  man.K = config.K;
  man.T = data.T();
  {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    man.created = buf;
  }
  return archive;
}

}  // namespace mssv
