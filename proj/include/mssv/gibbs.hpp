#ifndef MSSV_GIBBS_HPP
#define MSSV_GIBBS_HPP

#include <cstdint>
#include <functional>

#include "mssv/rng.hpp"
#include "mssv/types.hpp"

namespace mssv {

// Deterministic starting state: B from the Cholesky factor of the inverse
// least-squares residual covariance masked to the first pattern, A at its
// prior mean, regimes drawn uniformly, h = 0, rho = 0.5, omega = 0.1, all
// hyperparameters at prior means (prior modes where a mean does not exist).
// A singular least-squares system falls back to an identity-based B with a
// warning on stderr.
ParameterState init_state(const ModelConfig& config, const RestrictionPatternSet& patterns,
                          const Dataset& data, RngStream& rng);

// One full sweep: structural rows + pattern indicators + structural
// hyperparameters, autoregressive rows + hyperparameters, regime path and
// Markov parameters, stochastic-volatility block.
void gibbs_sweep(ParameterState& state, const ModelConfig& config,
                 const RestrictionPatternSet& patterns, const Dataset& data, RngStream& rng);

// Run the chain and collect every `thin`-th post-burn-in state. Numerical
// failures abort with the iteration index and offending block. The optional
// progress callback receives (completed iterations, total).
PosteriorArchive run_gibbs(const ModelConfig& config, const RestrictionPatternSet& patterns,
                           const Dataset& data, std::uint64_t seed,
                           const std::function<void(int, int)>& progress = {});

}  // namespace mssv

#endif
