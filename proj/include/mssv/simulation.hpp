#ifndef MSSV_SIMULATION_HPP
#define MSSV_SIMULATION_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "mssv/rng.hpp"
#include "mssv/types.hpp"

namespace mssv {

// Ground-truth generating process. Mirrors ParameterState for the parameters
// that drive the data; stationarity of the companion matrix is enforced here
// (and only here) so simulated paths stay bounded for testing.
struct DgpSpec {
  int N = 0, p = 1, d = 1, M = 1;
  Eigen::MatrixXd A;               // N x (N*p+d)
  std::vector<Eigen::MatrixXd> B;  // M of N x N
  std::vector<int> kappa;          // M true pattern indices (0-based)
  Eigen::MatrixXd P;               // M x M
  Eigen::VectorXd pi0;             // M
  Eigen::VectorXd rho;             // N
  Eigen::MatrixXd omega;           // N x M
  int T = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Largest eigenvalue modulus of the VAR companion matrix built from the lag
// blocks of A (deterministic columns ignored).
double companion_spectral_radius(const Eigen::MatrixXd& A, int n, int p);

struct SimulationOutput {
  Eigen::MatrixXd raw;  // (T+p) x N; the first p rows are the zero presample
  Dataset data;         // prepared with (p, d) from raw
  Eigen::VectorXi s;    // T regimes
  Eigen::MatrixXd h;    // N x T log-volatilities
  Eigen::MatrixXd u;    // N x T structural shocks
};

// Exact forward simulation of the model equations.
SimulationOutput simulate(const DgpSpec& spec, RngStream& rng);

// Exact per-period regime marginals by enumerating all M^T paths. The
// log_densities matrix holds log p(y_t | s_t = m) entries (T x M). Only
// feasible for short paths; throws if M^T exceeds 2^24.
Eigen::MatrixXd brute_force_path_posterior(const Eigen::MatrixXd& log_densities,
                                           const Eigen::MatrixXd& P,
                                           const Eigen::VectorXd& pi0);

// Normalized probability table of an unnormalized log density evaluated on a
// compact grid, trapezoid-weighted. Throws if the boundary carries visible
// mass (grid does not cover the distribution).
Eigen::VectorXd grid_density_oracle(const std::function<double(double)>& log_density,
                                    const Eigen::VectorXd& grid);
Eigen::MatrixXd grid_density_oracle(const std::function<double(double, double)>& log_density,
                                    const Eigen::VectorXd& grid_x,
                                    const Eigen::VectorXd& grid_y);

}  // namespace mssv

#endif
