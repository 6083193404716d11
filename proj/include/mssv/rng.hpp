#ifndef MSSV_RNG_HPP
#define MSSV_RNG_HPP

#include <cstdint>
#include <random>

namespace mssv {

// Seeded random stream. One stream per chain; not shareable across threads.
// Sub-streams derived through split() are seeded independently, so parallel
// chains can share a master seed without sharing state.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  // Independent stream derived from (seed, stream_id).
  RngStream split(std::uint64_t stream_id) const;

  std::uint64_t next_u64();

  // Uniform on (0,1), never returns 0 or 1.
  double uniform();

  // Standard normal (Box-Muller).
  double normal();

  // Gamma with unit scale, any shape > 0 (Marsaglia-Tsang).
  double gamma(double shape);

  // Exponential with rate lambda > 0.
  double exponential(double lambda);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace mssv

#endif
