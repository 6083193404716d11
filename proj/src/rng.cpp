#include "mssv/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mssv {

namespace {

// SplitMix64, used to decorrelate user seeds and derive sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

RngStream RngStream::split(std::uint64_t stream_id) const {
  return RngStream(splitmix64(seed_ ^ splitmix64(stream_id + 1)));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform() {
  double u;
  do {
    u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  } while (u <= 0.0);
  return u;
}

double RngStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
  if (shape < 1.0) {
    // boost to shape+1 and scale back
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::exponential(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
  return -std::log(uniform()) / lambda;
}

}  // namespace mssv
