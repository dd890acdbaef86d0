#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ornet {

// Inverse-CDF exponential draw from a uniform u in [0,1).
// Kept separate from the generator so the mapping itself is testable.
inline double exp_inverse_cdf(double rate, double u) {
  return -std::log1p(-u) / rate;
}

// Seedable random stream. All stochastic draws in the project go through
// this class so that (seed, config) fully determines a simulation run.
// mt19937_64 output is mapped to doubles explicitly instead of relying on
// std::*_distribution, whose draw sequences are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Exponential with the given rate (mean 1/rate), support [0, inf).
  double exponential(double rate) { return exp_inverse_cdf(rate, uniform()); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ornet
