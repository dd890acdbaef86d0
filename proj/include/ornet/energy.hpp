#pragma once

#include <stdexcept>

#include "ornet/rng.hpp"

namespace ornet {

// Harvest-store-use buffer state. One ideal lossless buffer per relay;
// the level can grow without bound.
struct EnergyBuffer {
  double level = 0.0;  // mJ, never negative
};

// Per-slot harvested energy: exponential with mean 1/lambda.
inline double sample_harvest(double lambda, Rng& rng) {
  return rng.exponential(lambda);
}

// One slot of buffer dynamics: the harvest is credited every slot, the
// transmit quantum m is debited only when the protocol fired a transmission.
// A consume request without the energy to back it indicates a protocol bug,
// not a recoverable condition.
inline EnergyBuffer update(EnergyBuffer buffer, bool consumed, double m,
                           double harvest) {
  if (consumed && buffer.level < m)
    throw std::logic_error("buffer consumed below transmit quantum");
  return {buffer.level + harvest - (consumed ? m : 0.0)};
}

}  // namespace ornet
