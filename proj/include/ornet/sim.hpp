#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ornet/protocol.hpp"
#include "ornet/radio.hpp"

namespace ornet {

// Fixed-bin histogram of buffer levels: 200 bins of width m/20 covering
// [0, 10m), anything beyond lumped into overflow.
struct Histogram {
  double bin_width = 0.0;
  std::vector<std::uint64_t> bins;
  std::uint64_t overflow = 0;
  std::uint64_t samples = 0;

  void add(double x);
  // empirical density for bin i (count / (samples * bin_width))
  double density(std::size_t i) const;
  double bin_center(std::size_t i) const {
    return (static_cast<double>(i) + 0.5) * bin_width;
  }

  bool operator==(const Histogram&) const = default;
};

// Empirical counterparts of every analytical quantity, accumulated over the
// post-warmup slots. Standard errors come from 20 batch means.
struct SimStats {
  std::uint64_t n_slots = 0;  // counted slots (after warmup)
  std::array<double, 4> cbn_freq{};
  std::uint64_t delivered = 0;
  // per-slot decision outcomes, indexed [state][condition]
  std::array<std::array<std::uint64_t, kConditionCount>, 4> condition_counts{};
  std::array<std::uint64_t, 4> state_slots{};
  Histogram buffer1_hist;
  Histogram buffer2_hist;
  double pr_b1_ge_emp = 0.0;
  double pr_b2_ge_emp = 0.0;
  double op_emp = 0.0;
  double throughput_emp = 0.0;

  std::array<double, 4> cbn_freq_se{};
  double pr_b1_ge_se = 0.0;
  double pr_b2_ge_se = 0.0;
  double op_se = 0.0;
  double throughput_se = 0.0;

  bool operator==(const SimStats&) const = default;
};

// Slot-accurate run of the network: per slot, six SNR draws, one protocol
// decision, one exponential harvest into each buffer (minus the transmit
// quantum when the protocol fired it), then statistics. Deterministic for a
// given (config, seed).
SimStats run(const NetworkConfig& config, std::uint64_t seed,
             std::uint64_t n_slots, std::uint64_t warmup);

// Probe for the non-stationary regime (psi2 <= 1: harvesting outpaces
// consumption demand and R2's buffer grows without bound): availability and
// mean level over the first/last fifth of an un-warmed run.
struct DegenerateCheck {
  double availability_fraction = 0.0;  // P{B2 >= m2} over the last fifth
  double mean_b2_first_quintile = 0.0;
  double mean_b2_last_quintile = 0.0;
};

// Rejects configs whose steady-state analysis yields psi2 > 1.
DegenerateCheck run_degenerate_check(const NetworkConfig& config,
                                     std::uint64_t seed,
                                     std::uint64_t n_slots);

}  // namespace ornet
