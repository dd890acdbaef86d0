#include "ornet/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "ornet/analysis.hpp"
#include "ornet/energy.hpp"
#include "ornet/rng.hpp"

namespace ornet {

namespace {

constexpr int kBatches = 20;
constexpr std::size_t kHistBins = 200;  // width m/20 over [0, 10m)

struct BatchCounters {
  std::array<std::uint64_t, 4> state{};
  std::uint64_t delivered = 0;
  std::uint64_t b1_ge = 0;
  std::uint64_t b2_ge = 0;
  std::uint64_t slots = 0;
};

// standard error of the overall mean from per-batch fractions
double batch_se(const std::array<BatchCounters, kBatches>& batches,
                auto numerator) {
  double mean = 0.0;
  std::array<double, kBatches> fraction{};
  for (int j = 0; j < kBatches; ++j) {
    fraction[j] =
        static_cast<double>(numerator(batches[j])) / batches[j].slots;
    mean += fraction[j];
  }
  mean /= kBatches;
  double var = 0.0;
  for (int j = 0; j < kBatches; ++j)
    var += (fraction[j] - mean) * (fraction[j] - mean);
  var /= (kBatches - 1);
  return std::sqrt(var / kBatches);
}

}  // namespace

void Histogram::add(double x) {
  ++samples;
  const auto i = static_cast<std::size_t>(x / bin_width);
  if (i < bins.size())
    ++bins[i];
  else
    ++overflow;
}

double Histogram::density(std::size_t i) const {
  return static_cast<double>(bins[i]) /
         (static_cast<double>(samples) * bin_width);
}

SimStats run(const NetworkConfig& config, std::uint64_t seed,
             std::uint64_t n_slots, std::uint64_t warmup) {
  validate(config);
  if (n_slots <= warmup)
    throw std::invalid_argument("run: n_slots must exceed warmup");

  const LinkSet links = derive_links(config);
  const std::uint64_t counted = n_slots - warmup;

  SimStats stats;
  stats.n_slots = counted;
  stats.buffer1_hist.bin_width = config.m1 / 20.0;
  stats.buffer1_hist.bins.assign(kHistBins, 0);
  stats.buffer2_hist.bin_width = config.m2 / 20.0;
  stats.buffer2_hist.bins.assign(kHistBins, 0);

  std::array<BatchCounters, kBatches> batches{};

  Rng rng(seed);
  CbnSet cbn = CbnSet::S1;
  EnergyBuffer buf1, buf2;

  for (std::uint64_t i = 0; i < n_slots; ++i) {
    const SlotSnrs snrs{
        sample_snr(links.omega_sd, rng),  sample_snr(links.omega_sr1, rng),
        sample_snr(links.omega_sr2, rng), sample_snr(links.omega_r1d, rng),
        sample_snr(links.omega_r1r2, rng), sample_snr(links.omega_r2d, rng)};
    const SlotDecision d = evaluate(cbn, snrs, buf1.level, buf2.level,
                                    config.m1, config.m2, links.gamma_th);
    buf1 = update(buf1, d.consume_r1, config.m1,
                  sample_harvest(config.lambda1, rng));
    buf2 = update(buf2, d.consume_r2, config.m2,
                  sample_harvest(config.lambda2, rng));

    if (i >= warmup) {
      const std::uint64_t k = i - warmup;
      BatchCounters& batch = batches[k * kBatches / counted];
      ++batch.slots;
      ++batch.state[index(cbn)];
      ++stats.condition_counts[index(cbn)][index(d.fired)];
      if (d.delivered) ++batch.delivered;
      if (buf1.level >= config.m1) ++batch.b1_ge;
      if (buf2.level >= config.m2) ++batch.b2_ge;
      stats.buffer1_hist.add(buf1.level);
      stats.buffer2_hist.add(buf2.level);
    }
    cbn = d.next_cbn;
  }

  for (const BatchCounters& b : batches) {
    for (int s = 0; s < 4; ++s) stats.state_slots[s] += b.state[s];
    stats.delivered += b.delivered;
  }
  std::uint64_t b1_ge = 0, b2_ge = 0;
  for (const BatchCounters& b : batches) {
    b1_ge += b.b1_ge;
    b2_ge += b.b2_ge;
  }
  const auto total = static_cast<double>(counted);
  for (int s = 0; s < 4; ++s)
    stats.cbn_freq[s] = static_cast<double>(stats.state_slots[s]) / total;
  stats.pr_b1_ge_emp = static_cast<double>(b1_ge) / total;
  stats.pr_b2_ge_emp = static_cast<double>(b2_ge) / total;
  stats.op_emp = 1.0 - static_cast<double>(stats.delivered) / total;
  stats.throughput_emp = config.eta * config.r0 * (1.0 - stats.op_emp);

  for (int s = 0; s < 4; ++s)
    stats.cbn_freq_se[s] =
        batch_se(batches, [s](const BatchCounters& b) { return b.state[s]; });
  stats.pr_b1_ge_se =
      batch_se(batches, [](const BatchCounters& b) { return b.b1_ge; });
  stats.pr_b2_ge_se =
      batch_se(batches, [](const BatchCounters& b) { return b.b2_ge; });
  stats.op_se =
      batch_se(batches, [](const BatchCounters& b) { return b.delivered; });
  stats.throughput_se = config.eta * config.r0 * stats.op_se;
  return stats;
}

DegenerateCheck run_degenerate_check(const NetworkConfig& config,
                                     std::uint64_t seed,
                                     std::uint64_t n_slots) {
  validate(config);
  if (n_slots < 10)
    throw std::invalid_argument("run_degenerate_check: n_slots too small");

  const LinkSet links = derive_links(config);
  const StationaryDistribution dist = stationary_distribution(
      links, config.lambda1, config.lambda2, config.m1, config.m2);
  const Stability stab = stability(links, dist.p, config.lambda1,
                                   config.lambda2, config.m1, config.m2);
  if (stab.psi2 > 1.0)
    throw std::invalid_argument(
        "run_degenerate_check: config is stable (psi2 > 1)");

  Rng rng(seed);
  CbnSet cbn = CbnSet::S1;
  EnergyBuffer buf1, buf2;
  const std::uint64_t quintile = n_slots / 5;
  const std::uint64_t last_start = n_slots - quintile;
  std::uint64_t available = 0;
  double first_sum = 0.0, last_sum = 0.0;

  for (std::uint64_t i = 0; i < n_slots; ++i) {
    const SlotSnrs snrs{
        sample_snr(links.omega_sd, rng),  sample_snr(links.omega_sr1, rng),
        sample_snr(links.omega_sr2, rng), sample_snr(links.omega_r1d, rng),
        sample_snr(links.omega_r1r2, rng), sample_snr(links.omega_r2d, rng)};
    const SlotDecision d = evaluate(cbn, snrs, buf1.level, buf2.level,
                                    config.m1, config.m2, links.gamma_th);
    buf1 = update(buf1, d.consume_r1, config.m1,
                  sample_harvest(config.lambda1, rng));
    buf2 = update(buf2, d.consume_r2, config.m2,
                  sample_harvest(config.lambda2, rng));
    if (i < quintile) first_sum += buf2.level;
    if (i >= last_start) {
      last_sum += buf2.level;
      if (buf2.level >= config.m2) ++available;
    }
    cbn = d.next_cbn;
  }

  DegenerateCheck check;
  check.availability_fraction =
      static_cast<double>(available) / static_cast<double>(quintile);
  check.mean_b2_first_quintile = first_sum / static_cast<double>(quintile);
  check.mean_b2_last_quintile = last_sum / static_cast<double>(quintile);
  return check;
}

}  // namespace ornet
