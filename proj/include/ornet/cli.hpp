#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ornet/config.hpp"

namespace ornet::cli {

struct RunOptions {
  std::uint64_t seed = 42;
  std::uint64_t slots = 1000000;
  std::uint64_t warmup = 10000;
};

// Full-precision decimal rendering; identical inputs give identical bytes.
std::string format_double(double v);

// Each command writes CSV to `out` and returns the process exit code:
// 0 success, 2 unstable regime (analyze/pdf). Parse errors are raised
// before these run and exit 1.

int cmd_analyze(const NetworkConfig& config, std::ostream& out,
                std::ostream& err);
int cmd_simulate(const NetworkConfig& config, const RunOptions& run,
                 std::ostream& out);
int cmd_compare(const NetworkConfig& config, const RunOptions& run,
                std::ostream& out);
int cmd_sweep(const SweepSpec& spec, const RunOptions& run, std::ostream& out);
int cmd_pdf(const NetworkConfig& config, int relay, const RunOptions& run,
            std::ostream& out, std::ostream& err);
int cmd_optimal_rate(const NetworkConfig& config, double r0_start,
                     double r0_stop, double r0_step, std::ostream& out,
                     std::ostream& err);

}  // namespace ornet::cli
