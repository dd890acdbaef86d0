#pragma once

#include <stdexcept>
#include <string>

#include "ornet/radio.hpp"

namespace ornet {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(what), line(line) {}
  int line;  // 1-based; 0 when not tied to a specific line
};

// Flat key-value config file, one "key = value" per line, '#' comments.
// Required keys:
//   s_x s_y r1_x r1_y r2_x r2_y d_x d_y   node coordinates, meters
//   p_s_dbm n0_dbm                        powers, dBm
//   alpha r0 eta                          path loss, rate, loss factor
//   m1_mj m2_mj                           transmit quanta, mJ
//   inv_lambda1_db inv_lambda2_db         mean harvest per slot, dB re 1 mJ
// dB/dBm fields are converted to linear units here and nowhere else.
NetworkConfig load_config(const std::string& path);

// Parameter sweep: a base config plus one swept axis. The sweep file is a
// config file with four extra keys: sweep_param, sweep_start, sweep_stop,
// sweep_step. lambda1_db / lambda2_db sweep the harvest mean in dB re 1 mJ
// (the same quantity as inv_lambda*_db).
struct SweepSpec {
  std::string param;  // lambda1_db | lambda2_db | p_s_dbm | r0 | m1 | m2
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  NetworkConfig base;

  int point_count() const;
  double value_at(int i) const { return start + i * step; }
};

SweepSpec load_sweep(const std::string& path);

// Applies one swept value on top of the base config (converting dB axes).
NetworkConfig apply_sweep_value(const SweepSpec& spec, double value);

}  // namespace ornet
