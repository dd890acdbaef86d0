#pragma once

#include <cmath>

#include "ornet/rng.hpp"

namespace ornet {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point a, Point b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Planar positions of the four nodes, meters.
struct NodeLayout {
  Point s;
  Point r1;
  Point r2;
  Point d;
};

// Full parameterization of the network. Linear units throughout: powers in
// milliwatts, energies in millijoules, harvest rates in 1/mJ. dB/dBm inputs
// are converted once at config load (see config.hpp), never here.
//
// Slots last one second, so a relay transmit power of P mW consumes exactly
// P mJ per transmit slot; m1/m2 double as the relay transmit powers when
// deriving link parameters.
struct NetworkConfig {
  NodeLayout layout;
  double p_s = 0.0;      // source transmit power, mW
  double m1 = 0.0;       // relay 1 per-slot transmit energy, mJ
  double m2 = 0.0;       // relay 2 per-slot transmit energy, mJ
  double lambda1 = 0.0;  // relay 1 harvest rate, 1/mJ (mean harvest 1/lambda1)
  double lambda2 = 0.0;  // relay 2 harvest rate, 1/mJ
  double n0 = 0.0;       // noise power, mW
  double alpha = 0.0;    // path-loss exponent
  double r0 = 0.0;       // data rate, bit/s/Hz
  double eta = 0.0;      // throughput loss factor, (0,1]
};

// Throws std::invalid_argument on out-of-domain values or coincident nodes.
void validate(const NetworkConfig& config);

// Exponential SNR rate parameters for the six links, plus the decoding
// threshold. A link with rate omega succeeds (SNR >= gamma_th) with
// probability exp(-omega * gamma_th).
struct LinkSet {
  double omega_sd = 0.0;
  double omega_sr1 = 0.0;
  double omega_sr2 = 0.0;
  double omega_r1d = 0.0;
  double omega_r1r2 = 0.0;
  double omega_r2d = 0.0;
  double gamma_th = 0.0;
};

// omega = d^alpha * n0 / P with the transmitter's power in the denominator
// (p_s for source links, m1/m2 for relay links); gamma_th = 2^r0 - 1.
LinkSet derive_links(const NetworkConfig& config);

// One Rayleigh-faded SNR draw: exponential with rate omega.
inline double sample_snr(double omega, Rng& rng) {
  return rng.exponential(omega);
}

// P{snr >= gamma_th} = exp(-omega * gamma_th), in (0,1].
inline double p_link_success(double omega, double gamma_th) {
  return std::exp(-omega * gamma_th);
}

// 1 - p_link_success, computed without cancellation for small exponents.
inline double p_link_failure(double omega, double gamma_th) {
  return -std::expm1(-omega * gamma_th);
}

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

// dB value relative to 1 mJ -> energy in mJ.
inline double db_to_mj(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace ornet
