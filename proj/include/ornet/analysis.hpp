#pragma once

#include <array>
#include <span>
#include <stdexcept>

#include "ornet/radio.hpp"

namespace ornet {

using Probs4 = std::array<double, 4>;

// A relay buffer has a limiting distribution only when its stabilization
// parameter psi = lambda * m * b exceeds 1 (consumption demand outpaces
// harvesting). Requests for closed forms outside that regime raise this.
class UnstableError : public std::runtime_error {
 public:
  UnstableError(double psi1, double psi2, const std::string& what)
      : std::runtime_error(what), psi1(psi1), psi2(psi2) {}
  double psi1;
  double psi2;
};

// Raised by build_stm when an availability probability exceeds 1 or a
// transition entry falls below 0; the fixed-point iteration treats it as
// an abort signal and reports its last valid iterate.
class NegativeEntryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Principal-branch Lambert W on [-1/e, inf): w*e^w = x with w >= -1.
// Domain error below the branch point.
double lambert_w0(double x);

// The negative root q of b*lambda*e^(q*m) = b*lambda + q, which exists for
// s = b*lambda*m > 1. Values of s within 1e-9 of 1 are rejected as unstable
// (the root degenerates to 0 there).
double characteristic_root(double b, double lambda, double m);

// Limiting density of a stable relay buffer:
//   g(x) = (1 - e^(q x)) / m          for 0 <= x < m
//   g(x) = k e^(q x)                  for x >= m
// with k = -q / (m (b*lambda + q)). Continuous at x = m and of unit mass.
struct LimitingPdf {
  double b = 0.0;       // per-slot consumption demand probability
  double lambda = 0.0;  // harvest rate, 1/mJ
  double m = 0.0;       // transmit quantum, mJ
  double q = 0.0;       // characteristic root, 1/mJ, < 0
  double k = 0.0;       // tail coefficient

  double operator()(double x) const;
};

LimitingPdf limiting_pdf(double b, double lambda, double m);

// P{B >= m} = 1/(m*b*lambda) for a stable buffer; equals the mass of the
// pdf tail. Unstable outside s > 1.
double pr_buffer_available(double b, double lambda, double m);

// CBN-set transition matrix, entries[from][to].
struct Stm {
  std::array<Probs4, 4> entries{};
};

// Transition matrix for a given occupancy iterate p. Buffer availabilities
// enter as 1/(b*lambda*m) with b recomputed from p, so the matrix is only
// meaningful while those stay within [0,1]; otherwise NegativeEntryError.
Stm build_stm(const LinkSet& links, const Probs4& p, double lambda1,
              double lambda2, double m1, double m2);

struct StationaryDistribution {
  Probs4 p{};
  int iterations = 0;
  bool converged = false;
};

// Fixed-point iteration p <- p*T(p) from the uniform start until the l2
// step drops below 1e-7. On a NegativeEntryError or a non-positive
// component the last valid iterate is returned with converged=false;
// likewise after 1e5 iterations.
StationaryDistribution stationary_distribution(const LinkSet& links,
                                               double lambda1, double lambda2,
                                               double m1, double m2);

// Consumption demand probabilities and stabilization parameters for a given
// occupancy vector. psi = lambda*m*b by construction. b1 folds in R2's
// availability, so its value presumes R2 is in the stable regime; callers
// gate on psi2 first.
struct Stability {
  double psi1 = 0.0;
  double psi2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

Stability stability(const LinkSet& links, const Probs4& p, double lambda1,
                    double lambda2, double m1, double m2);

// Per-state delivery probabilities: P{in state k and the slot delivers}.
struct DeliveryTerms {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;

  double sum() const { return s1 + s2 + s3 + s4; }
};

DeliveryTerms delivery_terms(const LinkSet& links, const Probs4& p,
                             const Stability& stab, double lambda1,
                             double lambda2, double m1, double m2);

// Collapsed closed form of the per-slot outage probability; algebraically
// equal to 1 - delivery_terms(...).sum(). Requires both psi > 1.
double outage_probability(const LinkSet& links, const Probs4& p,
                          const Stability& stab, double lambda1,
                          double lambda2, double m1, double m2);

inline double throughput(double eta, double r0, double op) {
  return eta * r0 * (1.0 - op);
}

// d(throughput)/d(r0) with the occupancy vector p and R2's demand b2 held
// fixed; b1 is re-derived from r0 inside and differentiated. Matches a
// central finite difference of the same frozen-(p, b2) throughput.
double throughput_derivative(const LinkSet& links, const Probs4& p, double b2,
                             double lambda1, double lambda2, double m1,
                             double m2, double r0, double eta);

// Everything the steady-state engine can say about one configuration.
struct SteadyStateReport {
  StationaryDistribution dist;
  Stability stab;
  LimitingPdf pdf1;
  LimitingPdf pdf2;
  double pr_b1_ge = 0.0;
  double pr_b2_ge = 0.0;
  double op = 0.0;
  double throughput = 0.0;
};

// Full pipeline: links -> stationary occupancy -> stability -> pdfs ->
// outage -> throughput. Throws UnstableError when the iteration fails to
// converge or either psi fails the > 1 test.
SteadyStateReport analyze(const NetworkConfig& config);

struct OptimalRate {
  double r0_star = 0.0;
  double pi_max = 0.0;
  bool at_boundary = false;
  int stable_points = 0;  // grid points with a stable steady state
};

// Argmax of the self-consistent throughput over an r0 grid (the full
// fixed point is recomputed per point), refined by golden-section search
// around the best grid point. Unstable grid points are skipped; if the
// argmax sits on the edge of the scanned interval it is reported as a
// boundary maximum and not refined.
OptimalRate optimal_rate(const NetworkConfig& base, double r0_start,
                         double r0_stop, double r0_step);

// Residual check of the stationarity integral equations behind LimitingPdf:
// at each x the convolution of the density with the harvest/consumption
// kernel is evaluated by adaptive quadrature and compared against g(x).
// Returns the maximum absolute residual over the sample points.
double verify_stationarity_residual(const LimitingPdf& pdf,
                                    std::span<const double> xs);

}  // namespace ornet
