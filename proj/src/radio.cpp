#include "ornet/radio.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ornet {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("config: ") + what);
}

}  // namespace

void validate(const NetworkConfig& c) {
  require(std::isfinite(c.p_s) && c.p_s > 0.0, "p_s must be > 0");
  require(std::isfinite(c.m1) && c.m1 > 0.0, "m1 must be > 0");
  require(std::isfinite(c.m2) && c.m2 > 0.0, "m2 must be > 0");
  require(std::isfinite(c.lambda1) && c.lambda1 > 0.0, "lambda1 must be > 0");
  require(std::isfinite(c.lambda2) && c.lambda2 > 0.0, "lambda2 must be > 0");
  require(std::isfinite(c.n0) && c.n0 > 0.0, "n0 must be > 0");
  require(std::isfinite(c.alpha) && c.alpha > 0.0, "alpha must be > 0");
  require(std::isfinite(c.r0) && c.r0 > 0.0, "r0 must be > 0");
  require(std::isfinite(c.eta) && c.eta > 0.0 && c.eta <= 1.0,
          "eta must be in (0,1]");

  const Point nodes[4] = {c.layout.s, c.layout.r1, c.layout.r2, c.layout.d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      require(distance(nodes[i], nodes[j]) > 0.0, "coincident nodes");
}

LinkSet derive_links(const NetworkConfig& c) {
  validate(c);
  const auto omega = [&](Point a, Point b, double power) {
    return std::pow(distance(a, b), c.alpha) * c.n0 / power;
  };
  LinkSet links;
  links.omega_sd = omega(c.layout.s, c.layout.d, c.p_s);
  links.omega_sr1 = omega(c.layout.s, c.layout.r1, c.p_s);
  links.omega_sr2 = omega(c.layout.s, c.layout.r2, c.p_s);
  links.omega_r1d = omega(c.layout.r1, c.layout.d, c.m1);
  links.omega_r1r2 = omega(c.layout.r1, c.layout.r2, c.m1);
  links.omega_r2d = omega(c.layout.r2, c.layout.d, c.m2);
  links.gamma_th = std::exp2(c.r0) - 1.0;
  return links;
}

}  // namespace ornet
