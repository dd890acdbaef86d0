#include "ornet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ornet {

namespace {

constexpr double kPsiMargin = 1e-9;  // b*lambda*m within this of 1 -> unstable

double halley_w0(double x, double w) {
  // f(w) = w e^w - x, cubic convergence from any reasonable seed.
  for (int i = 0; i < 24; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (f == 0.0) break;
    const double f1 = ew * (1.0 + w);
    const double denom = f1 - f * (w + 2.0) / (2.0 * w + 2.0);
    const double step = f / denom;
    if (!std::isfinite(step)) break;
    const double next = w - step;
    if (next == w) break;
    w = next;
    if (std::abs(step) <= 1e-16 * std::abs(w)) break;
  }
  return w;
}

}  // namespace

double lambert_w0(double x) {
  const double branch = -std::exp(-1.0);
  if (std::isnan(x) || x < branch)
    throw std::domain_error("lambert_w0: x below -1/e");
  if (x == 0.0) return 0.0;

  const double p2 = 2.0 * (std::exp(1.0) * x + 1.0);  // 2(1 + e x) >= 0
  if (p2 <= 0.0) return -1.0;                          // branch point
  if (p2 < 2e-6) {
    // series around the branch point; error O(p^4) is below the residual
    // target here and Halley's denominator degenerates
    const double p = std::sqrt(p2);
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }

  double w;
  if (x < -0.28) {
    const double p = std::sqrt(p2);
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  } else if (x < 1.0) {
    w = x * (1.0 + x * (-1.0 + x * (1.5 - x * 8.0 / 3.0)));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(std::max(l1, 1e-12));
    w = l1 - l2 + l2 / std::max(l1, 1e-12);
  }
  return halley_w0(x, w);
}

namespace {

// Shared root solve for the limiting pdf, parameterized by s = b*lambda*m.
// Two regimes: near the existence boundary the equation in y = q*m
// (s*expm1(y) = y) is the well-conditioned form; for larger s the Lambert
// value w = -(y+s) is, since there y approaches -s and expm1 cancels.
struct BufferRoot {
  double s = 0.0;
  double w = 0.0;  // lambert_w0(-s e^-s), in (-1, 0)
  double y = 0.0;  // q*m, in (-s, -log s)
};

BufferRoot solve_buffer_root(double b, double lambda, double m) {
  if (!(b > 0.0) || !(lambda > 0.0) || !(m > 0.0))
    throw std::invalid_argument("buffer root: b, lambda, m must be > 0");
  const double s = b * lambda * m;
  if (!(s > 1.0 + kPsiMargin))
    throw UnstableError(s, s,
                        "no limiting buffer distribution: b*lambda*m <= 1");

  BufferRoot r;
  r.s = s;
  if (s <= 2.0) {
    // Safeguarded Newton on phi(y) = s*expm1(y) - y over (-s, -log s).
    double lo = -s, hi = -std::log(s);
    double y = -2.0 * (s - 1.0) / s;  // expansion near s = 1
    y = std::clamp(y, lo, hi);
    for (int i = 0; i < 200; ++i) {
      const double phi = s * std::expm1(y) - y;
      if (phi > 0.0)
        lo = y;
      else
        hi = y;
      const double dphi = s * std::exp(y) - 1.0;
      double next = y - phi / dphi;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == y) break;
      y = next;
      if (hi - lo <= 4e-16 * std::abs(y)) break;
    }
    r.y = y;
    r.w = -(y + s);
  } else {
    double w = lambert_w0(-s * std::exp(-s));
    // pin the defining residual with plain Newton in w-space
    const double target = -s * std::exp(-s);
    for (int i = 0; i < 4; ++i) {
      const double ew = std::exp(w);
      const double f = w * ew - target;
      const double f1 = ew * (1.0 + w);
      const double step = f / f1;
      if (!std::isfinite(step) || step == 0.0) break;
      w -= step;
    }
    r.w = w;
    r.y = -(w + s);
  }
  return r;
}

}  // namespace

double characteristic_root(double b, double lambda, double m) {
  return solve_buffer_root(b, lambda, m).y / m;
}

double LimitingPdf::operator()(double x) const {
  if (x < 0.0) return 0.0;
  if (x < m) return -std::expm1(q * x) / m;
  return k * std::exp(q * x);
}

LimitingPdf limiting_pdf(double b, double lambda, double m) {
  const BufferRoot root = solve_buffer_root(b, lambda, m);
  LimitingPdf pdf;
  pdf.b = b;
  pdf.lambda = lambda;
  pdf.m = m;
  pdf.q = root.y / m;
  // k = -q/(m(b*lambda+q)); m(b*lambda+q) = -w exactly in this parameterization
  pdf.k = pdf.q / root.w;
  return pdf;
}

double pr_buffer_available(double b, double lambda, double m) {
  if (!(b > 0.0) || !(lambda > 0.0) || !(m > 0.0))
    throw std::invalid_argument("availability: b, lambda, m must be > 0");
  const double s = b * lambda * m;
  if (!(s > 1.0 + kPsiMargin))
    throw UnstableError(s, s, "availability undefined: b*lambda*m <= 1");
  return 1.0 / s;
}

namespace {

struct LinkProbs {
  double e_sd, e_sr1, e_sr2, e_r1d, e_r1r2, e_r2d;
  double f_sd;  // 1 - e_sd
};

LinkProbs link_probs(const LinkSet& l) {
  const double g = l.gamma_th;
  return {p_link_success(l.omega_sd, g),   p_link_success(l.omega_sr1, g),
          p_link_success(l.omega_sr2, g),  p_link_success(l.omega_r1d, g),
          p_link_success(l.omega_r1r2, g), p_link_success(l.omega_r2d, g),
          p_link_failure(l.omega_sd, g)};
}

}  // namespace

Stm build_stm(const LinkSet& links, const Probs4& p, double lambda1,
              double lambda2, double m1, double m2) {
  const LinkProbs e = link_probs(links);

  const double b2 = (p[2] + p[3]) * e.f_sd * e.e_r2d;
  const double a2 = 1.0 / (b2 * lambda2 * m2);
  const double b1 =
      e.f_sd * (p[1] * e.e_r1d +
                p[1] * (1.0 - e.e_r1d) * (1.0 - e.e_sr2) * e.e_r1r2 +
                p[3] * e.e_r1d * (1.0 - e.e_r2d * a2));
  const double a1 = 1.0 / (b1 * lambda1 * m1);
  if (!(a1 >= 0.0 && a1 <= 1.0) || !(a2 >= 0.0 && a2 <= 1.0))
    throw NegativeEntryError("buffer availability outside [0,1]");

  Stm t;
  auto& row1 = t.entries[0];
  row1[0] = e.f_sd * (1.0 - e.e_sr1) * (1.0 - e.e_sr2) + e.e_sd;
  row1[1] = e.f_sd * e.e_sr1 * (1.0 - e.e_sr2);
  row1[2] = e.f_sd * (1.0 - e.e_sr1) * e.e_sr2;
  row1[3] = e.f_sd * e.e_sr1 * e.e_sr2;

  auto& row2 = t.entries[1];
  row2[0] = e.e_sd + e.f_sd * e.e_r1d * a1;
  row2[1] = e.f_sd * (1.0 - e.e_sr2) *
            ((1.0 - e.e_r1d) * (1.0 - e.e_r1r2) * a1 + (1.0 - a1));
  row2[2] = 0.0;
  row2[3] = e.f_sd * (e.e_sr2 * (1.0 - e.e_r1d * a1) +
                      (1.0 - e.e_r1d) * (1.0 - e.e_sr2) * e.e_r1r2 * a1);

  auto& row3 = t.entries[2];
  row3[0] = e.e_sd + e.f_sd * e.e_r2d * a2;
  row3[1] = 0.0;
  row3[2] = e.f_sd * (1.0 - e.e_r2d * a2);
  row3[3] = 0.0;

  auto& row4 = t.entries[3];
  row4[0] = e.e_sd + e.f_sd * e.e_r2d * a2 +
            e.f_sd * e.e_r1d * a1 * (1.0 - e.e_r2d * a2);
  row4[1] = 0.0;
  row4[2] = 0.0;
  row4[3] = 1.0 - row4[0];

  for (const auto& row : t.entries)
    for (double v : row)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw NegativeEntryError("negative transition entry");
  return t;
}

StationaryDistribution stationary_distribution(const LinkSet& links,
                                               double lambda1, double lambda2,
                                               double m1, double m2) {
  constexpr int kMaxIterations = 100000;
  Probs4 p{0.25, 0.25, 0.25, 0.25};
  for (int it = 0; it < kMaxIterations; ++it) {
    Stm t;
    try {
      t = build_stm(links, p, lambda1, lambda2, m1, m2);
    } catch (const NegativeEntryError&) {
      return {p, it, false};  // last valid iterate
    }
    Probs4 next{};
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) next[j] += p[i] * t.entries[i][j];
    for (double v : next)
      if (!(v > 0.0)) return {p, it, false};
    double d2 = 0.0;
    for (int j = 0; j < 4; ++j) d2 += (p[j] - next[j]) * (p[j] - next[j]);
    if (std::sqrt(d2) < 1e-7) return {next, it + 1, true};
    p = next;
  }
  return {p, kMaxIterations, false};
}

Stability stability(const LinkSet& links, const Probs4& p, double lambda1,
                    double lambda2, double m1, double m2) {
  const LinkProbs e = link_probs(links);
  Stability st;
  st.b2 = (p[2] + p[3]) * e.f_sd * e.e_r2d;
  if (e.f_sd > 0.0) {
    // probability that R2 both has energy and reaches D, under the
    // availability closed form; 0 when the s4 term is absent
    double r2_serves = 0.0;
    if (p[3] > 0.0 && e.e_r2d > 0.0)
      r2_serves = e.e_r2d / (m2 * st.b2 * lambda2);
    st.b1 = e.f_sd * (p[1] * e.e_r1d +
                      p[1] * (1.0 - e.e_r1d) * (1.0 - e.e_sr2) * e.e_r1r2 +
                      p[3] * e.e_r1d * (1.0 - r2_serves));
  }
  st.psi1 = lambda1 * m1 * st.b1;
  st.psi2 = lambda2 * m2 * st.b2;
  return st;
}

DeliveryTerms delivery_terms(const LinkSet& links, const Probs4& p,
                             const Stability& stab, double lambda1,
                             double lambda2, double m1, double m2) {
  const LinkProbs e = link_probs(links);
  const double a1 = 1.0 / (stab.b1 * lambda1 * m1);
  const double a2 = 1.0 / (stab.b2 * lambda2 * m2);
  DeliveryTerms t;
  t.s1 = p[0] * e.e_sd;
  t.s2 = p[1] * (e.e_sd + e.f_sd * e.e_r1d * a1);
  t.s3 = p[2] * (e.e_sd + e.f_sd * e.e_r2d * a2);
  t.s4 = p[3] * (e.e_sd + e.f_sd * e.e_r2d * a2 +
                 e.f_sd * e.e_r1d * a1 * (1.0 - e.e_r2d * a2));
  return t;
}

double outage_probability(const LinkSet& links, const Probs4& p,
                          const Stability& stab, double lambda1,
                          double lambda2, double m1, double m2) {
  if (!(stab.psi1 > 1.0 + kPsiMargin) || !(stab.psi2 > 1.0 + kPsiMargin))
    throw UnstableError(stab.psi1, stab.psi2,
                        "outage closed form requires psi1 > 1 and psi2 > 1");
  const LinkProbs e = link_probs(links);
  const double a1 = 1.0 / (stab.b1 * lambda1 * m1);
  const double a2 = 1.0 / (stab.b2 * lambda2 * m2);
  return 1.0 - (e.e_sd + 1.0 / (lambda2 * m2) +
                (p[1] + p[3] * (1.0 - e.e_r2d * a2)) * e.f_sd * e.e_r1d * a1);
}

double throughput_derivative(const LinkSet& links, const Probs4& p, double b2,
                             double lambda1, double lambda2, double m1,
                             double m2, double r0, double eta) {
  // gamma and the link exponentials are re-derived from r0 here; p and b2
  // stay frozen, b1 is a function of r0 and is differentiated through.
  const double g = std::exp2(r0) - 1.0;
  const double gp = std::log(2.0) * std::exp2(r0);  // d(gamma)/d(r0)
  const double o_sd = links.omega_sd, o_sr2 = links.omega_sr2;
  const double o_r1d = links.omega_r1d, o_r1r2 = links.omega_r1r2;
  const double o_r2d = links.omega_r2d;
  const double e_sd = std::exp(-o_sd * g);
  const double e_sr2 = std::exp(-o_sr2 * g);
  const double e_r1d = std::exp(-o_r1d * g);
  const double e_r1r2 = std::exp(-o_r1r2 * g);
  const double e_r2d = std::exp(-o_r2d * g);
  const double f_sd = -std::expm1(-o_sd * g);

  const double avail2 = 1.0 / (b2 * lambda2 * m2);
  const double r2_serves = e_r2d * avail2;
  const double big_a = p[1] + p[3] * (1.0 - r2_serves);
  const double u1 = p[1] * e_r1d +
                    p[1] * (1.0 - e_r1d) * (1.0 - e_sr2) * e_r1r2 +
                    p[3] * e_r1d * (1.0 - r2_serves);
  const double b1 = f_sd * u1;
  const double c1 = 1.0 / (b1 * lambda1 * m1);

  const double one_minus_op =
      e_sd + 1.0 / (lambda2 * m2) + big_a * f_sd * e_r1d * c1;

  const double db1 =
      gp * (p[1] * o_sd * e_sd *
                (e_r1d + (1.0 - e_r1d) * (1.0 - e_sr2) * e_r1r2) +
            p[1] * f_sd *
                (o_r1d * e_r1d * ((1.0 - e_sr2) * e_r1r2 - 1.0) +
                 (1.0 - e_r1d) * e_r1r2 *
                     ((o_sr2 + o_r1r2) * e_sr2 - o_r1r2)) +
            p[3] * e_r1d * ((o_sd + o_r1d) * e_sd - o_r1d) *
                (1.0 - r2_serves) +
            p[3] * o_r2d * f_sd * e_r1d * r2_serves);
  const double d_big_a = gp * p[3] * o_r2d * r2_serves;
  const double d_sd_r1d = gp * e_r1d * (o_sd * e_sd - o_r1d * f_sd);
  const double d_one_minus_op =
      -o_sd * gp * e_sd + (d_big_a * f_sd * e_r1d + big_a * d_sd_r1d) * c1 -
      big_a * f_sd * e_r1d * c1 / b1 * db1;
  return eta * one_minus_op + eta * r0 * d_one_minus_op;
}

SteadyStateReport analyze(const NetworkConfig& config) {
  const LinkSet links = derive_links(config);
  SteadyStateReport r;
  r.dist = stationary_distribution(links, config.lambda1, config.lambda2,
                                   config.m1, config.m2);
  r.stab = stability(links, r.dist.p, config.lambda1, config.lambda2,
                     config.m1, config.m2);
  if (!r.dist.converged)
    throw UnstableError(r.stab.psi1, r.stab.psi2,
                        "occupancy fixed point did not converge");
  if (!(r.stab.psi1 > 1.0 + kPsiMargin) || !(r.stab.psi2 > 1.0 + kPsiMargin))
    throw UnstableError(r.stab.psi1, r.stab.psi2, "unstable: psi <= 1");
  r.pdf1 = limiting_pdf(r.stab.b1, config.lambda1, config.m1);
  r.pdf2 = limiting_pdf(r.stab.b2, config.lambda2, config.m2);
  r.pr_b1_ge = pr_buffer_available(r.stab.b1, config.lambda1, config.m1);
  r.pr_b2_ge = pr_buffer_available(r.stab.b2, config.lambda2, config.m2);
  r.op = outage_probability(links, r.dist.p, r.stab, config.lambda1,
                            config.lambda2, config.m1, config.m2);
  r.throughput = throughput(config.eta, config.r0, r.op);
  return r;
}

OptimalRate optimal_rate(const NetworkConfig& base, double r0_start,
                         double r0_stop, double r0_step) {
  if (!(r0_step > 0.0) || !(r0_start > 0.0) || !(r0_start <= r0_stop))
    throw std::invalid_argument("optimal_rate: bad grid");

  const auto pi_at = [&](double r0) -> std::optional<double> {
    NetworkConfig c = base;
    c.r0 = r0;
    try {
      return analyze(c).throughput;
    } catch (const UnstableError&) {
      return std::nullopt;
    }
  };

  const int n =
      static_cast<int>(std::floor((r0_stop - r0_start) / r0_step + 1e-9)) + 1;
  std::vector<std::optional<double>> pi(n);
  int best = -1;
  int first_stable = -1, last_stable = -1;
  int stable = 0;
  for (int i = 0; i < n; ++i) {
    const double r0 = r0_start + i * r0_step;
    pi[i] = pi_at(r0);
    if (!pi[i]) continue;
    ++stable;
    if (first_stable < 0) first_stable = i;
    last_stable = i;
    if (best < 0 || *pi[i] > *pi[best]) best = i;
  }
  if (best < 0)
    throw UnstableError(0.0, 0.0, "optimal_rate: no stable grid point");

  OptimalRate result;
  result.stable_points = stable;
  result.r0_star = r0_start + best * r0_step;
  result.pi_max = *pi[best];
  result.at_boundary = (best == first_stable || best == last_stable);
  if (result.at_boundary) return result;

  // golden-section refinement between the stable neighbors of the best point
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = r0_start + (best - 1) * r0_step;
  double hi = r0_start + (best + 1) * r0_step;
  const auto value = [&](double r0) {
    const auto v = pi_at(r0);
    return v ? *v : -std::numeric_limits<double>::infinity();
  };
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = value(x1), f2 = value(x2);
  while (hi - lo > 1e-4) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = value(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fmid = value(mid);
  if (fmid > result.pi_max) {
    result.r0_star = mid;
    result.pi_max = fmid;
  }
  return result;
}

double verify_stationarity_residual(const LimitingPdf& pdf,
                                    std::span<const double> xs) {
  using Gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double m = pdf.m;
  const double lam = pdf.lambda;
  const double b = pdf.b;
  const double a = 1.0 - b;
  const auto head = [&](double u) { return -std::expm1(pdf.q * u) / m; };
  const auto tail = [&](double u) { return pdf.k * std::exp(pdf.q * u); };
  const auto harvest = [&](double t) { return lam * std::exp(-lam * t); };
  const auto integrate = [](auto f, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    return Gk::integrate(f, lo, hi, 12, 1e-12);
  };

  double worst = 0.0;
  for (const double x : xs) {
    double lhs, rhs;
    if (x >= m) {
      lhs = tail(x);
      rhs = integrate([&](double u) { return harvest(x - u) * head(u); }, 0.0,
                      m) +
            a * integrate([&](double u) { return harvest(x - u) * tail(u); },
                          m, x) +
            b * integrate(
                    [&](double u) { return harvest(x + m - u) * tail(u); }, m,
                    x + m);
    } else {
      const double xc = std::max(x, 0.0);
      lhs = head(xc);
      rhs = b * integrate(
                    [&](double u) { return harvest(xc + m - u) * tail(u); }, m,
                    xc + m) +
            integrate([&](double u) { return harvest(xc - u) * head(u); }, 0.0,
                      xc);
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace ornet
