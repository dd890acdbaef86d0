#include "ornet/protocol.hpp"

#include <stdexcept>

namespace ornet {

ConditionProbabilities condition_probabilities(const LinkSet& links,
                                               double pr_b1_ge,
                                               double pr_b2_ge) {
  if (!(pr_b1_ge >= 0.0 && pr_b1_ge <= 1.0) ||
      !(pr_b2_ge >= 0.0 && pr_b2_ge <= 1.0))
    throw std::invalid_argument("availability probabilities must be in [0,1]");

  const double g = links.gamma_th;
  const double e_sd = p_link_success(links.omega_sd, g);
  const double e_sr1 = p_link_success(links.omega_sr1, g);
  const double e_sr2 = p_link_success(links.omega_sr2, g);
  const double e_r1d = p_link_success(links.omega_r1d, g);
  const double e_r1r2 = p_link_success(links.omega_r1r2, g);
  const double e_r2d = p_link_success(links.omega_r2d, g);
  const double f_sd = p_link_failure(links.omega_sd, g);
  const double a1 = pr_b1_ge;
  const double a2 = pr_b2_ge;

  ConditionProbabilities r;
  auto set = [&r](CbnSet s, Condition c, double v) {
    r.table[index(s)][index(c)] = v;
  };

  set(CbnSet::S1, Condition::C1, e_sd);
  set(CbnSet::S1, Condition::C2, f_sd * e_sr1 * (1.0 - e_sr2));
  set(CbnSet::S1, Condition::C3, f_sd * (1.0 - e_sr1) * e_sr2);
  set(CbnSet::S1, Condition::C4, f_sd * e_sr1 * e_sr2);
  set(CbnSet::S1, Condition::Others, f_sd * (1.0 - e_sr1) * (1.0 - e_sr2));

  set(CbnSet::S2, Condition::C1, e_sd);
  set(CbnSet::S2, Condition::C5, f_sd * a1 * e_r1d);
  set(CbnSet::S2, Condition::C6, f_sd * a1 * (1.0 - e_r1d) * e_sr2);
  set(CbnSet::S2, Condition::C7, f_sd * (1.0 - a1) * e_sr2);
  set(CbnSet::S2, Condition::C8,
      f_sd * a1 * (1.0 - e_r1d) * (1.0 - e_sr2) * e_r1r2);
  set(CbnSet::S2, Condition::Others,
      f_sd * (1.0 - e_sr2) *
          (a1 * (1.0 - e_r1d) * (1.0 - e_r1r2) + (1.0 - a1)));

  set(CbnSet::S3, Condition::C1, e_sd);
  set(CbnSet::S3, Condition::C9, f_sd * a2 * e_r2d);
  set(CbnSet::S3, Condition::Others, f_sd * (1.0 - a2 * e_r2d));

  set(CbnSet::S4, Condition::C1, e_sd);
  set(CbnSet::S4, Condition::C9, f_sd * a2 * e_r2d);
  set(CbnSet::S4, Condition::C10, f_sd * a2 * (1.0 - e_r2d) * a1 * e_r1d);
  set(CbnSet::S4, Condition::C11, f_sd * (1.0 - a2) * a1 * e_r1d);
  set(CbnSet::S4, Condition::Others,
      f_sd * (1.0 - (a2 * e_r2d + a2 * (1.0 - e_r2d) * a1 * e_r1d +
                     (1.0 - a2) * a1 * e_r1d)));
  return r;
}

}  // namespace ornet
