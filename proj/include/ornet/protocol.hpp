#pragma once

#include <array>
#include <cstdint>

#include "ornet/radio.hpp"

namespace ornet {

// Candidate broadcast node set: the nodes currently holding the packet.
// S1={S}, S2={S,R1}, S3={S,R2}, S4={S,R1,R2}. No other set is reachable.
enum class CbnSet : std::uint8_t { S1 = 0, S2 = 1, S3 = 2, S4 = 3 };

enum class Node : std::uint8_t { S, R1, R2, None };

// Per-state decision rows. C1 is direct S->D success and applies in every
// state; C2..C4 only in S1, C5..C8 only in S2, C9 in S3/S4, C10/C11 in S4.
// Others means no effective transmission this slot.
enum class Condition : std::uint8_t {
  C1 = 0, C2, C3, C4, C5, C6, C7, C8, C9, C10, C11, Others
};

inline constexpr int kConditionCount = 12;

inline int index(CbnSet s) { return static_cast<int>(s); }
inline int index(Condition c) { return static_cast<int>(c); }

// The six instantaneous link SNRs for one slot.
struct SlotSnrs {
  double sd = 0.0;
  double sr1 = 0.0;
  double sr2 = 0.0;
  double r1d = 0.0;
  double r1r2 = 0.0;
  double r2d = 0.0;
};

struct SlotDecision {
  Node bn = Node::None;        // broadcast node this slot
  bool delivered = false;      // packet reached D
  bool consume_r1 = false;     // R1 spent m1
  bool consume_r2 = false;     // R2 spent m2
  CbnSet next_cbn = CbnSet::S1;
  Condition fired = Condition::Others;
};

// One slot of the routing protocol. Relay priority within a state is fixed:
// S first (direct delivery), then R2, then R1. SNR and buffer comparisons
// are >= so ties count as success. Exactly one condition fires per call.
//
// State S1: C1 delivers; C2/C3/C4 hand the packet to R1, R2, or both.
// State S2: C1 delivers; C5 = R1 relays to D (consumes m1); C6/C7 = S
//   reaches R2 while R1 cannot reach D (or lacks energy); C8 = R1 forwards
//   to R2 (consumes m1, packet not yet delivered).
// State S3: C1 delivers; C9 = R2 relays to D (consumes m2).
// State S4: C1 delivers; C9 as in S3; C10/C11 = R1 relays to D when R2's
//   link or energy fails.
// Anything else is a wasted slot: no transmission, state unchanged.
inline SlotDecision evaluate(CbnSet cbn, const SlotSnrs& snrs, double b1,
                             double b2, double m1, double m2,
                             double gamma_th) {
  const bool sd = snrs.sd >= gamma_th;
  const bool sr1 = snrs.sr1 >= gamma_th;
  const bool sr2 = snrs.sr2 >= gamma_th;
  const bool r1d = snrs.r1d >= gamma_th;
  const bool r1r2 = snrs.r1r2 >= gamma_th;
  const bool r2d = snrs.r2d >= gamma_th;
  const bool e1 = b1 >= m1;
  const bool e2 = b2 >= m2;

  switch (cbn) {
    case CbnSet::S1:
      if (sd)
        return {Node::S, true, false, false, CbnSet::S1, Condition::C1};
      if (sr1 && !sr2)
        return {Node::S, false, false, false, CbnSet::S2, Condition::C2};
      if (!sr1 && sr2)
        return {Node::S, false, false, false, CbnSet::S3, Condition::C3};
      if (sr1 && sr2)
        return {Node::S, false, false, false, CbnSet::S4, Condition::C4};
      return {Node::None, false, false, false, CbnSet::S1, Condition::Others};

    case CbnSet::S2:
      if (sd)
        return {Node::S, true, false, false, CbnSet::S1, Condition::C1};
      if (e1 && r1d)
        return {Node::R1, true, true, false, CbnSet::S1, Condition::C5};
      if (e1 && !r1d && sr2)
        return {Node::S, false, false, false, CbnSet::S4, Condition::C6};
      if (!e1 && sr2)
        return {Node::S, false, false, false, CbnSet::S4, Condition::C7};
      if (e1 && !r1d && !sr2 && r1r2)
        return {Node::R1, false, true, false, CbnSet::S4, Condition::C8};
      return {Node::None, false, false, false, CbnSet::S2, Condition::Others};

    case CbnSet::S3:
      if (sd)
        return {Node::S, true, false, false, CbnSet::S1, Condition::C1};
      if (e2 && r2d)
        return {Node::R2, true, false, true, CbnSet::S1, Condition::C9};
      return {Node::None, false, false, false, CbnSet::S3, Condition::Others};

    case CbnSet::S4:
    default:
      if (sd)
        return {Node::S, true, false, false, CbnSet::S1, Condition::C1};
      if (e2 && r2d)
        return {Node::R2, true, false, true, CbnSet::S1, Condition::C9};
      if (e2 && !r2d && e1 && r1d)
        return {Node::R1, true, true, false, CbnSet::S1, Condition::C10};
      if (!e2 && e1 && r1d)
        return {Node::R1, true, true, false, CbnSet::S1, Condition::C11};
      return {Node::None, false, false, false, CbnSet::S4, Condition::Others};
  }
}

// Closed-form probability of each decision row firing, conditioned on being
// in that row's state. Assumes the six SNRs and the two buffer-availability
// events are mutually independent; pr_b1_ge / pr_b2_ge are P{B >= M}.
// Each state's rows sum to 1.
struct ConditionProbabilities {
  // indexed [state][condition]; entries that cannot fire in a state are 0
  std::array<std::array<double, kConditionCount>, 4> table{};

  double operator()(CbnSet s, Condition c) const {
    return table[index(s)][index(c)];
  }
};

ConditionProbabilities condition_probabilities(const LinkSet& links,
                                               double pr_b1_ge,
                                               double pr_b2_ge);

}  // namespace ornet
