#pragma once

#include <vector>

#include "energy/circuit.hpp"
#include "energy/lower_bounds.hpp"

namespace energy {

/// Monotone KW instance: Alice holds a in f^-1(1), Bob holds b in f^-1(0).
struct KwInstance {
  TruthTable f;
  Circuit circuit;
  InputIndex a = 0;
  InputIndex b = 0;
};

struct KwTranscript {
  int alice_bits = 0;
  int bob_bits = 0;
  VarIndex result = -1;
  InputIndex minimized_input = 0;
  int bits_per_address = 1;   // ceil(log2 c), c the widest AND/OR (at least 2)
  int energy_at_minimized = 0;
  std::vector<GateId> charged_gates;  // in announcement order

  int bound() const { return energy_at_minimized * bits_per_address; }
  bool within_bound() const { return alice_bits <= bound(); }
};

/// Greedy descent, lowest index first: drop every 1-bit whose removal keeps
/// f = 1. Every remaining 1-bit of the result is sensitive.
InputIndex minimize_one_input(const TruthTable& f, InputIndex a);

/// Alice minimizes a to a', then walks the positive paths of a' target by
/// target (ascending gate id), announcing one child address per newly visited
/// gate; Bob answers one bit per traced index and the game stops at the first
/// index with b_i = 0.
KwTranscript run_protocol(const KwInstance& inst, int cap = kDefaultSweepCap);

/// f(x) = !C*(!x): dual gates over negated inputs, then one output NOT.
Circuit demorgan_rewrite(const Circuit& c);

}  // namespace energy
