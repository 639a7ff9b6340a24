#pragma once

#include <vector>

#include "energy/circuit.hpp"

namespace energy {

inline constexpr int kDefaultSynthCap = 16;

/// All 2^n minterms over x0..x_{n-1}; `taps[m]` computes the minterm that is
/// true exactly on input index m. The circuit output is the last tap.
struct MintermCascade {
  Circuit circuit;
  std::vector<GateId> taps;
  int n = 0;
};

MintermCascade minterm_cascade(int n, int cap = kDefaultSynthCap);

/// Minterm cascade followed by a balanced OR2 tree over the taps of f^-1(1);
/// the remaining leaves are CONST 0. n = 0 yields a CONST circuit.
Circuit compile_truth_table(const TruthTable& f, int cap = kDefaultSynthCap);

/// Circuit for (!x_i & C0) | (x_i & C1) in which the NOT gates of C0 and C1
/// are paired off through shared selectors, so the result has
/// 1 + max(negs(C0), negs(C1)) NOT gates. The fan-in mode is the wider of
/// the two inputs' modes.
Circuit connector_merge(const Circuit& c0, const Circuit& c1, VarIndex i);

struct DtCompileResult {
  Circuit circuit;
  /// Per gate id: the literal gates that switch this AND off, innermost
  /// recursion level first and the root level last. Empty for other gates.
  std::vector<std::vector<GateId>> guards;
  int tree_depth = 0;
};

/// Decision tree to unbounded fan-in circuit with OR fan-in 2, no OR fed by an
/// INPUT or NOT, at most depth(T) NOT gates and energy at most 2 depth(T)^2.
/// `num_vars` defaults to the number of variables the tree touches.
DtCompileResult dt_to_circuit(const DecisionTree& t, int num_vars = -1);

struct DtConditions {
  int d = 0;
  int ec = 0;
  int negs = 0;
  int max_and_fanin = 0;
  bool or_fanin2 = true;
  bool and_fanin_ok = true;     // <= d + 2
  bool no_literal_into_or = true;
  bool negs_ok = true;          // <= d
  bool ec_ok = true;            // <= 2 d^2
  bool all() const { return or_fanin2 && and_fanin_ok && no_literal_into_or && negs_ok && ec_ok; }
};

DtConditions check_dt_conditions(const DtCompileResult& r);

/// Fan-in 2 version of a compiled tree: every AND wider than 2 becomes a comb
/// of AND2 gates whose deepest leaves are its guards, root-level guard at the
/// bottom.
Circuit fanin2_reduce(const DtCompileResult& r);

}  // namespace energy
