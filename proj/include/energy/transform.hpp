#pragma once

#include <map>
#include <optional>

#include "energy/circuit.hpp"

namespace energy {

using PartialAssignment = std::map<VarIndex, bool>;

/// Replaces the INPUT gates of assigned variables by CONST gates. No other
/// gate changes, so gate count and order are preserved.
Circuit hardwire(const Circuit& c, const PartialAssignment& assignment);

/// Constant propagation: gates whose value is forced become constants, AND/OR
/// gates lose neutral constant children (collapsing to their last remaining
/// child), and gates unreachable from the output are dropped.
Circuit simplify(const Circuit& c);

/// `simplify(hardwire(c, assignment))`; computes f restricted to the assignment
/// while keeping the variable numbering.
Circuit restrict(const Circuit& c, const PartialAssignment& assignment);

/// Drops gates the output does not depend on; relative order is kept.
Circuit prune_unreachable(const Circuit& c);

/// Replaces the subtree rooted at `target` by a fresh copy of `replacement`.
/// Both arguments must be formulas; the result uses the larger variable count.
Circuit substitute_leaf(const Circuit& formula, GateId target, const Circuit& replacement);

/// Single-leaf formula reading `var`.
Circuit variable_formula(VarIndex var, int num_vars);
/// Single-leaf formula holding a constant.
Circuit constant_formula(bool bit, int num_vars);

/// Gate ids of the subtree (cone) rooted at `root`, ascending.
std::vector<GateId> cone(const Circuit& c, GateId root);

struct StructuralStats {
  int size = 0;   // NOT/AND/OR gates
  int depth = 0;  // longest output-to-leaf path, in edges
  int negs = 0;   // NOT gates
  std::optional<int> leaves;  // INPUT occurrences, formulas only
};

StructuralStats structural_stats(const Circuit& c);

/// Longest path from `root` down to a leaf, in edges.
int depth_from(const Circuit& c, GateId root);

}  // namespace energy
