#pragma once

#include <optional>
#include <vector>

#include "energy/circuit.hpp"
#include "energy/semantics.hpp"

namespace energy {

enum class PathTerminal { Root, FeedsNot };

/// Child-to-parent chain from an INPUT gate of x_i in which every gate above
/// the input outputs 1 on `input`.
struct PositivePath {
  std::vector<GateId> gate_ids;
  PathTerminal terminal = PathTerminal::Root;
  GateId not_gate = -1;  // the NOT fed by the last gate when terminal is FeedsNot
  InputIndex input = 0;
  VarIndex var = 0;
};

/// Breadth-first search from x_i through AND/OR gates that fire on `a`,
/// lower gate ids first, stopping at the output or at a gate feeding a NOT.
PositivePath find_positive_path(const Circuit& c, InputIndex a, VarIndex i);
/// Same search on precomputed gate values (from `evaluate`).
PositivePath find_positive_path(const Circuit& c, const std::vector<bool>& values, InputIndex a,
                                VarIndex i);

/// Re-checks wiring, firing and the terminal condition of `p`.
bool verify_positive_path(const Circuit& c, const PositivePath& p);

struct PsensBound {
  int ec = 0;
  PsensReport psens;
  int divisor = 3;  // 3 for fan-in 2, c + 1 for bounded fan-in c
  bool holds = true;  // ec * divisor >= psens
};

PsensBound check_psens_bound(const Circuit& c, int cap = kDefaultSweepCap);

struct TradeoffReport {
  int size = 0;
  int energy = 0;
  std::size_t pattern_count = 0;
  int max_fanin = 1;
  DecisionTree tree;
  std::optional<int> dt_oracle;

  int tree_depth() const { return tree.depth(); }
  bool depth_ok() const { return static_cast<std::size_t>(tree_depth()) <= max_fanin * pattern_count; }
  /// pattern_count <= size^energy + 1, evaluated without overflow.
  bool pattern_bound_ok() const;
};

/// Decision tree read off the circuit: repeatedly query the inputs of the
/// first gate that is not constant over the firing patterns, restrict, and
/// recompute the patterns.
TradeoffReport dt_from_patterns(const Circuit& c, int cap = kDefaultSweepCap,
                                int dt_cap = kDefaultDtCap);

}  // namespace energy
