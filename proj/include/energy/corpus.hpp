#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "energy/circuit.hpp"

namespace energy {

enum class GenShape { Circuit, Formula, ReadOnceLeafNeg, Monotone, DTree, NonSkew };

const char* to_string(GenShape s);
GenShape parse_shape(std::string_view name);

struct GenSpec {
  std::uint64_t seed = 1;
  int num_vars = 4;
  /// Logic gates for Circuit/Monotone, AND/OR gates for Formula and
  /// ReadOnceLeafNeg (leaves = budget + 1), leaf pairs for NonSkew.
  int size_budget = 10;
  double neg_density = 0.2;
  GenShape shape = GenShape::Circuit;
  Fanin fanin = Fanin::two();
  int min_negs = 0;   // formulas: NOT gates forced in after the random pass
  int max_negs = -1;  // formulas: -1 for no cap
  int max_depth = 4;  // decision trees
};

using Generated = std::variant<Circuit, DecisionTree>;

/// Deterministic in the spec: the same spec gives the same instance.
Generated generate(const GenSpec& spec);
Circuit generate_circuit(const GenSpec& spec);
DecisionTree generate_tree(const GenSpec& spec);

/// One-line summary of the spec, used as the netlist header.
std::string describe(const GenSpec& spec);

/// Named instances: parity<n>_dnf, and<n>, and_tree<n>, and_chain<n>, or<n>,
/// addr<k>, minterm<n>.
Circuit fixture(std::string_view name);

/// Every reduced decision tree of depth <= max_depth over `num_vars` variables.
std::vector<DecisionTree> enumerate_reduced_trees(int max_depth, int num_vars);

}  // namespace energy
