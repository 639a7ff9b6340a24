#pragma once

#include <string>
#include <string_view>

#include "energy/circuit.hpp"

namespace energy {

/// Line-oriented netlist:
///
///   INPUT x<k>
///   <name> = NOT <ref>
///   <name> = AND <ref> <ref> [<ref>...]
///   <name> = OR <ref> <ref> [<ref>...]
///   <name> = CONST 0|1
///   OUTPUT <ref>
///
/// Every line declares the next gate position; `g<id>` always names the gate
/// at position id and `x<k>` names the INPUT of variable k when it is unique.
/// `#` starts a comment. The comments `# vars=<n>`, `# fanin=2|unbounded|bounded:<c>`
/// and `# formula` are read back as metadata when present.
Circuit parse_netlist(std::string_view text, Shape shape = Shape::Circuit);

std::string serialize_netlist(const Circuit& c, std::string_view header = {});

/// `(x<k> <low> <high>)` with leaves `0` and `1`.
DecisionTree parse_decision_tree(std::string_view text);
std::string serialize_decision_tree(const DecisionTree& t);

/// `n=<k>` followed by 2^k characters of 0/1, input index little-endian.
TruthTable parse_truth_table(std::string_view text);
std::string serialize_truth_table(const TruthTable& t);

}  // namespace energy
