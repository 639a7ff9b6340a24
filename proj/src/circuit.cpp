#include "energy/circuit.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace energy {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownGateRef: return "UnknownGateRef";
    case ErrorCode::CycleOrForwardRef: return "CycleOrForwardRef";
    case ErrorCode::ArityViolation: return "ArityViolation";
    case ErrorCode::DuplicateInputVar: return "DuplicateInputVar";
    case ErrorCode::VarOutOfRange: return "VarOutOfRange";
    case ErrorCode::NotAFormula: return "NotAFormula";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::IncompatibleArity: return "IncompatibleArity";
    case ErrorCode::NoPathFound: return "NoPathFound";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NotAOneInput: return "NotAOneInput";
    case ErrorCode::NoSensitiveIndexFound: return "NoSensitiveIndexFound";
    case ErrorCode::RootNotAllowed: return "RootNotAllowed";
    case ErrorCode::NotReadOnce: return "NotReadOnce";
    case ErrorCode::NonLeafNegation: return "NonLeafNegation";
    case ErrorCode::BudgetInfeasible: return "BudgetInfeasible";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Input: return "INPUT";
    case GateKind::Const: return "CONST";
    case GateKind::Not: return "NOT";
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(int num_vars, std::vector<Gate> gates, GateId output, Fanin fanin, Shape shape)
    : num_vars_(num_vars), gates_(std::move(gates)), output_(output), fanin_(fanin), shape_(shape) {
  validate();
}

void Circuit::validate() const {
  if (num_vars_ < 0) throw Error(ErrorCode::VarOutOfRange, "negative variable count");
  const auto n = static_cast<GateId>(gates_.size());
  if (output_ < 0 || output_ >= n) {
    throw Error(ErrorCode::UnknownGateRef, "output gate " + std::to_string(output_));
  }
  std::vector<char> seen_var(static_cast<std::size_t>(num_vars_), 0);
  for (GateId id = 0; id < n; ++id) {
    const Gate& g = gates_[static_cast<std::size_t>(id)];
    for (GateId ch : g.children) {
      if (ch < 0 || ch >= id) {
        throw Error(ErrorCode::CycleOrForwardRef,
                    "gate " + std::to_string(id) + " references " + std::to_string(ch));
      }
    }
    const auto arity = g.children.size();
    switch (g.kind) {
      case GateKind::Input:
        if (arity != 0) throw Error(ErrorCode::ArityViolation, "INPUT with children");
        if (g.payload < 0 || g.payload >= num_vars_) {
          throw Error(ErrorCode::VarOutOfRange, "x" + std::to_string(g.payload));
        }
        if (shape_ == Shape::Circuit && seen_var[static_cast<std::size_t>(g.payload)]++) {
          throw Error(ErrorCode::DuplicateInputVar, "x" + std::to_string(g.payload));
        }
        break;
      case GateKind::Const:
        if (arity != 0) throw Error(ErrorCode::ArityViolation, "CONST with children");
        if (g.payload != 0 && g.payload != 1) throw Error(ErrorCode::ArityViolation, "CONST value");
        break;
      case GateKind::Not:
        if (arity != 1) {
          throw Error(ErrorCode::ArityViolation, "NOT gate " + std::to_string(id) + " needs 1 child");
        }
        break;
      case GateKind::And:
      case GateKind::Or: {
        const auto bad = [&](const std::string& why) {
          throw Error(ErrorCode::ArityViolation, std::string(to_string(g.kind)) + " gate " +
                                                     std::to_string(id) + ": " + why);
        };
        if (arity < 2) bad("needs at least 2 children");
        if (fanin_.mode == FaninMode::Fanin2 && arity != 2) bad("fan-in 2 mode");
        if (fanin_.mode == FaninMode::Bounded && arity > static_cast<std::size_t>(fanin_.bound)) {
          bad("exceeds fan-in bound " + std::to_string(fanin_.bound));
        }
        break;
      }
    }
  }
  if (shape_ == Shape::Formula) {
    std::vector<int> outdeg(gates_.size(), 0);
    for (const Gate& g : gates_) {
      for (GateId ch : g.children) ++outdeg[static_cast<std::size_t>(ch)];
    }
    for (GateId id = 0; id < n; ++id) {
      const int expected = id == output_ ? 0 : 1;
      if (outdeg[static_cast<std::size_t>(id)] != expected) {
        throw Error(ErrorCode::NotAFormula,
                    "gate " + std::to_string(id) + " has out-degree " +
                        std::to_string(outdeg[static_cast<std::size_t>(id)]));
      }
    }
  }
}

std::optional<GateId> Circuit::input_gate(VarIndex var) const {
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (gates_[i].is_input() && gates_[i].payload == var) return static_cast<GateId>(i);
  }
  return std::nullopt;
}

int Circuit::max_fanin() const {
  int best = 0;
  for (const Gate& g : gates_) {
    if (g.kind == GateKind::And || g.kind == GateKind::Or) {
      best = std::max(best, static_cast<int>(g.children.size()));
    }
  }
  return best;
}

std::vector<std::vector<GateId>> Circuit::fanouts() const {
  std::vector<std::vector<GateId>> out(gates_.size());
  for (std::size_t id = 0; id < gates_.size(); ++id) {
    for (GateId ch : gates_[id].children) {
      auto& list = out[static_cast<std::size_t>(ch)];
      if (list.empty() || list.back() != static_cast<GateId>(id)) list.push_back(static_cast<GateId>(id));
    }
  }
  return out;
}

Circuit as_formula(const Circuit& c) {
  return Circuit(c.num_vars(), c.gates(), c.output(), c.fanin(), Shape::Formula);
}

Fanin infer_fanin(const std::vector<Gate>& gates) {
  int widest = 0;
  for (const Gate& g : gates) {
    if (g.kind == GateKind::And || g.kind == GateKind::Or) {
      widest = std::max(widest, static_cast<int>(g.children.size()));
    }
  }
  if (widest <= 2) return Fanin::two();
  return Fanin::unbounded();
}

// ---------------------------------------------------------------------------
// CircuitBuilder

GateId CircuitBuilder::add(Gate g) {
  gates_.push_back(std::move(g));
  return static_cast<GateId>(gates_.size() - 1);
}

GateId CircuitBuilder::shared_input(VarIndex var) {
  for (const auto& [v, id] : inputs_) {
    if (v == var) return id;
  }
  const GateId id = input(var);
  inputs_.emplace_back(var, id);
  return id;
}

Circuit CircuitBuilder::build(GateId output, std::optional<Fanin> fanin, Shape shape) && {
  const Fanin mode = fanin.value_or(infer_fanin(gates_));
  return Circuit(num_vars_, std::move(gates_), output, mode, shape);
}

// ---------------------------------------------------------------------------
// TruthTable

TruthTable::TruthTable(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 0 || num_vars > 40) throw Error(ErrorCode::CapExceeded, "truth table variables");
  const std::uint64_t bits = std::uint64_t{1} << num_vars;
  words_.assign(static_cast<std::size_t>((bits + 63) / 64), 0);
}

TruthTable TruthTable::constant(int num_vars, bool bit) {
  TruthTable t(num_vars);
  if (bit) {
    std::fill(t.words_.begin(), t.words_.end(), ~std::uint64_t{0});
    t.normalize();
  }
  return t;
}

TruthTable TruthTable::from_bits(int num_vars, const std::vector<bool>& bits) {
  TruthTable t(num_vars);
  if (bits.size() != t.size()) {
    throw Error(ErrorCode::LengthMismatch, "truth table needs " + std::to_string(t.size()) + " bits");
  }
  for (std::uint64_t i = 0; i < t.size(); ++i) t.set(i, bits[i]);
  return t;
}

TruthTable TruthTable::variable(int num_vars, VarIndex var) {
  if (var < 0 || var >= num_vars) throw Error(ErrorCode::VarOutOfRange, "x" + std::to_string(var));
  TruthTable t(num_vars);
  for (std::uint64_t i = 0; i < t.size(); ++i) t.set(i, input_bit(i, var));
  return t;
}

void TruthTable::set(std::uint64_t index, bool bit) {
  const std::uint64_t mask = std::uint64_t{1} << (index & 63);
  if (bit) {
    words_[index >> 6] |= mask;
  } else {
    words_[index >> 6] &= ~mask;
  }
}

void TruthTable::normalize() {
  if (num_vars_ < 6) words_[0] &= (std::uint64_t{1} << size()) - 1;
}

bool TruthTable::is_constant() const {
  const bool first = get(0);
  if (num_vars_ < 6) {
    const std::uint64_t full = (std::uint64_t{1} << size()) - 1;
    return words_[0] == (first ? full : 0);
  }
  const std::uint64_t want = first ? ~std::uint64_t{0} : 0;
  return std::all_of(words_.begin(), words_.end(), [&](std::uint64_t w) { return w == want; });
}

std::uint64_t TruthTable::count_ones() const {
  std::uint64_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

TruthTable TruthTable::extended(int num_vars) const {
  if (num_vars < num_vars_) throw Error(ErrorCode::IncompatibleArity, "cannot shrink truth table");
  TruthTable t(num_vars);
  const std::uint64_t mask = size() - 1;
  for (std::uint64_t i = 0; i < t.size(); ++i) t.set(i, get(i & mask));
  return t;
}

// ---------------------------------------------------------------------------
// DecisionTree

DecisionTree DecisionTree::leaf(bool value) {
  DecisionTree t;
  t.nodes.push_back(Node{true, value, -1, -1, -1});
  return t;
}

DecisionTree DecisionTree::branch(VarIndex var, const DecisionTree& low, const DecisionTree& high) {
  DecisionTree t;
  t.nodes.push_back(Node{false, false, var, -1, -1});
  const auto append = [&t](const DecisionTree& sub) {
    const int offset = static_cast<int>(t.nodes.size());
    for (Node nd : sub.nodes) {
      if (!nd.is_leaf) {
        nd.low += offset;
        nd.high += offset;
      }
      t.nodes.push_back(nd);
    }
    return offset;
  };
  t.nodes[0].low = append(low);
  t.nodes[0].high = append(high);
  return t;
}

int DecisionTree::depth_from(int node) const {
  const Node& nd = nodes.at(static_cast<std::size_t>(node));
  if (nd.is_leaf) return 0;
  return 1 + std::max(depth_from(nd.low), depth_from(nd.high));
}

bool DecisionTree::evaluate(std::uint64_t input_index) const {
  int cur = 0;
  while (!nodes[static_cast<std::size_t>(cur)].is_leaf) {
    const Node& nd = nodes[static_cast<std::size_t>(cur)];
    cur = input_bit(input_index, nd.var) ? nd.high : nd.low;
  }
  return nodes[static_cast<std::size_t>(cur)].leaf_value;
}

int DecisionTree::min_vars() const {
  int n = 0;
  for (const Node& nd : nodes) {
    if (!nd.is_leaf) n = std::max(n, nd.var + 1);
  }
  return n;
}

bool DecisionTree::is_reduced() const {
  std::vector<VarIndex> path;
  std::function<bool(int)> walk = [&](int node) {
    const Node& nd = nodes[static_cast<std::size_t>(node)];
    if (nd.is_leaf) return true;
    if (std::find(path.begin(), path.end(), nd.var) != path.end()) return false;
    path.push_back(nd.var);
    const bool ok = walk(nd.low) && walk(nd.high);
    path.pop_back();
    return ok;
  };
  return walk(0);
}

TruthTable DecisionTree::truth_table(int num_vars) const {
  if (num_vars < min_vars()) throw Error(ErrorCode::VarOutOfRange, "tree queries more variables");
  TruthTable t(num_vars);
  for (std::uint64_t i = 0; i < t.size(); ++i) t.set(i, evaluate(i));
  return t;
}

DecisionTree DecisionTree::subtree(int node) const {
  const Node& nd = nodes.at(static_cast<std::size_t>(node));
  if (nd.is_leaf) return leaf(nd.leaf_value);
  return branch(nd.var, subtree(nd.low), subtree(nd.high));
}

// ---------------------------------------------------------------------------

std::vector<bool> bits_of(InputIndex a, int n) {
  std::vector<bool> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = input_bit(a, k);
  return out;
}

InputIndex index_of(const std::vector<bool>& bits) {
  if (bits.size() > 63) throw Error(ErrorCode::CapExceeded, "input vector longer than 63 bits");
  InputIndex a = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) a |= InputIndex{1} << k;
  }
  return a;
}

std::string bit_string(InputIndex a, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if (input_bit(a, k)) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

}  // namespace energy
