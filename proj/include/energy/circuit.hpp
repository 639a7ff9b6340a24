#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace energy {

enum class ErrorCode {
  UnknownGateRef,
  CycleOrForwardRef,
  ArityViolation,
  DuplicateInputVar,
  VarOutOfRange,
  NotAFormula,
  LengthMismatch,
  CapExceeded,
  IncompatibleArity,
  NoPathFound,
  NotMonotone,
  NotAOneInput,
  NoSensitiveIndexFound,
  RootNotAllowed,
  NotReadOnce,
  NonLeafNegation,
  BudgetInfeasible,
  UnknownFixture,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

using GateId = std::int32_t;
using VarIndex = std::int32_t;

enum class GateKind : std::uint8_t { Input, Const, Not, And, Or };

const char* to_string(GateKind kind);

struct Gate {
  GateKind kind = GateKind::Const;
  /// Variable index for Input gates, bit value for Const gates.
  std::int32_t payload = 0;
  std::vector<GateId> children;

  bool is_input() const { return kind == GateKind::Input; }
  bool is_const() const { return kind == GateKind::Const; }
  /// NOT/AND/OR: the gates that count toward size, energy and firing patterns.
  bool is_logic() const { return !is_input() && !is_const(); }

  static Gate input(VarIndex var) { return {GateKind::Input, var, {}}; }
  static Gate constant(bool bit) { return {GateKind::Const, bit ? 1 : 0, {}}; }
  static Gate not_of(GateId child) { return {GateKind::Not, 0, {child}}; }
  static Gate and_of(std::vector<GateId> ch) { return {GateKind::And, 0, std::move(ch)}; }
  static Gate or_of(std::vector<GateId> ch) { return {GateKind::Or, 0, std::move(ch)}; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class FaninMode : std::uint8_t { Fanin2, Bounded, Unbounded };

struct Fanin {
  FaninMode mode = FaninMode::Unbounded;
  int bound = 0;  // meaningful for Bounded only

  static Fanin two() { return {FaninMode::Fanin2, 2}; }
  static Fanin bounded(int c) { return {FaninMode::Bounded, c}; }
  static Fanin unbounded() { return {FaninMode::Unbounded, 0}; }

  friend bool operator==(const Fanin&, const Fanin&) = default;
};

/// Whether repeated INPUT gates for one variable are admitted.
enum class Shape : std::uint8_t { Circuit, Formula };

/// A DAG of gates stored in topological order; gate ids are positions.
/// Instances are validated on construction and immutable afterwards.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int num_vars, std::vector<Gate> gates, GateId output,
          Fanin fanin = Fanin::unbounded(), Shape shape = Shape::Circuit);

  int num_vars() const { return num_vars_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(GateId id) const { return gates_.at(static_cast<std::size_t>(id)); }
  GateId output() const { return output_; }
  std::size_t num_gates() const { return gates_.size(); }
  Fanin fanin() const { return fanin_; }
  Shape shape() const { return shape_; }
  bool is_formula() const { return shape_ == Shape::Formula; }

  /// Gate id of the INPUT gate for `var`, if the circuit has one (Circuit shape only).
  std::optional<GateId> input_gate(VarIndex var) const;

  /// Largest AND/OR fan-in present (0 when there are none).
  int max_fanin() const;

  /// Fan-out lists indexed by gate id, children-to-parents, ascending.
  std::vector<std::vector<GateId>> fanouts() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void validate() const;

  int num_vars_ = 0;
  std::vector<Gate> gates_;
  GateId output_ = -1;
  Fanin fanin_;
  Shape shape_ = Shape::Circuit;
};

/// Re-checks tree shape and returns a Formula-shaped copy; throws NotAFormula.
Circuit as_formula(const Circuit& c);

/// Narrowest fan-in mode that admits every gate of `gates`.
Fanin infer_fanin(const std::vector<Gate>& gates);

/// Incremental construction helper; gates are appended in topological order.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int num_vars) : num_vars_(num_vars) {}

  GateId add(Gate g);
  GateId input(VarIndex var) { return add(Gate::input(var)); }
  GateId constant(bool bit) { return add(Gate::constant(bit)); }
  GateId make_not(GateId a) { return add(Gate::not_of(a)); }
  GateId make_and(std::vector<GateId> ch) { return add(Gate::and_of(std::move(ch))); }
  GateId make_or(std::vector<GateId> ch) { return add(Gate::or_of(std::move(ch))); }

  /// INPUT gate for `var`, created on first use and shared afterwards.
  GateId shared_input(VarIndex var);

  std::size_t size() const { return gates_.size(); }
  const Gate& gate(GateId id) const { return gates_.at(static_cast<std::size_t>(id)); }
  int num_vars() const { return num_vars_; }

  Circuit build(GateId output, std::optional<Fanin> fanin = std::nullopt,
                Shape shape = Shape::Circuit) &&;

 private:
  int num_vars_;
  std::vector<Gate> gates_;
  std::vector<std::pair<VarIndex, GateId>> inputs_;
};

/// Explicit 2^n-bit function table; bit `i` is f at the input whose
/// variable k equals bit k of i.
class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(int num_vars);

  static TruthTable constant(int num_vars, bool bit);
  static TruthTable from_bits(int num_vars, const std::vector<bool>& bits);
  /// Projection onto variable `var`.
  static TruthTable variable(int num_vars, VarIndex var);

  int num_vars() const { return num_vars_; }
  std::uint64_t size() const { return std::uint64_t{1} << num_vars_; }
  bool get(std::uint64_t index) const {
    return (words_[index >> 6] >> (index & 63)) & 1u;
  }
  void set(std::uint64_t index, bool bit);

  bool is_constant() const;
  std::uint64_t count_ones() const;

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Zero the unused high bits of the last word (n < 6).
  void normalize();

  /// Same function viewed over `num_vars` >= current variables.
  TruthTable extended(int num_vars) const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int num_vars_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Binary decision tree; node 0 is the root.
struct DecisionTree {
  struct Node {
    bool is_leaf = true;
    bool leaf_value = false;
    VarIndex var = -1;
    int low = -1;   // branch taken when var = 0
    int high = -1;  // branch taken when var = 1

    friend bool operator==(const Node&, const Node&) = default;
  };
  std::vector<Node> nodes;

  static DecisionTree leaf(bool value);
  /// Tree querying `var` with the given subtrees.
  static DecisionTree branch(VarIndex var, const DecisionTree& low, const DecisionTree& high);

  int depth() const { return depth_from(0); }
  int depth_from(int node) const;
  bool evaluate(std::uint64_t input_index) const;
  /// Largest variable index queried plus one.
  int min_vars() const;
  /// No variable repeats on any root-to-leaf path.
  bool is_reduced() const;
  TruthTable truth_table(int num_vars) const;

  /// Copy of the subtree rooted at `node` as a standalone tree.
  DecisionTree subtree(int node) const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

/// Input vectors are passed as little-endian indices where x_k is bit k.
using InputIndex = std::uint64_t;

inline bool input_bit(InputIndex a, VarIndex k) { return (a >> k) & 1u; }

std::vector<bool> bits_of(InputIndex a, int n);
InputIndex index_of(const std::vector<bool>& bits);
/// "x0 x1 ... x_{n-1}" as a 0/1 string.
std::string bit_string(InputIndex a, int n);

}  // namespace energy
