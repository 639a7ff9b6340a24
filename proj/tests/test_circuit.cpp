#include <gtest/gtest.h>

#include "energy/circuit.hpp"

using namespace energy;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(Circuit, ValidAnd2) {
  Circuit c(2, {Gate::input(0), Gate::input(1), Gate::and_of({0, 1})}, 2, Fanin::two());
  EXPECT_EQ(c.num_gates(), 3u);
  EXPECT_EQ(c.max_fanin(), 2);
  EXPECT_EQ(c.input_gate(1), 1);
  EXPECT_FALSE(c.input_gate(5).has_value());
}

TEST(Circuit, RejectsBadShapes) {
  EXPECT_EQ(code_of([] { Circuit(1, {Gate::input(0), Gate{GateKind::Not, 0, {0, 0}}}, 1); }),
            ErrorCode::ArityViolation);
  EXPECT_EQ(code_of([] { Circuit(1, {Gate::input(0), Gate::and_of({0})}, 1); }), ErrorCode::ArityViolation);
  EXPECT_EQ(code_of([] { Circuit(1, {Gate::input(0), Gate::not_of(1)}, 1); }), ErrorCode::CycleOrForwardRef);
  EXPECT_EQ(code_of([] { Circuit(1, {Gate::input(3)}, 0); }), ErrorCode::VarOutOfRange);
  EXPECT_EQ(code_of([] { Circuit(1, {Gate::input(0), Gate::input(0), Gate::and_of({0, 1})}, 2); }),
            ErrorCode::DuplicateInputVar);
}

TEST(Circuit, FaninModesAreEnforced) {
  std::vector<Gate> g = {Gate::input(0), Gate::input(1), Gate::input(2), Gate::and_of({0, 1, 2})};
  EXPECT_EQ(code_of([&] { Circuit(3, g, 3, Fanin::two()); }), ErrorCode::ArityViolation);
  EXPECT_EQ(code_of([&] { Circuit(3, g, 3, Fanin::bounded(2)); }), ErrorCode::ArityViolation);
  EXPECT_NO_THROW(Circuit(3, g, 3, Fanin::bounded(3)));
  EXPECT_EQ(infer_fanin(g), Fanin::unbounded());
  g.pop_back();
  g.push_back(Gate::or_of({0, 1}));
  EXPECT_EQ(infer_fanin(g), Fanin::two());
}

TEST(Circuit, FormulaShapeAllowsRepeatedLeaves) {
  std::vector<Gate> g = {Gate::input(0), Gate::input(0), Gate::and_of({0, 1})};
  Circuit f(1, g, 2, Fanin::two(), Shape::Formula);
  EXPECT_TRUE(f.is_formula());
  // Shared child: not a tree.
  std::vector<Gate> dag = {Gate::input(0), Gate::input(1), Gate::and_of({0, 1}), Gate::or_of({2, 2})};
  Circuit c(2, dag, 3);
  EXPECT_EQ(code_of([&] { as_formula(c); }), ErrorCode::NotAFormula);
}

TEST(Circuit, BuilderSharesInputs) {
  CircuitBuilder b(2);
  const GateId x = b.shared_input(0);
  EXPECT_EQ(b.shared_input(0), x);
  const GateId y = b.shared_input(1);
  const GateId out = b.make_or({x, b.make_not(y)});
  Circuit c = std::move(b).build(out);
  EXPECT_EQ(c.fanin(), Fanin::two());
  EXPECT_EQ(c.num_gates(), 4u);
}

TEST(Circuit, FanoutsListParents) {
  Circuit c(2, {Gate::input(0), Gate::input(1), Gate::and_of({0, 1}), Gate::or_of({0, 2})}, 3);
  const auto fo = c.fanouts();
  EXPECT_EQ(fo[0], (std::vector<GateId>{2, 3}));
  EXPECT_EQ(fo[2], (std::vector<GateId>{3}));
  EXPECT_TRUE(fo[3].empty());
}

TEST(TruthTable, BitsAndVariables) {
  TruthTable x1 = TruthTable::variable(3, 1);
  for (std::uint64_t a = 0; a < 8; ++a) EXPECT_EQ(x1.get(a), ((a >> 1) & 1) == 1);
  EXPECT_EQ(x1.count_ones(), 4u);
  EXPECT_TRUE(TruthTable::constant(7, true).is_constant());
  EXPECT_FALSE(x1.is_constant());
  const TruthTable wide = x1.extended(8);
  for (std::uint64_t a = 0; a < 256; ++a) EXPECT_EQ(wide.get(a), ((a >> 1) & 1) == 1);
}

TEST(TruthTable, FromBitsMatchesIndexing) {
  const TruthTable t = TruthTable::from_bits(2, {false, false, false, true});
  EXPECT_EQ(t.count_ones(), 1u);
  EXPECT_TRUE(t.get(3));
}

TEST(DecisionTree, DepthEvaluateReduced) {
  const auto leaf0 = DecisionTree::leaf(false);
  const auto leaf1 = DecisionTree::leaf(true);
  const auto t = DecisionTree::branch(0, DecisionTree::branch(1, leaf0, leaf1), leaf1);  // x0 | x1
  EXPECT_EQ(t.depth(), 2);
  EXPECT_TRUE(t.is_reduced());
  EXPECT_EQ(t.min_vars(), 2);
  EXPECT_FALSE(t.evaluate(0));
  EXPECT_TRUE(t.evaluate(1));
  EXPECT_TRUE(t.evaluate(2));
  const auto repeat = DecisionTree::branch(0, DecisionTree::branch(0, leaf0, leaf1), leaf1);
  EXPECT_FALSE(repeat.is_reduced());
  EXPECT_EQ(t.subtree(t.nodes[0].low), DecisionTree::branch(1, leaf0, leaf1));
}

TEST(Bits, RoundTrip) {
  for (InputIndex a = 0; a < 32; ++a) EXPECT_EQ(index_of(bits_of(a, 5)), a);
  EXPECT_EQ(bit_string(1, 3), "100");
}
