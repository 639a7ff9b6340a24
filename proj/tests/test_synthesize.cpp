#include <gtest/gtest.h>

#include <bit>

#include "energy/corpus.hpp"
#include "energy/netlist.hpp"
#include "energy/semantics.hpp"
#include "energy/synthesize.hpp"
#include "energy/transform.hpp"

using namespace energy;

namespace {

Circuit literal(int n, VarIndex v, bool negated) {
  std::vector<Gate> g = {Gate::input(v)};
  if (negated) g.push_back(Gate::not_of(0));
  return Circuit(n, g, static_cast<GateId>(g.size() - 1), Fanin::two());
}

TruthTable select_table(const TruthTable& f0, const TruthTable& f1, VarIndex i) {
  TruthTable t(f0.num_vars());
  for (InputIndex a = 0; a < t.size(); ++a) t.set(a, input_bit(a, i) ? f1.get(a) : f0.get(a));
  return t;
}

TruthTable code_table(int n, std::uint64_t code) {
  TruthTable f(n);
  f.words()[0] = code;
  f.normalize();
  return f;
}

}  // namespace

TEST(MintermCascade, SingleVariable) {
  const MintermCascade m = minterm_cascade(1);
  ASSERT_EQ(m.taps.size(), 2u);
  EXPECT_EQ(truth_table(m.circuit).num_vars(), 1);
  for (InputIndex a = 0; a < 2; ++a) {
    const EvalTrace tr = evaluate(m.circuit, a);
    EXPECT_TRUE(tr.gate_values[static_cast<std::size_t>(m.taps[a])]);
    EXPECT_FALSE(tr.gate_values[static_cast<std::size_t>(m.taps[1 - a])]);
  }
  EXPECT_EQ(energy_exhaustive(m.circuit).ec, 1);
}

TEST(MintermCascade, ExactlyOneTapAndEnergyBound) {
  for (int n = 1; n <= 10; ++n) {
    const MintermCascade m = minterm_cascade(n);
    ASSERT_EQ(m.taps.size(), std::size_t{1} << n);
    for (InputIndex a = 0; a < (InputIndex{1} << n); ++a) {
      const EvalTrace tr = evaluate(m.circuit, a);
      int fired = 0;
      for (std::size_t k = 0; k < m.taps.size(); ++k) {
        const bool v = tr.gate_values[static_cast<std::size_t>(m.taps[k])];
        fired += v;
        if (v) EXPECT_EQ(k, a);
      }
      ASSERT_EQ(fired, 1);
      ASSERT_LE(tr.energy, 2 * n - 1);
    }
  }
}

TEST(MintermCascade, TapForOneZeroOne) {
  const MintermCascade m = minterm_cascade(3);
  const InputIndex a = 0b101;  // x0 = 1, x1 = 0, x2 = 1
  const EvalTrace tr = evaluate(m.circuit, a);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(tr.gate_values[static_cast<std::size_t>(m.taps[k])], k == a);
}

TEST(MintermCascade, CapExceeded) { EXPECT_THROW(minterm_cascade(5, 4), Error); }

TEST(CompileTruthTable, Xor2) {
  const TruthTable f = code_table(2, 0b0110);
  const Circuit c = compile_truth_table(f);
  EXPECT_EQ(truth_table(c), f);
  EXPECT_LE(energy_exhaustive(c).ec, 5);
  EXPECT_EQ(c.fanin(), Fanin::two());
}

TEST(CompileTruthTable, ConstantZero) {
  const TruthTable f = TruthTable::constant(3, false);
  const Circuit c = compile_truth_table(f);
  EXPECT_EQ(truth_table(c), f);
  EXPECT_LE(energy_exhaustive(c).ec, 8);
}

TEST(CompileTruthTable, AllFunctionsOnThreeVariables) {
  for (std::uint64_t code = 0; code < 256; ++code) {
    const TruthTable f = code_table(3, code);
    const Circuit c = compile_truth_table(f);
    ASSERT_EQ(truth_table(c), f) << code;
    ASSERT_LE(energy_exhaustive(c).ec, 8) << code;
  }
}

TEST(CompileTruthTable, ZeroVariables) {
  const Circuit c = compile_truth_table(TruthTable::constant(0, true));
  EXPECT_EQ(c.num_vars(), 0);
  EXPECT_TRUE(evaluate(c, InputIndex{0}).output);
}

TEST(ConnectorMerge, LiteralsNeedNoSelector) {
  const Circuit c = connector_merge(literal(3, 1, false), literal(3, 2, false), 0);
  EXPECT_EQ(structural_stats(c).negs, 1);
  EXPECT_EQ(truth_table(c), select_table(TruthTable::variable(3, 1), TruthTable::variable(3, 2), 0));
}

TEST(ConnectorMerge, OneSelectorStep) {
  const Circuit c0 = literal(3, 1, true);
  const Circuit c1 = literal(3, 2, true);
  const Circuit c = connector_merge(c0, c1, 0);
  EXPECT_EQ(structural_stats(c).negs, 2);
  EXPECT_EQ(truth_table(c), select_table(truth_table(c0), truth_table(c1), 0));
}

TEST(ConnectorMerge, SelectorFiresAtMostTwice) {
  const Circuit c = connector_merge(literal(3, 1, true), literal(3, 2, true), 0);
  // Selector: NOT over OR over two ANDs.
  std::vector<std::vector<GateId>> selectors;
  for (GateId id = 0; id < static_cast<GateId>(c.num_gates()); ++id) {
    const Gate& g = c.gate(id);
    if (g.kind != GateKind::Not || c.gate(g.children[0]).kind != GateKind::Or) continue;
    const GateId orr = g.children[0];
    std::vector<GateId> members = {id, orr};
    for (GateId ch : c.gate(orr).children) members.push_back(ch);
    selectors.push_back(members);
  }
  ASSERT_EQ(selectors.size(), 1u);
  for (InputIndex a = 0; a < 8; ++a) {
    const EvalTrace tr = evaluate(c, a);
    int fired = 0;
    for (GateId id : selectors[0]) fired += tr.gate_values[static_cast<std::size_t>(id)];
    EXPECT_LE(fired, 2) << a;
  }
}

TEST(ConnectorMerge, CorpusPairs) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    GenSpec s0, s1;
    s0.seed = seed;
    s1.seed = seed + 1000;
    s0.num_vars = s1.num_vars = 5;
    s0.size_budget = static_cast<int>(4 + seed % 12);
    s1.size_budget = static_cast<int>(4 + (seed * 7) % 12);
    s0.neg_density = s1.neg_density = 0.35;
    const Circuit c0 = generate_circuit(s0);
    const Circuit c1 = generate_circuit(s1);
    const VarIndex i = static_cast<VarIndex>(seed % 5);
    const Circuit c = connector_merge(c0, c1, i);
    const int n0 = structural_stats(c0).negs, n1 = structural_stats(c1).negs;
    EXPECT_EQ(structural_stats(c).negs, 1 + std::max(n0, n1)) << seed;
    EXPECT_EQ(truth_table(c), select_table(truth_table(c0), truth_table(c1), i)) << seed;
  }
}

TEST(ConnectorMerge, Errors) {
  try {
    connector_merge(literal(3, 1, false), literal(4, 2, false), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompatibleArity);
  }
  try {
    connector_merge(literal(3, 1, false), literal(3, 2, false), 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VarOutOfRange);
  }
}

TEST(DtToCircuit, DepthOneIsTheVariable) {
  const auto t = DecisionTree::branch(0, DecisionTree::leaf(false), DecisionTree::leaf(true));
  const DtCompileResult r = dt_to_circuit(t);
  EXPECT_EQ(structural_stats(r.circuit).negs, 0);
  EXPECT_EQ(r.circuit.gate(r.circuit.output()).kind, GateKind::Input);
  EXPECT_LE(energy_exhaustive(r.circuit).ec, 2);
}

TEST(DtToCircuit, DepthTwoWithinFive) {
  const auto l0 = DecisionTree::leaf(false), l1 = DecisionTree::leaf(true);
  const auto t = DecisionTree::branch(0, DecisionTree::branch(1, l0, l1), DecisionTree::branch(2, l1, l0));
  const DtCompileResult r = dt_to_circuit(t);
  EXPECT_EQ(truth_table(r.circuit), t.truth_table(3));
  EXPECT_LE(energy_exhaustive(r.circuit).ec, 5);
  EXPECT_TRUE(check_dt_conditions(r).all());
}

TEST(DtToCircuit, ConstantTree) {
  const DtCompileResult r = dt_to_circuit(DecisionTree::leaf(true), 2);
  EXPECT_EQ(r.tree_depth, 0);
  EXPECT_EQ(truth_table(r.circuit), TruthTable::constant(2, true));
}

TEST(DtToCircuit, RandomDepthFourOnSixVariables) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::DTree;
    s.num_vars = 6;
    s.max_depth = 4;
    const DecisionTree t = generate_tree(s);
    const DtCompileResult r = dt_to_circuit(t, 6);
    const DtConditions k = check_dt_conditions(r);
    EXPECT_EQ(truth_table(r.circuit), t.truth_table(6));
    EXPECT_LE(k.negs, 4);
    EXPECT_LE(k.ec, 32);
    EXPECT_TRUE(k.all()) << serialize_decision_tree(t);
  }
}

TEST(DtToCircuit, GuardsAreLiteralsOfTheirAnd) {
  GenSpec s;
  s.seed = 5;
  s.shape = GenShape::DTree;
  s.num_vars = 6;
  s.max_depth = 5;
  const DtCompileResult r = dt_to_circuit(generate_tree(s), 6);
  ASSERT_EQ(r.guards.size(), r.circuit.num_gates());
  for (std::size_t id = 0; id < r.guards.size(); ++id) {
    for (GateId g : r.guards[id]) {
      const auto& kids = r.circuit.gates()[id].children;
      EXPECT_EQ(r.circuit.gates()[id].kind, GateKind::And);
      EXPECT_NE(std::find(kids.begin(), kids.end(), g), kids.end());
      const Gate& lit = r.circuit.gate(g);
      // A negative literal may have been folded into a selector, which is a NOT as well.
      EXPECT_TRUE(lit.is_input() || lit.kind == GateKind::Not);
    }
  }
}

TEST(Fanin2Reduce, NarrowAndUnchanged) {
  DtCompileResult r;
  r.circuit = Circuit(2, {Gate::input(0), Gate::input(1), Gate::and_of({0, 1})}, 2);
  r.guards = {{}, {}, {0}};
  r.tree_depth = 1;
  const Circuit c = fanin2_reduce(r);
  EXPECT_EQ(c.gates(), r.circuit.gates());
  EXPECT_EQ(c.fanin(), Fanin::two());
}

TEST(Fanin2Reduce, GuardSitsAtTheBottomOfTheChain) {
  DtCompileResult r;
  r.circuit = Circuit(4, {Gate::input(0), Gate::input(1), Gate::input(2), Gate::input(3), Gate::and_of({1, 2, 3, 0})}, 4);
  r.guards = {{}, {}, {}, {}, {0}};
  r.tree_depth = 1;
  const Circuit c = fanin2_reduce(r);
  int ands = 0;
  for (const Gate& g : c.gates()) ands += g.kind == GateKind::And;
  EXPECT_EQ(ands, 3);
  EXPECT_EQ(truth_table(c), truth_table(r.circuit));
  // Depth of the guard input below the output.
  std::function<int(GateId, int)> find = [&](GateId g, int d) -> int {
    if (c.gate(g).is_input()) return c.gate(g).payload == 0 ? d : -1;
    for (GateId ch : c.gate(g).children) {
      if (const int got = find(ch, d + 1); got >= 0) return got;
    }
    return -1;
  };
  EXPECT_EQ(find(c.output(), 0), 3);
  for (InputIndex a = 0; a < 16; a += 2) EXPECT_EQ(evaluate(c, a).energy, 0) << a;
}

TEST(Fanin2Reduce, FullPipelineOnAllThreeVariableFunctions) {
  for (std::uint64_t code = 0; code < 256; ++code) {
    const TruthTable f = code_table(3, code);
    const DtResult opt = dt_depth(f);
    const DtCompileResult r = dt_to_circuit(opt.tree, 3);
    const Circuit c = fanin2_reduce(r);
    const int d = opt.depth;
    ASSERT_EQ(truth_table(c), f) << code;
    ASSERT_LE(c.max_fanin(), 2);
    ASSERT_LE(energy_exhaustive(c).ec, 2 * d * d * (d + 1)) << code;
    ASSERT_TRUE(check_dt_conditions(r).all()) << code;
  }
}
