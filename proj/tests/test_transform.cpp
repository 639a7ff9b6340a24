#include <gtest/gtest.h>

#include "energy/corpus.hpp"
#include "energy/netlist.hpp"
#include "energy/rng.hpp"
#include "energy/semantics.hpp"
#include "energy/synthesize.hpp"
#include "energy/transform.hpp"

using namespace energy;

namespace {

Circuit and2() { return parse_netlist("INPUT x0\nINPUT x1\ng2 = AND g0 g1\nOUTPUT g2\n"); }

}  // namespace

TEST(Restrict, AndWithOneIsIdentity) {
  const Circuit r = restrict(and2(), {{0, true}});
  EXPECT_EQ(truth_table(r), TruthTable::variable(2, 1));
  EXPECT_EQ(structural_stats(r).size, 0);
}

TEST(Restrict, AndWithZeroIsConstant) {
  const Circuit r = restrict(and2(), {{0, false}});
  EXPECT_EQ(r.num_gates(), 1u);
  EXPECT_TRUE(r.gate(r.output()).is_const());
  EXPECT_EQ(r.gate(r.output()).payload, 0);
}

TEST(Restrict, ParityFixesToComplement) {
  const Circuit p = fixture("parity3_dnf");
  const Circuit r = restrict(p, {{2, true}});
  const TruthTable t = truth_table(r);
  for (InputIndex a = 0; a < 8; ++a) {
    const bool x0 = a & 1, x1 = (a >> 1) & 1;
    EXPECT_EQ(t.get(a), !(x0 ^ x1)) << a;
  }
}

TEST(Restrict, VarOutOfRange) {
  try {
    restrict(and2(), {{5, true}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VarOutOfRange);
  }
}

TEST(Restrict, AgreesWithEvaluationOnEveryCompletion) {
  Rng rng(99);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.num_vars = static_cast<int>(2 + seed % 7);
    s.size_budget = 25;
    s.neg_density = 0.3;
    const Circuit c = generate_circuit(s);
    const int n = c.num_vars();
    PartialAssignment sigma;
    for (VarIndex v = 0; v < n; ++v) {
      if (rng.chance(0.4)) sigma[v] = rng.chance(0.5);
    }
    const TruthTable restricted = truth_table(restrict(c, sigma));
    const TruthTable full = truth_table(c);
    for (InputIndex a = 0; a < full.size(); ++a) {
      InputIndex b = a;
      for (auto [v, bit] : sigma) b = bit ? (b | InputIndex{1} << v) : (b & ~(InputIndex{1} << v));
      ASSERT_EQ(restricted.get(a), full.get(b)) << describe(s);
    }
  }
}

TEST(Hardwire, KeepsGateCount) {
  const Circuit c = fixture("parity3_dnf");
  const Circuit h = hardwire(c, {{1, false}});
  EXPECT_EQ(h.num_gates(), c.num_gates());
  EXPECT_TRUE(h.gate(1).is_const());
}

TEST(Substitute, LeafByConstant) {
  const Circuit f = as_formula(and2());
  const Circuit r = substitute_leaf(f, 0, constant_formula(true, 2));
  EXPECT_EQ(truth_table(r), TruthTable::variable(2, 1));
}

TEST(Substitute, NotSubtreeByFreshVariable) {
  // !x0 | x1 with the NOT replaced by z = x2.
  const Circuit f = parse_netlist("INPUT x0\ng1 = NOT g0\nINPUT x1\ng3 = OR g1 g2\nOUTPUT g3\n", Shape::Formula);
  const Circuit r = substitute_leaf(f, 1, variable_formula(2, 3));
  EXPECT_EQ(r.num_vars(), 3);
  EXPECT_EQ(structural_stats(r).leaves, 2);
  EXPECT_EQ(structural_stats(r).negs, 0);
  const TruthTable t = truth_table(r);
  for (InputIndex a = 0; a < 8; ++a) EXPECT_EQ(t.get(a), ((a >> 1) & 1) || ((a >> 2) & 1));
}

TEST(Substitute, RootGivesReplacement) {
  const Circuit f = as_formula(and2());
  const Circuit rep = parse_netlist("INPUT x1\ng1 = NOT g0\nOUTPUT g1\n", Shape::Formula);
  const Circuit r = substitute_leaf(f, f.output(), rep);
  EXPECT_TRUE(equivalent(truth_table(r), truth_table(rep)));
}

TEST(Substitute, RoundTripThroughFreshVariable) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::Formula;
    s.num_vars = 4;
    s.size_budget = 8;
    s.neg_density = 0.3;
    const Circuit f = generate_circuit(s);
    const GateId g = static_cast<GateId>(seed % f.num_gates());
    if (g == f.output()) continue;
    // Cut out the subtree at g, put z in its place, then plug it back in.
    std::vector<Gate> sub;
    std::vector<GateId> remap(f.num_gates(), -1);
    for (GateId id : cone(f, g)) {
      Gate copy = f.gate(id);
      for (GateId& ch : copy.children) ch = remap[static_cast<std::size_t>(ch)];
      remap[static_cast<std::size_t>(id)] = static_cast<GateId>(sub.size());
      sub.push_back(copy);
    }
    const Circuit piece(4, sub, static_cast<GateId>(sub.size() - 1), infer_fanin(sub), Shape::Formula);
    const Circuit with_z = substitute_leaf(f, g, variable_formula(4, 5));
    GateId z = -1;
    for (GateId id = 0; id < static_cast<GateId>(with_z.num_gates()); ++id) {
      if (with_z.gate(id).is_input() && with_z.gate(id).payload == 4) z = id;
    }
    ASSERT_GE(z, 0);
    const Circuit back = substitute_leaf(with_z, z, piece);
    EXPECT_TRUE(equivalent(truth_table(back), truth_table(f))) << describe(s);
  }
}

TEST(Stats, Examples) {
  const auto s = structural_stats(and2());
  EXPECT_EQ(s.size, 1);
  EXPECT_EQ(s.depth, 1);
  EXPECT_EQ(s.negs, 0);
  const auto n = structural_stats(parse_netlist("INPUT x0\nINPUT x1\ng2 = AND g0 g1\ng3 = NOT g2\nOUTPUT g3\n"));
  EXPECT_EQ(n.size, 2);
  EXPECT_EQ(n.depth, 2);
  EXPECT_EQ(n.negs, 1);
  EXPECT_EQ(structural_stats(minterm_cascade(3).circuit).negs, 3);
}

TEST(Simplify, PreservesFunction) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.num_vars = 6;
    s.size_budget = 30;
    s.neg_density = 0.25;
    const Circuit c = generate_circuit(s);
    const Circuit h = hardwire(c, {{0, seed % 2 == 0}});
    EXPECT_EQ(truth_table(simplify(h)), truth_table(h));
    EXPECT_EQ(truth_table(prune_unreachable(c)), truth_table(c));
  }
}
