#include <gtest/gtest.h>

#include "energy/corpus.hpp"
#include "energy/kw_game.hpp"
#include "energy/netlist.hpp"
#include "energy/rng.hpp"
#include "energy/synthesize.hpp"

using namespace energy;

namespace {

Circuit and2() { return parse_netlist("INPUT x0\nINPUT x1\ng2 = AND g0 g1\nOUTPUT g2\n"); }
Circuit or2() { return parse_netlist("INPUT x0\nINPUT x1\ng2 = OR g0 g1\nOUTPUT g2\n"); }

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

TEST(Minimize, GreedyLowestIndexFirst) {
  EXPECT_EQ(minimize_one_input(truth_table(or2()), 0b11), 0b10u);
  EXPECT_EQ(minimize_one_input(truth_table(and2()), 0b11), 0b11u);
}

TEST(Minimize, ResultIsMinimalAndNonZero) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::Monotone;
    s.num_vars = 6;
    s.size_budget = 10;
    const TruthTable f = truth_table(generate_circuit(s));
    for (InputIndex a = 0; a < 64; ++a) {
      if (!f.get(a)) continue;
      const InputIndex m = minimize_one_input(f, a);
      ASSERT_NE(m, 0u);
      ASSERT_EQ(m & ~a, 0u);
      ASSERT_TRUE(f.get(m));
      for (VarIndex i = 0; i < 6; ++i) {
        if (input_bit(m, i)) ASSERT_FALSE(f.get(m & ~(InputIndex{1} << i)));
      }
    }
  }
}

TEST(Minimize, Errors) {
  const TruthTable x = truth_table(parse_netlist("INPUT x0\ng1 = NOT g0\nOUTPUT g1\n"));
  EXPECT_EQ(code_of([&] { minimize_one_input(x, 0); }), ErrorCode::NotMonotone);
  EXPECT_EQ(code_of([&] { minimize_one_input(truth_table(and2()), 1); }), ErrorCode::NotAOneInput);
}

TEST(Protocol, And2) {
  const Circuit c = and2();
  const KwTranscript t = run_protocol({truth_table(c), c, 0b11, 0b10});
  EXPECT_EQ(t.result, 0);
  EXPECT_LE(t.alice_bits, 1);
  EXPECT_TRUE(t.within_bound());
  EXPECT_EQ(t.bits_per_address, 1);
}

TEST(Protocol, Or2) {
  const Circuit c = or2();
  const KwTranscript t = run_protocol({truth_table(c), c, 0b01, 0b00});
  EXPECT_EQ(t.result, 0);
  EXPECT_TRUE(t.within_bound());
}

TEST(Protocol, WideGatesChargeMoreBitsPerAddress) {
  const Circuit c = parse_netlist("INPUT x0\nINPUT x1\nINPUT x2\nINPUT x3\nINPUT x4\ng5 = AND g0 g1 g2 g3 g4\nOUTPUT g5\n");
  const KwTranscript t = run_protocol({truth_table(c), c, 0b11111, 0b11011});
  EXPECT_EQ(t.result, 2);
  EXPECT_EQ(t.bits_per_address, 3);
  EXPECT_TRUE(t.within_bound());
}

TEST(Protocol, Errors) {
  const Circuit c = and2();
  EXPECT_EQ(code_of([&] { run_protocol({truth_table(c), c, 0b11, 0b11}); }), ErrorCode::NotAOneInput);
  EXPECT_EQ(code_of([&] { run_protocol({truth_table(c), or2(), 0b11, 0b00}); }), ErrorCode::IncompatibleArity);
}

TEST(Protocol, CorpusWithBothCircuits) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::Monotone;
    s.num_vars = static_cast<int>(2 + seed % 6);
    s.size_budget = static_cast<int>(3 + seed % 12);
    s.fanin = seed % 3 ? Fanin::two() : Fanin::bounded(3);
    const Circuit mono = generate_circuit(s);
    const TruthTable f = truth_table(mono);
    const Circuit neg = seed % 2 ? demorgan_rewrite(mono) : compile_truth_table(f);
    Rng rng(seed);
    for (int k = 0; k < 30; ++k) {
      const InputIndex a = rng.below(f.size());
      const InputIndex b = rng.below(f.size());
      if (!f.get(a) || f.get(b)) continue;
      for (const Circuit* c : {&mono, &neg}) {
        const KwTranscript t = run_protocol({f, *c, a, b});
        ASSERT_TRUE(input_bit(a, t.result) && !input_bit(b, t.result)) << describe(s);
        ASSERT_TRUE(t.within_bound()) << describe(s);
        // Every index the minimized input can return is also valid for a.
        ASSERT_EQ(t.minimized_input & ~a, 0u);
      }
    }
  }
}

TEST(DemorganRewrite, EquivalentAndNegationBearing) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::Monotone;
    s.num_vars = 5;
    s.size_budget = 12;
    const Circuit c = generate_circuit(s);
    const Circuit d = demorgan_rewrite(c);
    EXPECT_EQ(truth_table(d), truth_table(c));
    int nots = 0;
    for (const Gate& g : d.gates()) nots += g.kind == GateKind::Not;
    EXPECT_GE(nots, 2);
  }
}
