#include <gtest/gtest.h>

#include <cmath>

#include "energy/corpus.hpp"
#include "energy/formula_energy.hpp"
#include "energy/netlist.hpp"
#include "energy/rng.hpp"
#include "energy/transform.hpp"

using namespace energy;

namespace {

Circuit formula(const std::string& text) { return parse_netlist(text, Shape::Formula); }

// (x0 & x1) | x2
Circuit and_or() { return formula("INPUT x0\nINPUT x1\ng2 = AND g0 g1\nINPUT x2\ng4 = OR g2 g3\nOUTPUT g4\n"); }

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

TEST(FormulaStats, Counts) {
  const FormulaStats s = formula_stats(and_or());
  EXPECT_EQ(s.leaves, 3);
  EXPECT_EQ(s.depth, 2);
  EXPECT_EQ(s.negs, 0);
  EXPECT_EQ(s.size, 2);
  EXPECT_EQ(s.ec, 2);
}

TEST(Restriction, SubtreeToZero) {
  const Circuit f = and_or();
  const RestrictionCheck r = restriction_energy_check(f, 2, false);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.bound, formula_stats(f).ec + 2);
  EXPECT_LE(r.ec_restricted, r.bound);
}

TEST(Restriction, LeafAndRoot) {
  const Circuit f = and_or();
  for (bool b : {false, true}) EXPECT_TRUE(restriction_energy_check(f, 0, b).holds);
  EXPECT_EQ(code_of([&] { restriction_energy_check(f, f.output(), true); }), ErrorCode::RootNotAllowed);
}

TEST(Restriction, CorpusAllGatesBothBits) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::Formula;
    s.num_vars = static_cast<int>(2 + seed % 7);
    s.size_budget = static_cast<int>(1 + seed % 23);
    s.neg_density = 0.2;
    s.max_negs = 4;
    const Circuit f = generate_circuit(s);
    for (GateId g = 0; g < static_cast<GateId>(f.num_gates()); ++g) {
      if (g == f.output()) continue;
      for (bool b : {false, true}) ASSERT_TRUE(restriction_energy_check(f, g, b).holds) << describe(s);
    }
  }
}

TEST(Decompose, SingleNegation) {
  const Circuit f = formula("INPUT x0\ng1 = NOT g0\nOUTPUT g1\n");
  const DecompositionResult r = decompose_gk(f);
  EXPECT_LE(r.T, 3);
  EXPECT_TRUE(equivalent(truth_table(r.f_prime), truth_table(f)));
}

TEST(Decompose, NegatedLiteralOrVariable) {
  // !x0 | x1: the NOT is its own smallest subformula holding every negation.
  const Circuit f = formula("INPUT x0\ng1 = NOT g0\nINPUT x1\ng3 = OR g1 g2\nOUTPUT g3\n");
  const DecompositionResult r = decompose_gk(f);
  EXPECT_TRUE(equivalent(truth_table(r.f_prime), truth_table(f)));
  EXPECT_EQ(r.T, 3);
  EXPECT_EQ(r.blocks.size(), 3u);
  EXPECT_LE(structural_stats(r.f_prime).leaves.value(), 4);
  const DecompositionCheck k = check_decomposition(f);
  EXPECT_TRUE(k.all());
}

TEST(Decompose, MonotoneIsOneBlock) {
  const DecompositionResult r = decompose_gk(and_or());
  EXPECT_EQ(r.T, 1);
  EXPECT_EQ(r.f_prime, and_or());
  EXPECT_EQ(code_of([] { check_decomposition(and_or()); }), ErrorCode::NotMonotone);
}

TEST(Decompose, BlocksAreNotFreeAndCoverLeaves) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::Formula;
    s.num_vars = static_cast<int>(2 + seed % 7);
    s.size_budget = static_cast<int>(2 + seed % 22);
    s.neg_density = 0.15;
    s.min_negs = static_cast<int>(1 + seed % 4);
    s.max_negs = 4;
    const Circuit f = generate_circuit(s);
    const DecompositionResult r = decompose_gk(f);
    std::vector<int> owner(r.f_prime.num_gates(), -1);
    for (std::size_t b = 0; b < r.blocks.size(); ++b) {
      for (GateId g : r.blocks[b]) {
        EXPECT_NE(r.f_prime.gate(g).kind, GateKind::Not);
        EXPECT_EQ(owner[static_cast<std::size_t>(g)], -1);
        owner[static_cast<std::size_t>(g)] = static_cast<int>(b);
      }
    }
    for (GateId g = 0; g < static_cast<GateId>(r.f_prime.num_gates()); ++g) {
      if (r.f_prime.gate(g).is_input()) EXPECT_GE(owner[static_cast<std::size_t>(g)], 0) << describe(s);
    }
    const DecompositionCheck k = check_decomposition(f);
    EXPECT_TRUE(k.all()) << describe(s);
    EXPECT_LE(k.T, 5 * k.source.negs - 2);
  }
}

// Independent check of the closed form: maximize min(a, L/(5a-2) - D - 2)
// on a fine grid.
TEST(CombinedAlpha, MatchesGridSearch) {
  for (int leaves : {1, 5, 24, 100, 1000, 50000}) {
    for (int depth : {0, 1, 3, 10}) {
      double best = -1e9, arg = 0;
      for (double a = 0.4 + 1e-5; a < 400; a += 1e-3) {
        const double v = std::min(a, leaves / (5 * a - 2) - depth - 2);
        if (v > best) best = v, arg = a;
      }
      const double alpha = combined_alpha(leaves, depth);
      if (alpha > 0.4) {
        EXPECT_NEAR(alpha, arg, 2e-3) << leaves << " " << depth;
        EXPECT_NEAR(leaves / (5 * alpha - 2) - depth - 2, alpha, 1e-9);
      }
    }
  }
}

TEST(ReadOnce, Examples) {
  const auto x0_and_not_x1 = formula("INPUT x0\nINPUT x1\ng2 = NOT g1\ng3 = AND g0 g2\nOUTPUT g3\n");
  ReadOnceReport r = readonce_leafneg_energy(x0_and_not_x1);
  EXPECT_EQ(r.ec, 1);
  EXPECT_EQ(r.leaves_minus_1, 1);
  EXPECT_TRUE(r.equal);

  const auto wider = formula(
      "INPUT x0\nINPUT x1\ng2 = OR g0 g1\nINPUT x2\ng4 = NOT g3\nINPUT x3\ng6 = OR g4 g5\ng7 = AND g2 g6\nOUTPUT g7\n");
  r = readonce_leafneg_energy(wider);
  EXPECT_EQ(r.ec, 3);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.ec_with_leaf_nots, 4);

  r = readonce_leafneg_energy(formula("INPUT x0\nOUTPUT g0\n"));
  EXPECT_EQ(r.ec, 0);
  EXPECT_TRUE(r.equal);
}

TEST(ReadOnce, Errors) {
  EXPECT_EQ(code_of([] { readonce_leafneg_energy(formula("INPUT x0\nINPUT x0\ng2 = AND g0 g1\nOUTPUT g2\n")); }),
            ErrorCode::NotReadOnce);
  EXPECT_EQ(code_of([] {
              readonce_leafneg_energy(formula("INPUT x0\nINPUT x1\ng2 = AND g0 g1\ng3 = NOT g2\nOUTPUT g3\n"));
            }),
            ErrorCode::NonLeafNegation);
}

TEST(ReadOnce, Generated) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::ReadOnceLeafNeg;
    s.num_vars = 16;
    s.size_budget = static_cast<int>(1 + seed % 15);
    s.neg_density = 0.4;
    EXPECT_TRUE(readonce_leafneg_energy(generate_circuit(s)).equal) << describe(s);
  }
}

TEST(NonSkew, ExactMeanAboveQuarter) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::NonSkew;
    s.num_vars = static_cast<int>(2 + seed % 11);
    s.size_budget = static_cast<int>(1 + seed % 8);
    const NonSkewStats st = nonskew_energy_estimate(generate_circuit(s), 500, seed);
    EXPECT_EQ(st.t, s.size_budget);
    ASSERT_TRUE(st.exact_mean.has_value());
    EXPECT_GE(*st.exact_mean, st.lower_envelope);
  }
}

TEST(NonSkew, SkewedChainHasOneNonSkewGate) {
  // x0 & (x1 & (x2 & (x3 & x4))): only the innermost gate reads two leaves.
  CircuitBuilder b(5);
  GateId acc = b.make_and({b.input(3), b.input(4)});
  for (int v = 2; v >= 0; --v) acc = b.make_and({b.input(v), acc});
  const Circuit f = std::move(b).build(acc, Fanin::two(), Shape::Formula);
  const NonSkewStats st = nonskew_energy_estimate(f, 1000, 3);
  EXPECT_EQ(st.t, 1);
  // Mean energy falls below a quarter of the leaf count.
  EXPECT_LT(*st.exact_mean, 5.0 / 4.0);
  EXPECT_GE(*st.exact_mean, st.lower_envelope);
}

TEST(NonSkew, SeededRunsRepeat) {
  GenSpec s;
  s.seed = 11;
  s.shape = GenShape::NonSkew;
  s.num_vars = 9;
  s.size_budget = 5;
  const Circuit f = generate_circuit(s);
  const NonSkewStats a = nonskew_energy_estimate(f, 3000, 42);
  const NonSkewStats b = nonskew_energy_estimate(f, 3000, 42);
  EXPECT_EQ(a.empirical_mean, b.empirical_mean);
  EXPECT_NE(a.empirical_mean, nonskew_energy_estimate(f, 3000, 43).empirical_mean);
}

// Standardized sampling errors should look like N(0, 1).
TEST(NonSkew, SamplerIsCalibrated) {
  double sum = 0, sum2 = 0;
  int count = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::NonSkew;
    s.num_vars = static_cast<int>(2 + seed % 11);
    s.size_budget = static_cast<int>(1 + seed % 8);
    const NonSkewStats st = nonskew_energy_estimate(generate_circuit(s), 1000, seed);
    if (*st.exact_stddev == 0) continue;
    const double z = (st.empirical_mean - *st.exact_mean) / (*st.exact_stddev / std::sqrt(1000.0));
    sum += z;
    sum2 += z * z;
    ++count;
  }
  const double mean = sum / count;
  EXPECT_NEAR(mean, 0.0, 0.2);
  EXPECT_NEAR(sum2 / count - mean * mean, 1.0, 0.25);
}

TEST(MonotoneFormula, EnergyIsGateCountAtAllOnes) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenSpec s;
    s.seed = seed;
    s.shape = GenShape::Formula;
    s.num_vars = 6;
    s.size_budget = static_cast<int>(1 + seed % 20);
    s.neg_density = 0.0;
    const Circuit f = generate_circuit(s);
    const FormulaStats st = formula_stats(f);
    EXPECT_EQ(st.ec, st.size);
    EXPECT_EQ(energy_at(f, 63), st.ec);
  }
}
