#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <vector>

#include "energy/circuit.hpp"

namespace energy {

inline constexpr int kDefaultSweepCap = 24;
inline constexpr int kDefaultDtCap = 5;

struct EvalTrace {
  std::vector<bool> input;
  std::vector<bool> gate_values;  // canonical (netlist) order, every gate
  int energy = 0;                 // NOT/AND/OR gates with value 1
  bool output = false;
};

EvalTrace evaluate(const Circuit& c, const std::vector<bool>& input);
EvalTrace evaluate(const Circuit& c, InputIndex input);
int energy_at(const Circuit& c, InputIndex input);

/// 64-input block simulation: word[g] bit j is the value of gate g on input
/// base + j. `base` must be a multiple of 64 (or 0 when n < 6).
void simulate_block(const Circuit& c, InputIndex base, std::vector<std::uint64_t>& words);

/// Lanes of a block that correspond to real inputs.
std::uint64_t valid_lanes(int num_vars);

struct EnergyResult {
  int ec = 0;
  InputIndex argmax = 0;  // smallest input index attaining ec
};

EnergyResult energy_exhaustive(const Circuit& c, int cap = kDefaultSweepCap);

/// Max, argmax, and the first two moments of EC(C, a) over all inputs.
struct EnergySweep {
  int max = 0;
  InputIndex argmax = 0;
  double mean = 0.0;
  double variance = 0.0;  // population variance over inputs
};

EnergySweep energy_sweep(const Circuit& c, int cap = kDefaultSweepCap);

/// Values of the NOT/AND/OR gates in canonical order; bit k of the packed
/// words is the k-th logic gate.
struct FiringPattern {
  std::vector<std::uint64_t> words;
  std::size_t length = 0;

  bool bit(std::size_t k) const { return (words[k >> 6] >> (k & 63)) & 1u; }
  std::size_t ones() const;
  auto operator<=>(const FiringPattern&) const = default;
};

std::set<FiringPattern> firing_patterns(const Circuit& c, int cap = kDefaultSweepCap);

TruthTable truth_table(const Circuit& c, int cap = kDefaultSweepCap);

/// Tables compared over the larger variable count.
bool equivalent(const TruthTable& a, const TruthTable& b);
bool equivalent(const Circuit& a, const Circuit& b, int cap = kDefaultSweepCap);

/// f(a xor e_var) for every a.
TruthTable flip_variable(const TruthTable& f, VarIndex var);

struct PsensReport {
  int value = 0;
  InputIndex witness_input = 0;
  std::vector<VarIndex> witness_indices;
};

/// Indices i with a_i = 1 and f(a xor e_i) != f(a).
std::vector<VarIndex> psens_at(const TruthTable& f, InputIndex a);
PsensReport psens(const TruthTable& f, int cap = kDefaultSweepCap);

struct DtResult {
  int depth = 0;
  DecisionTree tree;
};

/// Exact minimum decision-tree depth with one optimal tree. Ties pick the
/// smallest variable index.
DtResult dt_depth(const TruthTable& f, int cap = kDefaultDtCap);

bool is_monotone(const TruthTable& f, int cap = kDefaultSweepCap);

}  // namespace energy
