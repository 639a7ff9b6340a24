#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "energy/circuit.hpp"
#include "energy/semantics.hpp"

namespace energy {

struct FormulaStats {
  int leaves = 0;  // INPUT occurrences
  int depth = 0;
  int negs = 0;
  int size = 0;
  int ec = 0;
};

FormulaStats formula_stats(const Circuit& f, int cap = kDefaultSweepCap);

/// Replace the subtree at `g` by a fresh variable z (index n), fix z := b
/// without constant folding, and compare its energy with EC(F) + Depth(F).
struct RestrictionCheck {
  GateId gate = -1;
  bool bit = false;
  int ec_restricted = 0;
  int bound = 0;
  bool holds = true;
};

RestrictionCheck restriction_energy_check(const Circuit& f, GateId g, bool b, int cap = kDefaultSweepCap);

/// F' = H(G_1, ..., G_T): a read-once skeleton over NOT-free blocks.
struct DecompositionResult {
  Circuit f_prime;
  std::vector<std::vector<GateId>> blocks;  // gate ids of F' per block, ascending
  std::vector<GateId> skeleton_gates;
  int T = 0;
};

/// Recursive split at the smallest subformula holding every NOT. A NOT-free
/// formula is returned unchanged as a single block.
DecompositionResult decompose_gk(const Circuit& f);

struct DecompositionCheck {
  FormulaStats source;
  int leaves_prime = 0;
  int ec_prime = 0;
  int T = 0;
  bool equivalent = false;
  bool leaves_ok = false;       // L(F') <= 2 L(F)
  bool blocks_ok = false;       // T <= 5 negs - 2
  bool blocks_monotone = false;
  bool leaves_in_blocks = false;
  bool upper_ok = false;        // EC(F') <= (5 negs - 2)(EC(F) + Depth(F) + 1)
  bool lower_ok = false;        // EC(F') >= L(F) - (5 negs - 2)
  bool combined_ok = false;     // EC(F) >= L(F)/(5 negs - 2) - Depth(F) - 2
  bool negs_ok = false;         // EC(F) >= negs(F)
  bool all() const {
    return equivalent && leaves_ok && blocks_ok && blocks_monotone && leaves_in_blocks && upper_ok &&
           lower_ok && combined_ok && negs_ok;
  }
};

/// Runs decompose_gk and evaluates every inequality; needs negs(F) >= 1.
DecompositionCheck check_decomposition(const Circuit& f, int cap = kDefaultSweepCap);

/// Largest alpha with L/(5 alpha - 2) - D - 2 >= alpha.
double combined_alpha(int leaves, int depth);

struct NonSkewStats {
  int t = 0;  // AND/OR gates whose children are all INPUT gates
  std::size_t sample_count = 0;
  double empirical_mean = 0.0;
  double lower_envelope = 0.0;  // t / 4
  std::optional<double> exact_mean;
  std::optional<double> exact_stddev;

  /// |empirical - exact| <= k standard errors (exact sigma).
  bool within(double k) const;
};

NonSkewStats nonskew_energy_estimate(const Circuit& f, std::size_t samples, std::uint64_t seed,
                                     int exact_cap = 12);

struct ReadOnceReport {
  int ec = 0;                 // AND/OR gates only: leaf NOTs read as literals
  int leaves_minus_1 = 0;
  bool equal = false;
  int ec_with_leaf_nots = 0;  // plain EC, NOT gates counted
};

ReadOnceReport readonce_leafneg_energy(const Circuit& f, int cap = kDefaultSweepCap);

}  // namespace energy
