#include "energy/semantics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>

#include "lanes.hpp"

namespace energy {

using detail::kVarMask;
using detail::LaneCounter;

namespace {

void check_cap(int n, int cap, const char* what) {
  if (n > cap) {
    throw Error(ErrorCode::CapExceeded, std::string(what) + ": " + std::to_string(n) +
                                            " variables exceeds cap " + std::to_string(cap));
  }
}

std::uint64_t input_word(VarIndex var, InputIndex base) {
  if (var < 6) return kVarMask[static_cast<std::size_t>(var)];
  return ((base >> var) & 1u) ? ~std::uint64_t{0} : 0;
}

std::uint64_t block_count(int n) { return n < 6 ? 1 : (std::uint64_t{1} << (n - 6)); }

}  // namespace

std::uint64_t valid_lanes(int num_vars) {
  return num_vars >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << num_vars)) - 1;
}

void simulate_block(const Circuit& c, InputIndex base, std::vector<std::uint64_t>& words) {
  words.resize(c.num_gates());
  for (std::size_t id = 0; id < c.num_gates(); ++id) {
    const Gate& g = c.gates()[id];
    std::uint64_t w = 0;
    switch (g.kind) {
      case GateKind::Input: w = input_word(g.payload, base); break;
      case GateKind::Const: w = g.payload ? ~std::uint64_t{0} : 0; break;
      case GateKind::Not: w = ~words[static_cast<std::size_t>(g.children[0])]; break;
      case GateKind::And:
        w = ~std::uint64_t{0};
        for (GateId ch : g.children) w &= words[static_cast<std::size_t>(ch)];
        break;
      case GateKind::Or:
        for (GateId ch : g.children) w |= words[static_cast<std::size_t>(ch)];
        break;
    }
    words[id] = w;
  }
}

EvalTrace evaluate(const Circuit& c, const std::vector<bool>& input) {
  if (static_cast<int>(input.size()) != c.num_vars()) {
    throw Error(ErrorCode::LengthMismatch, "input has " + std::to_string(input.size()) +
                                               " bits, circuit has " + std::to_string(c.num_vars()) +
                                               " variables");
  }
  EvalTrace t;
  t.input = input;
  t.gate_values.resize(c.num_gates());
  for (std::size_t id = 0; id < c.num_gates(); ++id) {
    const Gate& g = c.gates()[id];
    bool v = false;
    switch (g.kind) {
      case GateKind::Input: v = input[static_cast<std::size_t>(g.payload)]; break;
      case GateKind::Const: v = g.payload != 0; break;
      case GateKind::Not: v = !t.gate_values[static_cast<std::size_t>(g.children[0])]; break;
      case GateKind::And:
        v = std::all_of(g.children.begin(), g.children.end(),
                        [&](GateId ch) { return t.gate_values[static_cast<std::size_t>(ch)]; });
        break;
      case GateKind::Or:
        v = std::any_of(g.children.begin(), g.children.end(),
                        [&](GateId ch) { return t.gate_values[static_cast<std::size_t>(ch)]; });
        break;
    }
    t.gate_values[id] = v;
    if (v && g.is_logic()) ++t.energy;
  }
  t.output = t.gate_values[static_cast<std::size_t>(c.output())];
  return t;
}

EvalTrace evaluate(const Circuit& c, InputIndex input) {
  return evaluate(c, bits_of(input, c.num_vars()));
}

int energy_at(const Circuit& c, InputIndex input) { return evaluate(c, input).energy; }

EnergySweep energy_sweep(const Circuit& c, int cap) {
  const int n = c.num_vars();
  check_cap(n, cap, "energy sweep");
  std::vector<std::size_t> logic;
  for (std::size_t id = 0; id < c.num_gates(); ++id) {
    if (c.gates()[id].is_logic()) logic.push_back(id);
  }
  const std::uint64_t lanes = valid_lanes(n);
  const int lane_count = std::popcount(lanes);

  EnergySweep out;
  out.max = -1;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<std::uint64_t> words;
  LaneCounter counter;
  for (std::uint64_t blk = 0; blk < block_count(n); ++blk) {
    const InputIndex base = blk << 6;
    simulate_block(c, base, words);
    counter.clear();
    for (std::size_t id : logic) counter.add(words[id] & lanes);
    for (int j = 0; j < lane_count; ++j) {
      const int e = counter.lane(j);
      sum += e;
      sum_sq += static_cast<double>(e) * e;
      if (e > out.max) {
        out.max = e;
        out.argmax = base + static_cast<InputIndex>(j);
      }
    }
  }
  const double total = std::ldexp(1.0, n);
  out.mean = sum / total;
  out.variance = std::max(0.0, sum_sq / total - out.mean * out.mean);
  return out;
}

EnergyResult energy_exhaustive(const Circuit& c, int cap) {
  const auto s = energy_sweep(c, cap);
  return {s.max, s.argmax};
}

std::size_t FiringPattern::ones() const {
  std::size_t k = 0;
  for (auto w : words) k += static_cast<std::size_t>(std::popcount(w));
  return k;
}

std::set<FiringPattern> firing_patterns(const Circuit& c, int cap) {
  const int n = c.num_vars();
  check_cap(n, cap, "firing patterns");
  std::vector<std::size_t> logic;
  for (std::size_t id = 0; id < c.num_gates(); ++id) {
    if (c.gates()[id].is_logic()) logic.push_back(id);
  }
  const int lane_count = std::popcount(valid_lanes(n));
  std::set<FiringPattern> out;
  std::vector<std::uint64_t> words;
  for (std::uint64_t blk = 0; blk < block_count(n); ++blk) {
    simulate_block(c, blk << 6, words);
    for (int j = 0; j < lane_count; ++j) {
      FiringPattern p;
      p.length = logic.size();
      p.words.assign((logic.size() + 63) / 64, 0);
      for (std::size_t k = 0; k < logic.size(); ++k) {
        if ((words[logic[k]] >> j) & 1u) p.words[k >> 6] |= std::uint64_t{1} << (k & 63);
      }
      out.insert(std::move(p));
    }
  }
  return out;
}

TruthTable truth_table(const Circuit& c, int cap) {
  const int n = c.num_vars();
  check_cap(n, cap, "truth table");
  TruthTable t(n);
  std::vector<std::uint64_t> words;
  for (std::uint64_t blk = 0; blk < block_count(n); ++blk) {
    simulate_block(c, blk << 6, words);
    t.words()[blk] = words[static_cast<std::size_t>(c.output())];
  }
  t.normalize();
  return t;
}

bool equivalent(const TruthTable& a, const TruthTable& b) {
  const int n = std::max(a.num_vars(), b.num_vars());
  return a.extended(n) == b.extended(n);
}

bool equivalent(const Circuit& a, const Circuit& b, int cap) {
  return equivalent(truth_table(a, cap), truth_table(b, cap));
}

TruthTable flip_variable(const TruthTable& f, VarIndex var) {
  const int n = f.num_vars();
  if (var < 0 || var >= n) throw Error(ErrorCode::VarOutOfRange, "x" + std::to_string(var));
  TruthTable g(n);
  const auto& src = f.words();
  auto& dst = g.words();
  if (var < 6) {
    const unsigned shift = 1u << var;
    const std::uint64_t hi = kVarMask[static_cast<std::size_t>(var)];
    for (std::size_t w = 0; w < src.size(); ++w) {
      dst[w] = ((src[w] & hi) >> shift) | ((src[w] & ~hi) << shift);
    }
  } else {
    const std::size_t stride = std::size_t{1} << (var - 6);
    for (std::size_t w = 0; w < src.size(); ++w) dst[w] = src[w ^ stride];
  }
  g.normalize();
  return g;
}

namespace {

/// Lanes of word `w` where x_var = 1.
std::uint64_t ones_of_var(VarIndex var, std::size_t w) {
  if (var < 6) return kVarMask[static_cast<std::size_t>(var)];
  return ((w >> (var - 6)) & 1u) ? ~std::uint64_t{0} : 0;
}

}  // namespace

std::vector<VarIndex> psens_at(const TruthTable& f, InputIndex a) {
  std::vector<VarIndex> out;
  const bool fa = f.get(a);
  for (VarIndex i = 0; i < f.num_vars(); ++i) {
    if (input_bit(a, i) && f.get(a ^ (InputIndex{1} << i)) != fa) out.push_back(i);
  }
  return out;
}

PsensReport psens(const TruthTable& f, int cap) {
  const int n = f.num_vars();
  check_cap(n, cap, "psens");
  std::vector<TruthTable> flipped;
  flipped.reserve(static_cast<std::size_t>(n));
  for (VarIndex i = 0; i < n; ++i) flipped.push_back(flip_variable(f, i));

  const std::uint64_t lanes = valid_lanes(n);
  const int lane_count = std::popcount(lanes);
  PsensReport best;
  best.value = -1;
  LaneCounter counter;
  for (std::size_t w = 0; w < f.words().size(); ++w) {
    counter.clear();
    for (VarIndex i = 0; i < n; ++i) {
      const std::uint64_t diff = f.words()[w] ^ flipped[static_cast<std::size_t>(i)].words()[w];
      counter.add(diff & ones_of_var(i, w) & lanes);
    }
    for (int j = 0; j < lane_count; ++j) {
      const int v = counter.lane(j);
      if (v > best.value) {
        best.value = v;
        best.witness_input = (static_cast<InputIndex>(w) << 6) | static_cast<InputIndex>(j);
      }
    }
  }
  best.witness_indices = psens_at(f, best.witness_input);
  return best;
}

bool is_monotone(const TruthTable& f, int cap) {
  const int n = f.num_vars();
  check_cap(n, cap, "monotonicity");
  const std::uint64_t lanes = valid_lanes(n);
  for (VarIndex i = 0; i < n; ++i) {
    const TruthTable up = flip_variable(f, i);
    for (std::size_t w = 0; w < f.words().size(); ++w) {
      // Lanes with x_i = 0: f(a) = 1 but f(a + e_i) = 0 is a violation.
      const std::uint64_t low = ~ones_of_var(i, w) & lanes;
      if (f.words()[w] & ~up.words()[w] & low) return false;
    }
  }
  return true;
}

DtResult dt_depth(const TruthTable& f, int cap) {
  const int n = f.num_vars();
  check_cap(n, cap, "decision tree depth");
  std::uint64_t states = 1;
  for (int k = 0; k < n; ++k) states *= 3;

  struct Entry {
    std::int8_t depth = -1;
    std::int8_t var = -1;    // chosen query, -1 for a leaf
    std::int8_t value = 0;   // leaf value
  };
  std::vector<Entry> memo(states);
  std::vector<std::uint64_t> pow3(static_cast<std::size_t>(n) + 1, 1);
  for (int k = 1; k <= n; ++k) pow3[static_cast<std::size_t>(k)] = pow3[static_cast<std::size_t>(k) - 1] * 3;

  // State digit k: 0 = x_k fixed to 0, 1 = fixed to 1, 2 = free.
  std::function<int(std::uint64_t, InputIndex, InputIndex)> solve =
      [&](std::uint64_t code, InputIndex fixed_mask, InputIndex fixed_vals) -> int {
    Entry& e = memo[code];
    if (e.depth >= 0) return e.depth;
    const InputIndex free_mask = ~fixed_mask & ((InputIndex{1} << n) - 1);
    // Enumerate completions of the free variables.
    bool first = f.get(fixed_vals);
    bool constant = true;
    for (InputIndex sub = free_mask;; sub = (sub - 1) & free_mask) {
      if (f.get(fixed_vals | sub) != first) {
        constant = false;
        break;
      }
      if (sub == 0) break;
    }
    if (constant) {
      e = Entry{0, -1, static_cast<std::int8_t>(first)};
      return 0;
    }
    int best = std::numeric_limits<int>::max();
    int best_var = -1;
    for (VarIndex i = 0; i < n; ++i) {
      const InputIndex bit = InputIndex{1} << i;
      if (fixed_mask & bit) continue;
      const std::uint64_t base = code - 2 * pow3[static_cast<std::size_t>(i)];
      const int d0 = solve(base, fixed_mask | bit, fixed_vals);
      const int d1 = solve(base + pow3[static_cast<std::size_t>(i)], fixed_mask | bit, fixed_vals | bit);
      const int d = 1 + std::max(d0, d1);
      if (d < best) {
        best = d;
        best_var = i;
      }
    }
    // `e` may have been invalidated only if memo reallocated; it is sized up front.
    e = Entry{static_cast<std::int8_t>(best), static_cast<std::int8_t>(best_var), 0};
    return best;
  };

  const std::uint64_t root = states - 1;  // all digits 2
  const int depth = solve(root, 0, 0);

  std::function<DecisionTree(std::uint64_t, InputIndex, InputIndex)> build =
      [&](std::uint64_t code, InputIndex mask, InputIndex vals) -> DecisionTree {
    const Entry& e = memo[code];
    if (e.var < 0) return DecisionTree::leaf(e.value != 0);
    const VarIndex i = e.var;
    const InputIndex bit = InputIndex{1} << i;
    const std::uint64_t base = code - 2 * pow3[static_cast<std::size_t>(i)];
    return DecisionTree::branch(i, build(base, mask | bit, vals),
                                build(base + pow3[static_cast<std::size_t>(i)], mask | bit, vals | bit));
  };
  return DtResult{depth, build(root, 0, 0)};
}

}  // namespace energy
