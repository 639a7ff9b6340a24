#include "energy/formula_energy.hpp"

#include <algorithm>
#include <cmath>

#include "energy/rng.hpp"
#include "energy/transform.hpp"
#include "lanes.hpp"

namespace energy {

FormulaStats formula_stats(const Circuit& f, int cap) {
  const StructuralStats s = structural_stats(f);
  FormulaStats r;
  for (const Gate& g : f.gates()) {
    if (g.is_input()) ++r.leaves;
  }
  r.depth = s.depth;
  r.negs = s.negs;
  r.size = s.size;
  r.ec = energy_exhaustive(f, cap).ec;
  return r;
}

RestrictionCheck restriction_energy_check(const Circuit& f, GateId g, bool b, int cap) {
  if (!f.is_formula()) throw Error(ErrorCode::NotAFormula, "restriction check needs a formula");
  if (g < 0 || g >= static_cast<GateId>(f.num_gates())) {
    throw Error(ErrorCode::UnknownGateRef, "gate " + std::to_string(g));
  }
  if (g == f.output()) throw Error(ErrorCode::RootNotAllowed, "gate " + std::to_string(g) + " is the root");
  const int n = f.num_vars();
  const Circuit d = substitute_leaf(f, g, variable_formula(n, n + 1));
  const Circuit fixed = hardwire(d, {{n, b}});
  const FormulaStats s = formula_stats(f, cap);
  RestrictionCheck r;
  r.gate = g;
  r.bit = b;
  r.ec_restricted = energy_exhaustive(fixed, cap).ec;
  r.bound = s.ec + s.depth;
  r.holds = r.ec_restricted <= r.bound;
  return r;
}

namespace {

/// Pool-allocated expression tree; `block` tags the NOT-free block a node
/// was copied into (-1 for skeleton nodes).
struct Expr {
  struct Node {
    GateKind kind;
    std::int32_t payload = 0;
    std::vector<int> kids;
    int block = -1;
  };
  std::vector<Node> pool;
  std::vector<int> negs;  // per node of the source tree
  int blocks = 0;

  int add(Node nd) {
    pool.push_back(std::move(nd));
    return static_cast<int>(pool.size() - 1);
  }

  int from_circuit(const Circuit& c, GateId id) {
    const Gate& g = c.gate(id);
    Node nd{g.kind, g.payload, {}, -1};
    for (GateId ch : g.children) nd.kids.push_back(from_circuit(c, ch));
    return add(std::move(nd));
  }

  int count_negs(int v) {
    int k = pool[static_cast<std::size_t>(v)].kind == GateKind::Not ? 1 : 0;
    for (int ch : pool[static_cast<std::size_t>(v)].kids) k += count_negs(ch);
    if (negs.size() <= static_cast<std::size_t>(v)) negs.resize(static_cast<std::size_t>(v) + 1, 0);
    negs[static_cast<std::size_t>(v)] = k;
    return k;
  }
  int negs_of(int v) const { return negs[static_cast<std::size_t>(v)]; }

  /// Copy of the subtree at v tagged with `block`; the node `cut` (if inside)
  /// becomes a constant.
  int copy(int v, int block, int cut = -1, bool cut_value = false) {
    if (v == cut) return add(Node{GateKind::Const, cut_value ? 1 : 0, {}, block});
    Node nd = pool[static_cast<std::size_t>(v)];
    nd.block = block;
    for (int& ch : nd.kids) ch = copy(ch, block, cut, cut_value);
    return add(std::move(nd));
  }

  int lca_of_nots(int root) const {
    const int total = negs_of(root);
    int v = root;
    for (;;) {
      int next = -1;
      for (int ch : pool[static_cast<std::size_t>(v)].kids) {
        if (negs_of(ch) == total) next = ch;
      }
      if (next < 0) return v;
      v = next;
    }
  }

  struct Out {
    int root;
    int T;
  };

  Out gk(int v) {
    if (negs_of(v) == 0) return {copy(v, blocks++), 1};
    const int f1 = lca_of_nots(v);
    if (f1 == v) return case1(v);
    const int lo = copy(v, blocks++, f1, false);
    const int hi = copy(v, blocks++, f1, true);
    const Out inner = case1(f1);
    const int conj = add(Node{GateKind::And, 0, {hi, inner.root}, -1});
    const int top = add(Node{GateKind::Or, 0, {lo, conj}, -1});
    return {top, inner.T + 2};
  }

  /// v is the smallest subtree holding all of its own NOT gates.
  Out case1(int v) {
    const Node& nd = pool[static_cast<std::size_t>(v)];
    if (nd.kind == GateKind::Not) {
      const int child = nd.kids[0];
      if (negs_of(child) == 0) {
        const int blk = copy(child, blocks++);
        return {add(Node{GateKind::Not, 0, {blk}, -1}), 1};
      }
      const Out in = gk(child);
      return {add(Node{GateKind::Not, 0, {in.root}, -1}), in.T};
    }
    Node top{nd.kind, 0, {}, -1};
    int T = 0;
    const std::vector<int> kids = nd.kids;
    for (int ch : kids) {
      if (negs_of(ch) == 0) {
        throw Error(ErrorCode::NotAFormula,
                    "gate with a NOT-free child is the smallest subformula holding all NOT gates");
      }
      const Out in = gk(ch);
      top.kids.push_back(in.root);
      T += in.T;
    }
    return {add(std::move(top)), T};
  }

  GateId emit(int v, std::vector<Gate>& gates, std::vector<int>& tag) const {
    const Node& nd = pool[static_cast<std::size_t>(v)];
    Gate g{nd.kind, nd.payload, {}};
    for (int ch : nd.kids) g.children.push_back(emit(ch, gates, tag));
    gates.push_back(std::move(g));
    tag.push_back(nd.block);
    return static_cast<GateId>(gates.size() - 1);
  }
};

}  // namespace

DecompositionResult decompose_gk(const Circuit& f) {
  if (!f.is_formula()) throw Error(ErrorCode::NotAFormula, "decomposition needs a formula");
  Expr e;
  const int root = e.from_circuit(f, f.output());
  e.count_negs(root);
  const Expr::Out out = e.gk(root);

  std::vector<Gate> gates;
  std::vector<int> tag;
  const GateId top = e.emit(out.root, gates, tag);
  DecompositionResult r;
  r.T = out.T;
  r.blocks.resize(static_cast<std::size_t>(e.blocks));
  for (std::size_t id = 0; id < tag.size(); ++id) {
    if (tag[id] < 0) r.skeleton_gates.push_back(static_cast<GateId>(id));
    else r.blocks[static_cast<std::size_t>(tag[id])].push_back(static_cast<GateId>(id));
  }
  const Fanin fanin = infer_fanin(gates);
  r.f_prime = Circuit(f.num_vars(), std::move(gates), top, fanin, Shape::Formula);
  return r;
}

DecompositionCheck check_decomposition(const Circuit& f, int cap) {
  DecompositionCheck k;
  k.source = formula_stats(f, cap);
  const int negs = k.source.negs;
  if (negs < 1) throw Error(ErrorCode::NotMonotone, "decomposition bounds need at least one NOT gate");
  const DecompositionResult r = decompose_gk(f);
  const FormulaStats fp = formula_stats(r.f_prime, cap);
  const int budget = 5 * negs - 2;
  const int L = k.source.leaves;
  k.leaves_prime = fp.leaves;
  k.ec_prime = fp.ec;
  k.T = r.T;
  k.equivalent = equivalent(truth_table(f, cap), truth_table(r.f_prime, cap));
  k.leaves_ok = fp.leaves <= 2 * L;
  k.blocks_ok = r.T <= budget && static_cast<int>(r.blocks.size()) == r.T;
  k.blocks_monotone = true;
  std::vector<char> in_block(r.f_prime.num_gates(), 0);
  for (const auto& blk : r.blocks) {
    for (GateId id : blk) {
      in_block[static_cast<std::size_t>(id)] = 1;
      if (r.f_prime.gate(id).kind == GateKind::Not) k.blocks_monotone = false;
    }
  }
  k.leaves_in_blocks = true;
  for (std::size_t id = 0; id < r.f_prime.num_gates(); ++id) {
    if (r.f_prime.gates()[id].is_input() && !in_block[id]) k.leaves_in_blocks = false;
  }
  k.upper_ok = fp.ec <= budget * (k.source.ec + k.source.depth + 1);
  k.lower_ok = fp.ec >= L - budget;
  // EC >= L/budget - Depth - 2, kept in integers.
  k.combined_ok = static_cast<long long>(k.source.ec + k.source.depth + 2) * budget >= L;
  k.negs_ok = k.source.ec >= negs;
  return k;
}

double combined_alpha(int leaves, int depth) {
  const double d = depth;
  return (std::sqrt((5 * d + 12) * (5 * d + 12) + 20.0 * leaves) - (5 * d + 8)) / 10.0;
}

bool NonSkewStats::within(double k) const {
  if (!exact_mean || !exact_stddev) return false;
  const double se = *exact_stddev / std::sqrt(static_cast<double>(sample_count));
  return std::abs(empirical_mean - *exact_mean) <= k * se;
}

NonSkewStats nonskew_energy_estimate(const Circuit& f, std::size_t samples, std::uint64_t seed, int exact_cap) {
  if (samples == 0) throw Error(ErrorCode::BudgetInfeasible, "at least one sample is required");
  NonSkewStats s;
  for (const Gate& g : f.gates()) {
    if (g.kind != GateKind::And && g.kind != GateKind::Or) continue;
    if (std::all_of(g.children.begin(), g.children.end(), [&](GateId ch) { return f.gate(ch).is_input(); })) ++s.t;
  }
  s.lower_envelope = s.t / 4.0;
  const int n = f.num_vars();
  const InputIndex mask = n >= 64 ? ~InputIndex{0} : (InputIndex{1} << n) - 1;
  Rng rng(seed, 0x6e6f6e736b6577ull);
  double sum = 0.0;
  for (std::size_t k = 0; k < samples; ++k) sum += energy_at(f, rng.bits() & mask);
  s.sample_count = samples;
  s.empirical_mean = sum / static_cast<double>(samples);
  if (n <= exact_cap) {
    const EnergySweep sw = energy_sweep(f, exact_cap);
    s.exact_mean = sw.mean;
    s.exact_stddev = std::sqrt(sw.variance);
  }
  return s;
}

ReadOnceReport readonce_leafneg_energy(const Circuit& f, int cap) {
  if (!f.is_formula()) throw Error(ErrorCode::NotAFormula, "read-once check needs a formula");
  const int n = f.num_vars();
  std::vector<int> uses(static_cast<std::size_t>(n), 0);
  int leaves = 0;
  for (const Gate& g : f.gates()) {
    if (g.is_input()) {
      ++leaves;
      if (++uses[static_cast<std::size_t>(g.payload)] > 1) {
        throw Error(ErrorCode::NotReadOnce, "x" + std::to_string(g.payload) + " labels two leaves");
      }
    }
    if (g.kind == GateKind::Not && !f.gate(g.children[0]).is_input()) {
      throw Error(ErrorCode::NonLeafNegation, "NOT above a non-input gate");
    }
  }
  if (n > cap) throw Error(ErrorCode::CapExceeded, std::to_string(n) + " variables");

  std::vector<std::size_t> counted;
  for (std::size_t id = 0; id < f.num_gates(); ++id) {
    const GateKind k = f.gates()[id].kind;
    if (k == GateKind::And || k == GateKind::Or) counted.push_back(id);
  }
  const std::uint64_t lanes = valid_lanes(n);
  const int lane_count = n >= 6 ? 64 : (1 << n);
  const std::uint64_t blocks = n < 6 ? 1 : (std::uint64_t{1} << (n - 6));
  std::vector<std::uint64_t> words;
  detail::LaneCounter counter;
  ReadOnceReport r;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    simulate_block(f, b << 6, words);
    counter.clear();
    for (std::size_t id : counted) counter.add(words[id] & lanes);
    for (int j = 0; j < lane_count; ++j) r.ec = std::max(r.ec, counter.lane(j));
  }
  r.leaves_minus_1 = leaves - 1;
  r.equal = r.ec == r.leaves_minus_1;
  r.ec_with_leaf_nots = energy_exhaustive(f, cap).ec;
  return r;
}

}  // namespace energy
