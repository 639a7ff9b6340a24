#include "energy/corpus.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <regex>
#include <sstream>

#include "energy/rng.hpp"
#include "energy/synthesize.hpp"

namespace energy {

const char* to_string(GenShape s) {
  switch (s) {
    case GenShape::Circuit: return "circuit";
    case GenShape::Formula: return "formula";
    case GenShape::ReadOnceLeafNeg: return "readonce";
    case GenShape::Monotone: return "monotone";
    case GenShape::DTree: return "dtree";
    case GenShape::NonSkew: return "nonskew";
  }
  return "?";
}

GenShape parse_shape(std::string_view name) {
  for (GenShape s : {GenShape::Circuit, GenShape::Formula, GenShape::ReadOnceLeafNeg, GenShape::Monotone,
                     GenShape::DTree, GenShape::NonSkew}) {
    if (name == to_string(s)) return s;
  }
  throw Error(ErrorCode::ParseError, "unknown shape '" + std::string(name) + "'");
}

namespace {

void infeasible(const std::string& why) { throw Error(ErrorCode::BudgetInfeasible, why); }

int pick_arity(Rng& rng, Fanin fanin) {
  switch (fanin.mode) {
    case FaninMode::Fanin2: return 2;
    case FaninMode::Bounded: return rng.range(2, std::max(2, fanin.bound));
    case FaninMode::Unbounded: return rng.range(2, 4);
  }
  return 2;
}

/// Layered random DAG: every var gets an INPUT gate, then each new gate draws
/// its children uniformly from everything before it. A gate is inverted at
/// most once and NOT never feeds NOT.
Circuit random_dag(const GenSpec& spec, Rng& rng) {
  const int n = spec.num_vars;
  std::vector<Gate> gates;
  for (VarIndex v = 0; v < n; ++v) gates.push_back(Gate::input(v));
  std::vector<char> inverted(static_cast<std::size_t>(n), 0);
  const bool allow_not = spec.shape != GenShape::Monotone;
  for (int k = 0; k < spec.size_budget; ++k) {
    if (allow_not && rng.chance(spec.neg_density)) {
      std::vector<GateId> candidates;
      for (std::size_t id = 0; id < gates.size(); ++id) {
        if (!inverted[id] && gates[id].kind != GateKind::Not) candidates.push_back(static_cast<GateId>(id));
      }
      if (!candidates.empty()) {
        const GateId ch = candidates[rng.below(candidates.size())];
        inverted[static_cast<std::size_t>(ch)] = 1;
        gates.push_back(Gate::not_of(ch));
        inverted.push_back(0);
        continue;
      }
    }
    const int avail = static_cast<int>(gates.size());
    const int arity = pick_arity(rng, spec.fanin);
    std::vector<GateId> kids;
    if (avail >= arity) {
      // Distinct children via a partial shuffle of the candidate ids.
      std::vector<GateId> pool(static_cast<std::size_t>(avail));
      std::iota(pool.begin(), pool.end(), 0);
      for (int j = 0; j < arity; ++j) {
        const auto pick = static_cast<std::size_t>(j) + rng.below(static_cast<std::uint64_t>(avail - j));
        std::swap(pool[static_cast<std::size_t>(j)], pool[pick]);
        kids.push_back(pool[static_cast<std::size_t>(j)]);
      }
    } else {
      for (int j = 0; j < arity; ++j) kids.push_back(static_cast<GateId>(rng.below(static_cast<std::uint64_t>(avail))));
    }
    gates.push_back(rng.chance(0.5) ? Gate::and_of(std::move(kids)) : Gate::or_of(std::move(kids)));
    inverted.push_back(0);
  }
  const auto out = static_cast<GateId>(gates.size() - 1);
  return Circuit(n, std::move(gates), out, spec.fanin);
}

/// Expression tree assembled top-down and emitted in post-order.
struct TreeBuilder {
  struct Node {
    GateKind kind;
    std::int32_t payload = 0;
    std::vector<int> kids;
  };
  std::vector<Node> nodes;
  int negs = 0;

  int add(Node nd) {
    nodes.push_back(std::move(nd));
    return static_cast<int>(nodes.size() - 1);
  }

  /// Random binary shape with `internal` AND/OR nodes; `leaf` builds leaves.
  int shape(Rng& rng, int internal, const std::function<int()>& leaf) {
    if (internal == 0) return leaf();
    const int left = static_cast<int>(rng.below(static_cast<std::uint64_t>(internal)));
    const int l = shape(rng, left, leaf);
    const int r = shape(rng, internal - 1 - left, leaf);
    return add(Node{rng.chance(0.5) ? GateKind::And : GateKind::Or, 0, {l, r}});
  }

  /// Wraps nodes in NOT gates; a NOT never lands on or under another NOT.
  int negate(Rng& rng, int root, double density, int min_negs, int max_negs,
             const std::function<bool(const Node&)>& eligible) {
    const auto room = [&] { return max_negs < 0 || negs < max_negs; };
    std::vector<int> parent(nodes.size(), -1);
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      for (int ch : nodes[v].kids) parent[static_cast<std::size_t>(ch)] = static_cast<int>(v);
    }
    std::vector<int> order;
    std::function<void(int)> walk = [&](int v) {
      for (int ch : nodes[static_cast<std::size_t>(v)].kids) walk(ch);
      order.push_back(v);
    };
    walk(root);
    const auto wrap = [&](int v) {
      const int w = add(Node{GateKind::Not, 0, {v}});
      const int p = parent[static_cast<std::size_t>(v)];
      parent.push_back(p);
      parent[static_cast<std::size_t>(v)] = w;
      if (p < 0) {
        root = w;
      } else {
        for (int& ch : nodes[static_cast<std::size_t>(p)].kids) {
          if (ch == v) ch = w;
        }
      }
      ++negs;
    };
    const auto can_wrap = [&](int v) {
      const int p = parent[static_cast<std::size_t>(v)];
      return eligible(nodes[static_cast<std::size_t>(v)]) && nodes[static_cast<std::size_t>(v)].kind != GateKind::Not &&
             (p < 0 || nodes[static_cast<std::size_t>(p)].kind != GateKind::Not);
    };
    for (int v : order) {
      if (room() && can_wrap(v) && rng.chance(density)) wrap(v);
    }
    while (negs < min_negs && room()) {
      std::vector<int> cand;
      for (int v : order) {
        if (can_wrap(v)) cand.push_back(v);
      }
      if (cand.empty()) break;
      wrap(cand[rng.below(cand.size())]);
    }
    return root;
  }

  GateId emit(int v, std::vector<Gate>& gates) const {
    const Node& nd = nodes[static_cast<std::size_t>(v)];
    Gate g{nd.kind, nd.payload, {}};
    for (int ch : nd.kids) g.children.push_back(emit(ch, gates));
    gates.push_back(std::move(g));
    return static_cast<GateId>(gates.size() - 1);
  }

  Circuit build(int n, int root) const {
    std::vector<Gate> gates;
    const GateId out = emit(root, gates);
    const Fanin fanin = infer_fanin(gates);
    return Circuit(n, std::move(gates), out, fanin, Shape::Formula);
  }
};

Circuit random_formula(const GenSpec& spec, Rng& rng) {
  TreeBuilder t;
  const int n = spec.num_vars;
  const int root = t.shape(rng, spec.size_budget, [&] {
    return t.add({GateKind::Input, static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(n))), {}});
  });
  const int top = t.negate(rng, root, spec.neg_density, spec.min_negs, spec.max_negs,
                           [](const TreeBuilder::Node&) { return true; });
  if (t.negs < spec.min_negs) infeasible("cannot place " + std::to_string(spec.min_negs) + " NOT gates");
  return t.build(n, top);
}

Circuit random_readonce(const GenSpec& spec, Rng& rng) {
  const int n = spec.num_vars;
  const int leaves = spec.size_budget + 1;
  if (leaves > n) {
    infeasible("read-once formula with " + std::to_string(leaves) + " leaves over " + std::to_string(n) + " variables");
  }
  std::vector<VarIndex> vars(static_cast<std::size_t>(n));
  std::iota(vars.begin(), vars.end(), 0);
  for (std::size_t k = vars.size(); k > 1; --k) std::swap(vars[k - 1], vars[rng.below(k)]);
  TreeBuilder t;
  std::size_t next = 0;
  const int root = t.shape(rng, spec.size_budget, [&] { return t.add({GateKind::Input, vars[next++], {}}); });
  const int top = t.negate(rng, root, spec.neg_density, spec.min_negs, spec.max_negs,
                           [](const TreeBuilder::Node& nd) { return nd.kind == GateKind::Input; });
  return t.build(n, top);
}

Circuit random_nonskew(const GenSpec& spec, Rng& rng) {
  const int n = spec.num_vars;
  TreeBuilder t;
  const auto pair = [&] {
    const auto a = static_cast<VarIndex>(rng.below(static_cast<std::uint64_t>(n)));
    auto b = a;
    if (n > 1) {
      b = static_cast<VarIndex>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (b >= a) ++b;
    }
    const int la = t.add({GateKind::Input, a, {}});
    const int lb = t.add({GateKind::Input, b, {}});
    return t.add({rng.chance(0.5) ? GateKind::And : GateKind::Or, 0, {la, lb}});
  };
  const int root = t.shape(rng, spec.size_budget - 1, pair);
  // Leaves stay under their non-skew gate, so NOTs go on internal gates only.
  const int top = t.negate(rng, root, spec.neg_density, spec.min_negs, spec.max_negs,
                           [](const TreeBuilder::Node& nd) { return nd.kind != GateKind::Input; });
  return t.build(n, top);
}

DecisionTree random_tree(const GenSpec& spec, Rng& rng) {
  const int n = spec.num_vars;
  std::function<DecisionTree(int, std::uint32_t)> grow = [&](int depth, std::uint32_t used) {
    const bool must_stop = depth == spec.max_depth || std::popcount(used) == n;
    if (must_stop || (depth > 0 && rng.chance(0.15))) return DecisionTree::leaf(rng.chance(0.5));
    std::vector<VarIndex> free;
    for (VarIndex v = 0; v < n; ++v) {
      if (!(used >> v & 1u)) free.push_back(v);
    }
    const VarIndex v = free[rng.below(free.size())];
    DecisionTree low = grow(depth + 1, used | (1u << v));
    DecisionTree high = grow(depth + 1, used | (1u << v));
    return DecisionTree::branch(v, low, high);
  };
  return grow(0, 0);
}

void check_spec(const GenSpec& spec) {
  if (spec.num_vars < 1) infeasible("need at least one variable");
  if (spec.num_vars > 30) infeasible("too many variables for the generator");
  if (spec.shape == GenShape::DTree) {
    if (spec.max_depth < 0) infeasible("negative tree depth");
    return;
  }
  if (spec.size_budget < 1) infeasible("size budget must be positive");
  if (spec.neg_density < 0.0 || spec.neg_density > 1.0) infeasible("negation density outside [0,1]");
  if (spec.fanin.mode == FaninMode::Bounded && spec.fanin.bound < 2) infeasible("fan-in bound below 2");
}

std::uint64_t shape_stream(GenShape s) { return 0x636f72707573ull + static_cast<std::uint64_t>(s); }

}  // namespace

Generated generate(const GenSpec& spec) {
  if (spec.shape == GenShape::DTree) return generate_tree(spec);
  return generate_circuit(spec);
}

Circuit generate_circuit(const GenSpec& spec) {
  check_spec(spec);
  Rng rng(spec.seed, shape_stream(spec.shape));
  switch (spec.shape) {
    case GenShape::Circuit:
    case GenShape::Monotone: return random_dag(spec, rng);
    case GenShape::Formula: return random_formula(spec, rng);
    case GenShape::ReadOnceLeafNeg: return random_readonce(spec, rng);
    case GenShape::NonSkew: return random_nonskew(spec, rng);
    case GenShape::DTree: break;
  }
  infeasible("decision-tree shape does not produce a circuit");
  return {};
}

DecisionTree generate_tree(const GenSpec& spec) {
  if (spec.shape != GenShape::DTree) infeasible("shape does not produce a decision tree");
  check_spec(spec);
  Rng rng(spec.seed, shape_stream(spec.shape));
  return random_tree(spec, rng);
}

std::string describe(const GenSpec& spec) {
  std::ostringstream os;
  os << "gen seed=" << spec.seed << " shape=" << to_string(spec.shape) << " vars=" << spec.num_vars;
  if (spec.shape == GenShape::DTree) {
    os << " depth=" << spec.max_depth;
  } else {
    os << " size=" << spec.size_budget << " negDensity=" << spec.neg_density;
    switch (spec.fanin.mode) {
      case FaninMode::Fanin2: os << " fanin=2"; break;
      case FaninMode::Bounded: os << " fanin=bounded:" << spec.fanin.bound; break;
      case FaninMode::Unbounded: os << " fanin=unbounded"; break;
    }
    if (spec.min_negs > 0) os << " minNegs=" << spec.min_negs;
    if (spec.max_negs >= 0) os << " maxNegs=" << spec.max_negs;
  }
  return os.str();
}

namespace {

GateId balanced(CircuitBuilder& b, std::vector<GateId> level, GateKind kind) {
  while (level.size() > 1) {
    std::vector<GateId> up;
    for (std::size_t k = 0; k + 1 < level.size(); k += 2) {
      up.push_back(b.add(Gate{kind, 0, {level[k], level[k + 1]}}));
    }
    if (level.size() % 2) up.push_back(level.back());
    level = std::move(up);
  }
  return level[0];
}

Circuit parity_dnf(int n) {
  CircuitBuilder b(n);
  std::vector<GateId> x, nx;
  for (VarIndex v = 0; v < n; ++v) x.push_back(b.input(v));
  for (VarIndex v = 0; v < n; ++v) nx.push_back(b.make_not(x[static_cast<std::size_t>(v)]));
  std::vector<GateId> terms;
  for (InputIndex m = 0; m < (InputIndex{1} << n); ++m) {
    if (std::popcount(m) % 2 == 0) continue;
    std::vector<GateId> lits;
    for (VarIndex v = 0; v < n; ++v) lits.push_back(input_bit(m, v) ? x[static_cast<std::size_t>(v)] : nx[static_cast<std::size_t>(v)]);
    terms.push_back(lits.size() == 1 ? lits[0] : b.make_and(lits));
  }
  const GateId out = terms.size() == 1 ? terms[0] : b.make_or(terms);
  return std::move(b).build(out);
}

Circuit address(int k) {
  const int data = 1 << k;
  const int n = k + data;
  CircuitBuilder b(n);
  std::vector<GateId> x, nx;
  for (VarIndex v = 0; v < n; ++v) x.push_back(b.input(v));
  for (VarIndex v = 0; v < k; ++v) nx.push_back(b.make_not(x[static_cast<std::size_t>(v)]));
  std::vector<GateId> terms;
  for (int j = 0; j < data; ++j) {
    std::vector<GateId> lits;
    // The first address variable is the most significant bit of int(x).
    for (int a = 0; a < k; ++a) {
      const bool bit = (j >> (k - 1 - a)) & 1;
      lits.push_back(bit ? x[static_cast<std::size_t>(a)] : nx[static_cast<std::size_t>(a)]);
    }
    lits.push_back(x[static_cast<std::size_t>(k + j)]);
    terms.push_back(b.make_and(lits));
  }
  const GateId out = terms.size() == 1 ? terms[0] : b.make_or(terms);
  return std::move(b).build(out);
}

}  // namespace

Circuit fixture(std::string_view name) {
  static const std::regex re(R"(^(parity|and|and_tree|and_chain|or|addr|minterm)(\d+)(_dnf)?$)");
  std::cmatch m;
  const std::string s(name);
  if (!std::regex_match(s.c_str(), m, re)) throw Error(ErrorCode::UnknownFixture, s);
  const std::string family = m[1].str();
  const int k = std::stoi(m[2].str());
  const bool dnf = m[3].matched;
  if (family == "parity" && !dnf) throw Error(ErrorCode::UnknownFixture, s + " (use parity<n>_dnf)");
  if (family != "parity" && dnf) throw Error(ErrorCode::UnknownFixture, s);
  const int limit = family == "addr" ? 4 : 16;
  if (k < 1 || k > limit) throw Error(ErrorCode::UnknownFixture, s + ": size out of range");

  if (family == "parity") return parity_dnf(k);
  if (family == "addr") return address(k);
  if (family == "minterm") return minterm_cascade(k).circuit;

  CircuitBuilder b(k);
  std::vector<GateId> x;
  for (VarIndex v = 0; v < k; ++v) x.push_back(b.input(v));
  if (k == 1) return std::move(b).build(x[0], Fanin::two());
  GateId out = -1;
  if (family == "and_chain") {
    out = x[0];
    for (int v = 1; v < k; ++v) out = b.make_and({out, x[static_cast<std::size_t>(v)]});
  } else {
    out = balanced(b, x, family == "or" ? GateKind::Or : GateKind::And);
  }
  return std::move(b).build(out, Fanin::two());
}

std::vector<DecisionTree> enumerate_reduced_trees(int max_depth, int num_vars) {
  std::function<std::vector<DecisionTree>(int, std::uint32_t)> all = [&](int depth, std::uint32_t used) {
    std::vector<DecisionTree> out = {DecisionTree::leaf(false), DecisionTree::leaf(true)};
    if (depth == 0) return out;
    for (VarIndex v = 0; v < num_vars; ++v) {
      if (used >> v & 1u) continue;
      const auto sub = all(depth - 1, used | (1u << v));
      for (const auto& lo : sub) {
        for (const auto& hi : sub) out.push_back(DecisionTree::branch(v, lo, hi));
      }
    }
    return out;
  };
  return all(max_depth, 0);
}

}  // namespace energy
