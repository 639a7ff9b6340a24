#include "energy/synthesize.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "energy/semantics.hpp"
#include "energy/transform.hpp"

namespace energy {

namespace {

void check_cap(int n, int cap) {
  if (n > cap) {
    throw Error(ErrorCode::CapExceeded,
                std::to_string(n) + " variables exceeds synthesis cap " + std::to_string(cap));
  }
}

Fanin wider(Fanin a, Fanin b) {
  if (a.mode == FaninMode::Unbounded || b.mode == FaninMode::Unbounded) return Fanin::unbounded();
  if (a.mode == FaninMode::Bounded || b.mode == FaninMode::Bounded) {
    return Fanin::bounded(std::max(a.bound, b.bound));
  }
  return Fanin::two();
}

/// Gate list under construction with one shared INPUT gate per variable.
struct Emitter {
  std::vector<Gate> gates;
  std::vector<GateId> input_of;

  explicit Emitter(int num_vars) : input_of(static_cast<std::size_t>(num_vars), -1) {}

  GateId push(Gate g) {
    gates.push_back(std::move(g));
    return static_cast<GateId>(gates.size() - 1);
  }
  GateId input(VarIndex v) {
    auto& slot = input_of[static_cast<std::size_t>(v)];
    if (slot < 0) slot = push(Gate::input(v));
    return slot;
  }
};

/// The two sides copied into one gate list with their NOT gates replaced, in
/// topological order, by selectors !((!x_i & D0) | (x_i & D1)).
struct Merged {
  Emitter em;
  std::vector<GateId> map[2];
  GateId xi = -1;
  GateId nxi = -1;
  std::vector<std::pair<GateId, GateId>> selector_ands;
};

Merged merge_parts(const Circuit& c0, const Circuit& c1, VarIndex i) {
  if (c0.num_vars() != c1.num_vars()) {
    throw Error(ErrorCode::IncompatibleArity, "connector merge over " + std::to_string(c0.num_vars()) +
                                                  " and " + std::to_string(c1.num_vars()) + " variables");
  }
  const int n = c0.num_vars();
  if (i < 0 || i >= n) throw Error(ErrorCode::VarOutOfRange, "x" + std::to_string(i));

  const Circuit* side[2] = {&c0, &c1};
  std::vector<int> not_rank[2];
  std::vector<GateId> nots[2];
  for (int s = 0; s < 2; ++s) {
    not_rank[s].assign(side[s]->num_gates(), -1);
    for (std::size_t id = 0; id < side[s]->num_gates(); ++id) {
      if (side[s]->gates()[id].kind == GateKind::Not) {
        not_rank[s][id] = static_cast<int>(nots[s].size());
        nots[s].push_back(static_cast<GateId>(id));
      }
    }
  }
  const std::size_t pairs = std::min(nots[0].size(), nots[1].size());

  Merged m{Emitter(n), {}, -1, -1, {}};
  for (int s = 0; s < 2; ++s) m.map[s].assign(side[s]->num_gates(), -1);
  std::vector<GateId> selector(pairs, -1);

  m.xi = m.em.input(i);
  m.nxi = m.em.push(Gate::not_of(m.xi));

  // Children always precede their parents and the k-th selector only reads
  // gates that precede the k-th NOT on either side, so the recursion is finite.
  std::function<GateId(int, GateId)> emit;
  std::function<GateId(std::size_t)> make_selector = [&](std::size_t k) -> GateId {
    if (selector[k] >= 0) return selector[k];
    const GateId d0 = emit(0, c0.gate(nots[0][k]).children[0]);
    const GateId d1 = emit(1, c1.gate(nots[1][k]).children[0]);
    const GateId a0 = m.em.push(Gate::and_of({m.nxi, d0}));
    const GateId a1 = m.em.push(Gate::and_of({m.xi, d1}));
    m.selector_ands.emplace_back(a0, a1);
    const GateId o = m.em.push(Gate::or_of({a0, a1}));
    selector[k] = m.em.push(Gate::not_of(o));
    return selector[k];
  };
  emit = [&](int s, GateId id) -> GateId {
    const auto idx = static_cast<std::size_t>(id);
    if (m.map[s][idx] >= 0) return m.map[s][idx];
    const Gate& g = side[s]->gates()[idx];
    GateId out = -1;
    if (g.is_input()) {
      out = m.em.input(g.payload);
    } else if (g.is_const()) {
      out = m.em.push(g);
    } else if (g.kind == GateKind::Not && static_cast<std::size_t>(not_rank[s][idx]) < pairs) {
      out = make_selector(static_cast<std::size_t>(not_rank[s][idx]));
    } else {
      Gate copy = g;
      for (GateId& ch : copy.children) ch = emit(s, ch);
      out = m.em.push(std::move(copy));
    }
    m.map[s][idx] = out;
    return out;
  };
  for (int s = 0; s < 2; ++s) {
    for (std::size_t id = 0; id < side[s]->num_gates(); ++id) emit(s, static_cast<GateId>(id));
  }
  return m;
}

}  // namespace

MintermCascade minterm_cascade(int n, int cap) {
  if (n < 1) throw Error(ErrorCode::VarOutOfRange, "minterm cascade needs n >= 1");
  check_cap(n, cap);
  CircuitBuilder b(n);
  const GateId x0 = b.input(0);
  std::vector<GateId> taps = {b.make_not(x0), x0};
  for (VarIndex k = 1; k < n; ++k) {
    const GateId xk = b.input(k);
    const GateId nk = b.make_not(xk);
    std::vector<GateId> next(taps.size() * 2);
    const std::size_t high = std::size_t{1} << k;
    for (std::size_t m = 0; m < taps.size(); ++m) {
      next[m | high] = b.make_and({taps[m], xk});
      next[m] = b.make_and({taps[m], nk});
    }
    taps = std::move(next);
  }
  const GateId out = static_cast<GateId>(b.size() - 1);
  return MintermCascade{std::move(b).build(out, Fanin::two()), std::move(taps), n};
}

Circuit compile_truth_table(const TruthTable& f, int cap) {
  const int n = f.num_vars();
  check_cap(n, cap);
  if (n == 0) {
    CircuitBuilder b(0);
    const GateId k = b.constant(f.get(0));
    return std::move(b).build(k, Fanin::two());
  }
  const MintermCascade mc = minterm_cascade(n, cap);
  std::vector<Gate> gates = mc.circuit.gates();
  const auto push = [&gates](Gate g) {
    gates.push_back(std::move(g));
    return static_cast<GateId>(gates.size() - 1);
  };
  std::vector<GateId> level;
  level.reserve(mc.taps.size());
  GateId zero = -1;
  for (std::size_t m = 0; m < mc.taps.size(); ++m) {
    if (f.get(m)) {
      level.push_back(mc.taps[m]);
    } else {
      if (zero < 0) zero = push(Gate::constant(false));
      level.push_back(zero);
    }
  }
  while (level.size() > 1) {
    std::vector<GateId> up;
    for (std::size_t k = 0; k + 1 < level.size(); k += 2) up.push_back(push(Gate::or_of({level[k], level[k + 1]})));
    if (level.size() % 2) up.push_back(level.back());
    level = std::move(up);
  }
  return Circuit(n, std::move(gates), level[0], Fanin::two());
}

Circuit connector_merge(const Circuit& c0, const Circuit& c1, VarIndex i) {
  Merged m = merge_parts(c0, c1, i);
  const GateId a0 = m.em.push(Gate::and_of({m.nxi, m.map[0][static_cast<std::size_t>(c0.output())]}));
  const GateId a1 = m.em.push(Gate::and_of({m.xi, m.map[1][static_cast<std::size_t>(c1.output())]}));
  const GateId top = m.em.push(Gate::or_of({a0, a1}));
  return Circuit(c0.num_vars(), std::move(m.em.gates), top, wider(c0.fanin(), c1.fanin()));
}

namespace {

struct Compiled {
  Circuit c;
  std::vector<std::vector<GateId>> guards;
};

std::optional<bool> constant_value(const DecisionTree& t, int node) {
  const auto& nd = t.nodes[static_cast<std::size_t>(node)];
  if (nd.is_leaf) return nd.leaf_value;
  const auto lo = constant_value(t, nd.low);
  const auto hi = constant_value(t, nd.high);
  if (lo && hi && *lo == *hi) return lo;
  return std::nullopt;
}

/// Drops gates unreachable from the output and renumbers the guard lists.
Compiled prune_with_guards(int n, std::vector<Gate> gates, std::vector<std::vector<GateId>> guards,
                           GateId out) {
  std::vector<char> live(gates.size(), 0);
  live[static_cast<std::size_t>(out)] = 1;
  for (std::size_t id = gates.size(); id-- > 0;) {
    if (!live[id]) continue;
    for (GateId ch : gates[id].children) live[static_cast<std::size_t>(ch)] = 1;
  }
  std::vector<GateId> remap(gates.size(), -1);
  std::vector<Gate> kept;
  std::vector<std::vector<GateId>> kept_guards;
  for (std::size_t id = 0; id < gates.size(); ++id) {
    if (!live[id]) continue;
    Gate g = std::move(gates[id]);
    for (GateId& ch : g.children) ch = remap[static_cast<std::size_t>(ch)];
    std::vector<GateId> gs = std::move(guards[id]);
    for (GateId& x : gs) x = remap[static_cast<std::size_t>(x)];
    remap[id] = static_cast<GateId>(kept.size());
    kept.push_back(std::move(g));
    kept_guards.push_back(std::move(gs));
  }
  return Compiled{Circuit(n, std::move(kept), remap[static_cast<std::size_t>(out)], Fanin::unbounded()),
                  std::move(kept_guards)};
}

Compiled compile_node(const DecisionTree& t, int node, int n) {
  if (const auto cv = constant_value(t, node)) {
    return Compiled{Circuit(n, {Gate::constant(*cv)}, 0, Fanin::unbounded()), {{}}};
  }
  const auto& nd = t.nodes[static_cast<std::size_t>(node)];
  const VarIndex r = nd.var;
  const auto lo = constant_value(t, nd.low);
  const auto hi = constant_value(t, nd.high);
  if (lo && hi) {
    // Leaves differ here: the function is x_r or its negation.
    if (*hi) return Compiled{Circuit(n, {Gate::input(r)}, 0, Fanin::unbounded()), {{}}};
    return Compiled{Circuit(n, {Gate::input(r), Gate::not_of(0)}, 1, Fanin::unbounded()), {{}, {}}};
  }

  const Compiled sub[2] = {compile_node(t, nd.low, n), compile_node(t, nd.high, n)};
  Merged m = merge_parts(sub[0].c, sub[1].c, r);
  auto& gates = m.em.gates;
  std::vector<std::vector<GateId>> guards(gates.size());
  for (int s = 0; s < 2; ++s) {
    for (std::size_t id = 0; id < sub[s].c.num_gates(); ++id) {
      if (sub[s].c.gates()[id].kind != GateKind::And) continue;
      auto& gs = guards[static_cast<std::size_t>(m.map[s][id])];
      gs = sub[s].guards[id];
      for (GateId& x : gs) x = m.map[s][static_cast<std::size_t>(x)];
    }
  }
  for (const auto& [a0, a1] : m.selector_ands) {
    guards[static_cast<std::size_t>(a0)] = {m.nxi};
    guards[static_cast<std::size_t>(a1)] = {m.xi};
  }

  GateId top_in[2];
  for (int s = 0; s < 2; ++s) {
    const GateId guard = s == 0 ? m.nxi : m.xi;
    const Circuit& c = sub[s].c;
    const GateId out = m.map[s][static_cast<std::size_t>(c.output())];
    const Gate& root = c.gate(c.output());
    if (root.kind == GateKind::Or) {
      // Deep branch: guard every AND of this side and feed it to the top OR.
      for (std::size_t id = 0; id < c.num_gates(); ++id) {
        if (c.gates()[id].kind != GateKind::And) continue;
        const auto nid = static_cast<std::size_t>(m.map[s][id]);
        gates[nid].children.push_back(guard);
        guards[nid].push_back(guard);
      }
      top_in[s] = out;
    } else if (root.is_const() && root.payload == 0) {
      top_in[s] = out;
    } else {
      top_in[s] = m.em.push(Gate::and_of({guard, out}));
      guards.push_back({guard});
    }
  }
  const GateId top = m.em.push(Gate::or_of({top_in[0], top_in[1]}));
  guards.resize(gates.size());
  return prune_with_guards(n, std::move(gates), std::move(guards), top);
}

}  // namespace

DtCompileResult dt_to_circuit(const DecisionTree& t, int num_vars) {
  const int n = num_vars < 0 ? t.min_vars() : num_vars;
  if (n < t.min_vars()) throw Error(ErrorCode::VarOutOfRange, "tree queries more variables");
  Compiled c = compile_node(t, 0, n);
  return DtCompileResult{std::move(c.c), std::move(c.guards), t.depth()};
}

DtConditions check_dt_conditions(const DtCompileResult& r) {
  DtConditions k;
  const Circuit& c = r.circuit;
  k.d = r.tree_depth;
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Not) ++k.negs;
    if (g.kind == GateKind::And) k.max_and_fanin = std::max(k.max_and_fanin, static_cast<int>(g.children.size()));
    if (g.kind == GateKind::Or) {
      if (g.children.size() != 2) k.or_fanin2 = false;
      for (GateId ch : g.children) {
        const GateKind kind = c.gate(ch).kind;
        if (kind == GateKind::Input || kind == GateKind::Not) k.no_literal_into_or = false;
      }
    }
  }
  k.ec = energy_exhaustive(c).ec;
  k.and_fanin_ok = k.max_and_fanin <= k.d + 2;
  k.negs_ok = k.negs <= k.d;
  k.ec_ok = k.ec <= 2 * k.d * k.d;
  return k;
}

Circuit fanin2_reduce(const DtCompileResult& r) {
  const Circuit& c = r.circuit;
  std::vector<Gate> gates;
  std::vector<GateId> remap(c.num_gates(), -1);
  const auto push = [&gates](Gate g) {
    gates.push_back(std::move(g));
    return static_cast<GateId>(gates.size() - 1);
  };
  for (std::size_t id = 0; id < c.num_gates(); ++id) {
    Gate g = c.gates()[id];
    for (GateId& ch : g.children) ch = remap[static_cast<std::size_t>(ch)];
    if (g.kind != GateKind::And || g.children.size() <= 2) {
      remap[id] = push(std::move(g));
      continue;
    }
    // Leaves from the bottom of the comb: guards root level first, then the
    // remaining children in their original order.
    const auto& gs = id < r.guards.size() ? r.guards[id] : std::vector<GateId>{};
    std::vector<GateId> rest = c.gates()[id].children;
    std::vector<GateId> leaves;
    for (auto it = gs.rbegin(); it != gs.rend(); ++it) {
      leaves.push_back(remap[static_cast<std::size_t>(*it)]);
      rest.erase(std::find(rest.begin(), rest.end(), *it));
    }
    for (GateId ch : rest) leaves.push_back(remap[static_cast<std::size_t>(ch)]);
    GateId cur = push(Gate::and_of({leaves[0], leaves[1]}));
    for (std::size_t k = 2; k < leaves.size(); ++k) cur = push(Gate::and_of({cur, leaves[k]}));
    remap[id] = cur;
  }
  return Circuit(c.num_vars(), std::move(gates), remap[static_cast<std::size_t>(c.output())], Fanin::two());
}

}  // namespace energy
