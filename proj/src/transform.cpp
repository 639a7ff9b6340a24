#include "energy/transform.hpp"

#include <algorithm>

namespace energy {

Circuit hardwire(const Circuit& c, const PartialAssignment& assignment) {
  for (const auto& [var, bit] : assignment) {
    if (var < 0 || var >= c.num_vars()) throw Error(ErrorCode::VarOutOfRange, "x" + std::to_string(var));
  }
  std::vector<Gate> gates = c.gates();
  for (Gate& g : gates) {
    if (!g.is_input()) continue;
    if (auto it = assignment.find(g.payload); it != assignment.end()) g = Gate::constant(it->second);
  }
  return Circuit(c.num_vars(), std::move(gates), c.output(), c.fanin(), c.shape());
}

namespace {

/// Rebuilds the gates reachable from `root` through `rep`, where `rep[id]` is
/// either the id itself (kept), another earlier id (alias) or a constant.
struct Folded {
  std::vector<std::int8_t> value;  // -1 unknown, else forced bit
  std::vector<GateId> alias;       // representative gate for unknown values
  std::vector<std::vector<GateId>> kids;
};

Circuit rebuild(const Circuit& c, const Folded& f) {
  const auto n = c.num_gates();
  const auto root = c.output();
  if (f.value[static_cast<std::size_t>(root)] >= 0) {
    CircuitBuilder b(c.num_vars());
    const GateId k = b.constant(f.value[static_cast<std::size_t>(root)] == 1);
    return std::move(b).build(k, c.fanin(), c.shape());
  }
  std::vector<char> live(n, 0);
  live[static_cast<std::size_t>(f.alias[static_cast<std::size_t>(root)])] = 1;
  for (std::size_t id = n; id-- > 0;) {
    if (!live[id]) continue;
    for (GateId ch : f.kids[id]) live[static_cast<std::size_t>(ch)] = 1;
  }
  std::vector<GateId> remap(n, -1);
  std::vector<Gate> gates;
  for (std::size_t id = 0; id < n; ++id) {
    if (!live[id]) continue;
    Gate g = c.gates()[id];
    g.children = f.kids[id];
    for (GateId& ch : g.children) ch = remap[static_cast<std::size_t>(ch)];
    remap[id] = static_cast<GateId>(gates.size());
    gates.push_back(std::move(g));
  }
  return Circuit(c.num_vars(), std::move(gates),
                 remap[static_cast<std::size_t>(f.alias[static_cast<std::size_t>(root)])], c.fanin(),
                 c.shape());
}

}  // namespace

Circuit simplify(const Circuit& c) {
  const auto n = c.num_gates();
  Folded f{std::vector<std::int8_t>(n, -1), std::vector<GateId>(n), std::vector<std::vector<GateId>>(n)};
  for (std::size_t id = 0; id < n; ++id) {
    const Gate& g = c.gates()[id];
    f.alias[id] = static_cast<GateId>(id);
    switch (g.kind) {
      case GateKind::Input:
        break;
      case GateKind::Const:
        f.value[id] = static_cast<std::int8_t>(g.payload);
        break;
      case GateKind::Not: {
        const auto ch = static_cast<std::size_t>(g.children[0]);
        if (f.value[ch] >= 0) {
          f.value[id] = static_cast<std::int8_t>(1 - f.value[ch]);
        } else {
          f.kids[id] = {f.alias[ch]};
        }
        break;
      }
      case GateKind::And:
      case GateKind::Or: {
        const std::int8_t absorbing = g.kind == GateKind::And ? 0 : 1;
        std::vector<GateId> rest;
        bool forced = false;
        for (GateId ch : g.children) {
          const auto v = f.value[static_cast<std::size_t>(ch)];
          if (v == absorbing) {
            forced = true;
            break;
          }
          if (v < 0) rest.push_back(f.alias[static_cast<std::size_t>(ch)]);
        }
        if (forced) {
          f.value[id] = absorbing;
        } else if (rest.empty()) {
          f.value[id] = static_cast<std::int8_t>(1 - absorbing);
        } else if (rest.size() == 1) {
          f.alias[id] = rest[0];
        } else {
          f.kids[id] = std::move(rest);
        }
        break;
      }
    }
  }
  return rebuild(c, f);
}

Circuit restrict(const Circuit& c, const PartialAssignment& assignment) {
  return simplify(hardwire(c, assignment));
}

Circuit prune_unreachable(const Circuit& c) {
  const auto n = c.num_gates();
  Folded f{std::vector<std::int8_t>(n, -1), std::vector<GateId>(n), std::vector<std::vector<GateId>>(n)};
  for (std::size_t id = 0; id < n; ++id) {
    f.alias[id] = static_cast<GateId>(id);
    f.kids[id] = c.gates()[id].children;
  }
  return rebuild(c, f);
}

std::vector<GateId> cone(const Circuit& c, GateId root) {
  std::vector<char> in(c.num_gates(), 0);
  in[static_cast<std::size_t>(root)] = 1;
  for (auto id = static_cast<std::size_t>(root) + 1; id-- > 0;) {
    if (!in[id]) continue;
    for (GateId ch : c.gates()[id].children) in[static_cast<std::size_t>(ch)] = 1;
  }
  std::vector<GateId> out;
  for (std::size_t id = 0; id <= static_cast<std::size_t>(root); ++id) {
    if (in[id]) out.push_back(static_cast<GateId>(id));
  }
  return out;
}

Circuit substitute_leaf(const Circuit& formula, GateId target, const Circuit& replacement) {
  if (!formula.is_formula() || !replacement.is_formula()) {
    throw Error(ErrorCode::NotAFormula, "substitute_leaf needs formula operands");
  }
  if (target < 0 || target >= static_cast<GateId>(formula.num_gates())) {
    throw Error(ErrorCode::UnknownGateRef, "gate " + std::to_string(target));
  }
  const auto removed = cone(formula, target);
  std::vector<char> skip(formula.num_gates(), 0);
  for (GateId id : removed) skip[static_cast<std::size_t>(id)] = 1;

  std::vector<Gate> gates;
  std::vector<GateId> remap(formula.num_gates(), -1);
  for (std::size_t id = 0; id < formula.num_gates(); ++id) {
    if (static_cast<GateId>(id) == target) {
      const auto offset = static_cast<GateId>(gates.size());
      for (Gate g : replacement.gates()) {
        for (GateId& ch : g.children) ch += offset;
        gates.push_back(std::move(g));
      }
      remap[id] = offset + replacement.output();
      continue;
    }
    if (skip[id]) continue;
    Gate g = formula.gates()[id];
    for (GateId& ch : g.children) ch = remap[static_cast<std::size_t>(ch)];
    remap[id] = static_cast<GateId>(gates.size());
    gates.push_back(std::move(g));
  }
  const int vars = std::max(formula.num_vars(), replacement.num_vars());
  const GateId out = remap[static_cast<std::size_t>(formula.output())];
  return Circuit(vars, gates, out, infer_fanin(gates), Shape::Formula);
}

Circuit variable_formula(VarIndex var, int num_vars) {
  return Circuit(num_vars, {Gate::input(var)}, 0, Fanin::two(), Shape::Formula);
}

Circuit constant_formula(bool bit, int num_vars) {
  return Circuit(num_vars, {Gate::constant(bit)}, 0, Fanin::two(), Shape::Formula);
}

int depth_from(const Circuit& c, GateId root) {
  std::vector<int> depth(static_cast<std::size_t>(root) + 1, 0);
  for (std::size_t id = 0; id <= static_cast<std::size_t>(root); ++id) {
    for (GateId ch : c.gates()[id].children) {
      depth[id] = std::max(depth[id], depth[static_cast<std::size_t>(ch)] + 1);
    }
  }
  return depth[static_cast<std::size_t>(root)];
}

StructuralStats structural_stats(const Circuit& c) {
  StructuralStats s;
  int inputs = 0;
  for (const Gate& g : c.gates()) {
    if (g.is_logic()) ++s.size;
    if (g.kind == GateKind::Not) ++s.negs;
    if (g.is_input()) ++inputs;
  }
  s.depth = depth_from(c, c.output());
  if (c.is_formula()) s.leaves = inputs;
  return s;
}

}  // namespace energy
