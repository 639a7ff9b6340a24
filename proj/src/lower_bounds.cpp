#include "energy/lower_bounds.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "energy/transform.hpp"

namespace energy {

PositivePath find_positive_path(const Circuit& c, InputIndex a, VarIndex i) {
  return find_positive_path(c, evaluate(c, a).gate_values, a, i);
}

PositivePath find_positive_path(const Circuit& c, const std::vector<bool>& values, InputIndex a,
                                VarIndex i) {
  if (i < 0 || i >= c.num_vars()) throw Error(ErrorCode::VarOutOfRange, "x" + std::to_string(i));
  if (!input_bit(a, i)) {
    throw Error(ErrorCode::NoPathFound, "x" + std::to_string(i) + " is 0 on " + bit_string(a, c.num_vars()));
  }
  const auto fanouts = c.fanouts();
  std::vector<GateId> parent(c.num_gates(), -1);
  std::vector<char> seen(c.num_gates(), 0);
  std::deque<GateId> queue;
  for (std::size_t id = 0; id < c.num_gates(); ++id) {
    const Gate& g = c.gates()[id];
    if (g.is_input() && g.payload == i) {
      seen[id] = 1;
      queue.push_back(static_cast<GateId>(id));
    }
  }

  const auto finish = [&](GateId end, PathTerminal terminal, GateId not_gate) {
    PositivePath p;
    for (GateId u = end; u >= 0; u = parent[static_cast<std::size_t>(u)]) p.gate_ids.push_back(u);
    std::reverse(p.gate_ids.begin(), p.gate_ids.end());
    p.terminal = terminal;
    p.not_gate = not_gate;
    p.input = a;
    p.var = i;
    return p;
  };

  while (!queue.empty()) {
    const GateId u = queue.front();
    queue.pop_front();
    if (u == c.output()) return finish(u, PathTerminal::Root, -1);
    for (GateId p : fanouts[static_cast<std::size_t>(u)]) {
      if (c.gate(p).kind == GateKind::Not) return finish(u, PathTerminal::FeedsNot, p);
    }
    for (GateId p : fanouts[static_cast<std::size_t>(u)]) {
      const auto pi = static_cast<std::size_t>(p);
      if (seen[pi] || !values[pi]) continue;
      seen[pi] = 1;
      parent[pi] = u;
      queue.push_back(p);
    }
  }
  throw Error(ErrorCode::NoPathFound, "no firing path from x" + std::to_string(i) + " on " +
                                          bit_string(a, c.num_vars()));
}

bool verify_positive_path(const Circuit& c, const PositivePath& p) {
  if (p.gate_ids.empty()) return false;
  const auto values = evaluate(c, p.input).gate_values;
  const Gate& first = c.gate(p.gate_ids.front());
  if (!first.is_input() || first.payload != p.var || !input_bit(p.input, p.var)) return false;
  for (std::size_t k = 1; k < p.gate_ids.size(); ++k) {
    const GateId child = p.gate_ids[k - 1];
    const GateId id = p.gate_ids[k];
    const Gate& g = c.gate(id);
    if (!g.is_logic() || !values[static_cast<std::size_t>(id)]) return false;
    if (std::find(g.children.begin(), g.children.end(), child) == g.children.end()) return false;
  }
  const GateId last = p.gate_ids.back();
  if (p.terminal == PathTerminal::Root) return last == c.output();
  if (p.not_gate < 0 || p.not_gate >= static_cast<GateId>(c.num_gates())) return false;
  const Gate& ng = c.gate(p.not_gate);
  return ng.kind == GateKind::Not && ng.children[0] == last;
}

PsensBound check_psens_bound(const Circuit& c, int cap) {
  PsensBound r;
  r.ec = energy_exhaustive(c, cap).ec;
  r.psens = psens(truth_table(c, cap), cap);
  switch (c.fanin().mode) {
    case FaninMode::Fanin2: r.divisor = 3; break;
    case FaninMode::Bounded: r.divisor = c.fanin().bound + 1; break;
    case FaninMode::Unbounded: r.divisor = std::max(2, c.max_fanin()) + 1; break;
  }
  r.holds = static_cast<long long>(r.ec) * r.divisor >= r.psens.value;
  return r;
}

bool TradeoffReport::pattern_bound_ok() const {
  // size^energy + 1 saturating at 2^63.
  const unsigned long long cap = 1ull << 63;
  unsigned long long power = 1;
  for (int k = 0; k < energy && power < cap; ++k) {
    if (size == 0) {
      power = 0;
      break;
    }
    power = power > cap / static_cast<unsigned long long>(size) ? cap : power * static_cast<unsigned long long>(size);
  }
  return pattern_count <= power + 1;
}

namespace {

/// Gates that take the same value on every input become CONST gates.
Circuit freeze_constant_gates(const Circuit& c, int cap) {
  const int n = c.num_vars();
  const std::uint64_t lanes = valid_lanes(n);
  std::vector<std::uint64_t> ones(c.num_gates(), 0);
  std::vector<std::uint64_t> zeros(c.num_gates(), 0);
  std::vector<std::uint64_t> words;
  const std::uint64_t blocks = n < 6 ? 1 : (std::uint64_t{1} << (n - 6));
  if (n > cap) throw Error(ErrorCode::CapExceeded, "pattern extraction over " + std::to_string(n) + " variables");
  for (std::uint64_t b = 0; b < blocks; ++b) {
    simulate_block(c, b << 6, words);
    for (std::size_t id = 0; id < words.size(); ++id) {
      ones[id] |= words[id] & lanes;
      zeros[id] |= ~words[id] & lanes;
    }
  }
  std::vector<Gate> gates = c.gates();
  for (std::size_t id = 0; id < gates.size(); ++id) {
    if (!gates[id].is_logic()) continue;
    if (!ones[id]) gates[id] = Gate::constant(false);
    else if (!zeros[id]) gates[id] = Gate::constant(true);
  }
  return Circuit(n, std::move(gates), c.output(), c.fanin(), c.shape());
}

DecisionTree extract(const Circuit& original, PartialAssignment assignment, int cap) {
  const Circuit cur = restrict(original, assignment);
  const TruthTable f = truth_table(cur, cap);
  if (f.is_constant()) return DecisionTree::leaf(f.get(0));

  const Circuit live = simplify(freeze_constant_gates(cur, cap));
  std::vector<VarIndex> query;
  const Gate& out = live.gate(live.output());
  if (out.is_input()) {
    query.push_back(out.payload);
  } else {
    for (const Gate& g : live.gates()) {
      if (!g.is_logic()) continue;
      for (GateId ch : g.children) {
        const Gate& child = live.gate(ch);
        if (!child.is_input()) throw Error(ErrorCode::NoPathFound, "first live gate reads a non-input");
        query.push_back(child.payload);
      }
      break;
    }
  }
  std::sort(query.begin(), query.end());
  query.erase(std::unique(query.begin(), query.end()), query.end());

  std::function<DecisionTree(std::size_t)> branch = [&](std::size_t k) -> DecisionTree {
    if (k == query.size()) return extract(original, assignment, cap);
    const VarIndex v = query[k];
    assignment[v] = false;
    DecisionTree low = branch(k + 1);
    assignment[v] = true;
    DecisionTree high = branch(k + 1);
    assignment.erase(v);
    return DecisionTree::branch(v, low, high);
  };
  return branch(0);
}

}  // namespace

TradeoffReport dt_from_patterns(const Circuit& c, int cap, int dt_cap) {
  TradeoffReport r;
  for (const Gate& g : c.gates()) {
    if (g.is_logic()) ++r.size;
  }
  r.energy = energy_exhaustive(c, cap).ec;
  r.pattern_count = firing_patterns(c, cap).size();
  r.max_fanin = std::max(1, c.max_fanin());
  r.tree = extract(c, {}, cap);
  if (c.num_vars() <= dt_cap) r.dt_oracle = dt_depth(truth_table(c, cap), dt_cap).depth;
  return r;
}

}  // namespace energy
