#include "energy/kw_game.hpp"

#include <map>
#include <set>

namespace energy {

InputIndex minimize_one_input(const TruthTable& f, InputIndex a) {
  if (!is_monotone(f)) throw Error(ErrorCode::NotMonotone, "KW game needs a monotone function");
  if (!f.get(a)) throw Error(ErrorCode::NotAOneInput, bit_string(a, f.num_vars()) + " is not in f^-1(1)");
  for (VarIndex i = 0; i < f.num_vars(); ++i) {
    const InputIndex bit = InputIndex{1} << i;
    if ((a & bit) && f.get(a & ~bit)) a &= ~bit;
  }
  return a;
}

KwTranscript run_protocol(const KwInstance& inst, int cap) {
  const TruthTable& f = inst.f;
  const Circuit& c = inst.circuit;
  const int n = f.num_vars();
  if (!equivalent(truth_table(c, cap), f)) {
    throw Error(ErrorCode::IncompatibleArity, "circuit does not compute the instance function");
  }
  if (f.get(inst.b)) throw Error(ErrorCode::NotAOneInput, bit_string(inst.b, n) + " is not in f^-1(0)");

  KwTranscript t;
  t.minimized_input = minimize_one_input(f, inst.a);
  const EvalTrace trace = evaluate(c, t.minimized_input);
  t.energy_at_minimized = trace.energy;
  const int c_max = std::max(2, c.max_fanin());
  t.bits_per_address = 0;
  while ((1 << t.bits_per_address) < c_max) ++t.bits_per_address;

  // Paths of a' grouped by the gate they end in: the output or a NOT.
  std::map<GateId, std::vector<PositivePath>> by_target;
  for (VarIndex i = 0; i < n; ++i) {
    if (!input_bit(t.minimized_input, i)) continue;
    PositivePath p = find_positive_path(c, trace.gate_values, t.minimized_input, i);
    const GateId target = p.terminal == PathTerminal::Root ? p.gate_ids.back() : p.not_gate;
    by_target[target].push_back(std::move(p));
  }

  std::set<GateId> announced;
  for (const auto& [target, paths] : by_target) {
    for (const PositivePath& p : paths) {
      // Walking down from the top: each gate above the input names one child.
      for (std::size_t k = p.gate_ids.size(); k-- > 1;) {
        const GateId g = p.gate_ids[k];
        if (announced.insert(g).second) {
          t.alice_bits += t.bits_per_address;
          t.charged_gates.push_back(g);
        }
      }
      ++t.bob_bits;
      if (!input_bit(inst.b, p.var)) {
        t.result = p.var;
        return t;
      }
    }
  }
  throw Error(ErrorCode::NoSensitiveIndexFound,
              "no index i with a'_i = 1 and b_i = 0 for a' = " + bit_string(t.minimized_input, n) +
                  ", b = " + bit_string(inst.b, n));
}

Circuit demorgan_rewrite(const Circuit& c) {
  const auto fanouts = c.fanouts();
  std::vector<Gate> gates;
  std::vector<GateId> dual(c.num_gates(), -1);
  const auto push = [&gates](Gate g) {
    gates.push_back(std::move(g));
    return static_cast<GateId>(gates.size() - 1);
  };
  for (std::size_t id = 0; id < c.num_gates(); ++id) {
    const Gate& g = c.gates()[id];
    switch (g.kind) {
      case GateKind::Input: {
        const GateId x = push(g);
        dual[id] = fanouts[id].empty() && static_cast<GateId>(id) != c.output() ? x : push(Gate::not_of(x));
        break;
      }
      case GateKind::Const:
        dual[id] = push(Gate::constant(g.payload == 0));
        break;
      default: {
        Gate d = g;
        if (g.kind == GateKind::And) d.kind = GateKind::Or;
        else if (g.kind == GateKind::Or) d.kind = GateKind::And;
        for (GateId& ch : d.children) ch = dual[static_cast<std::size_t>(ch)];
        dual[id] = push(std::move(d));
      }
    }
  }
  const GateId out = push(Gate::not_of(dual[static_cast<std::size_t>(c.output())]));
  return Circuit(c.num_vars(), std::move(gates), out, c.fanin());
}

}  // namespace energy
