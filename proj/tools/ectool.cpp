// ectool: command-line front end for the energy library.

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "energy/corpus.hpp"
#include "energy/formula_energy.hpp"
#include "energy/kw_game.hpp"
#include "energy/lower_bounds.hpp"
#include "energy/netlist.hpp"
#include "energy/semantics.hpp"
#include "energy/synthesize.hpp"
#include "energy/transform.hpp"
#include "energy/verify.hpp"

using namespace energy;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
}

InputIndex parse_bits(const std::string& s, int n) {
  std::string bits;
  for (char ch : s) {
    if (ch == '0' || ch == '1') {
      bits.push_back(ch);
    } else if (ch != ' ' && ch != ',') {
      throw Error(ErrorCode::ParseError, "input must be a 0/1 string, got '" + s + "'");
    }
  }
  if (static_cast<int>(bits.size()) != n) {
    throw Error(ErrorCode::LengthMismatch,
                "input has " + std::to_string(bits.size()) + " bits, circuit has " + std::to_string(n) + " variables");
  }
  InputIndex a = 0;
  for (int k = 0; k < n; ++k) {
    if (bits[static_cast<std::size_t>(k)] == '1') a |= InputIndex{1} << k;
  }
  return a;
}

std::string tree_line(const DecisionTree& t) { return serialize_decision_tree(t) + "\n"; }

json tree_json(const TradeoffReport& r) {
  json j = {{"size", r.size},
            {"energy", r.energy},
            {"patternCount", r.pattern_count},
            {"maxFanin", r.max_fanin},
            {"treeDepth", r.tree_depth()},
            {"depthOk", r.depth_ok()},
            {"patternBoundOk", r.pattern_bound_ok()},
            {"tree", serialize_decision_tree(r.tree)}};
  j["dtOracle"] = r.dt_oracle ? json(*r.dt_oracle) : json(nullptr);
  return j;
}

Fanin parse_fanin(const std::string& s) {
  if (s == "2") return Fanin::two();
  if (s == "unbounded") return Fanin::unbounded();
  if (s.rfind("bounded:", 0) == 0) return Fanin::bounded(std::stoi(s.substr(8)));
  throw Error(ErrorCode::ParseError, "fan-in must be 2, unbounded or bounded:<c>");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy complexity toolkit for {AND, OR, NOT} circuits"};
  app.require_subcommand(1);

  int cap = kDefaultSweepCap;
  app.add_option("--cap-n", cap, "Largest variable count for exhaustive sweeps")->check(CLI::Range(1, 40));

  std::string circuit_path, table_path, tree_path, formula_path, out_path, json_path;
  std::string input_a, input_b;
  int tree_vars = -1;

  auto* eval = app.add_subcommand("eval", "Evaluate a circuit on one input");
  eval->add_option("--circuit", circuit_path, "Netlist file ('-' for stdin)")->required();
  eval->add_option("--input", input_a, "Input bits x0 x1 ...")->required();

  bool exhaustive = true;
  auto* energy_cmd = app.add_subcommand("energy", "Maximum energy over all inputs");
  energy_cmd->add_option("--circuit", circuit_path)->required();
  energy_cmd->add_flag("--exhaustive", exhaustive, "Enumerate every input (the only mode)");
  bool moments = false;
  energy_cmd->add_flag("--moments", moments, "Also print mean and standard deviation");

  bool list_patterns = false;
  auto* patterns = app.add_subcommand("patterns", "Distinct firing patterns");
  patterns->add_option("--circuit", circuit_path)->required();
  patterns->add_flag("--list", list_patterns, "Print every pattern");

  auto* compile_tt = app.add_subcommand("compile-tt", "Minterm-cascade circuit for a truth table");
  compile_tt->add_option("--table", table_path)->required();
  compile_tt->add_option("-o,--out", out_path);

  auto* dt2 = app.add_subcommand("dt2circuit", "Compile a decision tree to an unbounded fan-in circuit");
  dt2->add_option("--tree", tree_path)->required();
  dt2->add_option("--vars", tree_vars, "Variable count (default: variables the tree touches)");
  dt2->add_option("-o,--out", out_path);

  auto* fanin2 = app.add_subcommand("fanin2", "Compile a decision tree and reduce it to fan-in 2");
  fanin2->add_option("--tree", tree_path)->required();
  fanin2->add_option("--vars", tree_vars);
  fanin2->add_option("-o,--out", out_path);

  auto* psens_cmd = app.add_subcommand("psens-check", "Check EC(C) against psens(f)");
  psens_cmd->add_option("--circuit", circuit_path)->required();

  auto* extract = app.add_subcommand("extract-dt", "Decision tree read off the firing patterns");
  extract->add_option("--circuit", circuit_path)->required();

  auto* kw = app.add_subcommand("kw-run", "Energy-charged monotone KW protocol");
  kw->add_option("--circuit", circuit_path)->required();
  kw->add_option("--a", input_a, "Alice's input, f(a) = 1")->required();
  kw->add_option("--b", input_b, "Bob's input, f(b) = 0")->required();

  auto* decompose = app.add_subcommand("fml-decompose", "Split a formula into monotone blocks under a read-once skeleton");
  decompose->add_option("--formula", formula_path)->required();
  decompose->add_option("-o,--out", out_path, "Write F' as a netlist");

  auto* fstats = app.add_subcommand("fml-stats", "Leaves, depth, negations and energy of a formula");
  fstats->add_option("--formula", formula_path)->required();

  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  auto* nonskew = app.add_subcommand("fml-nonskew", "Sampled and exact mean energy against t/4");
  nonskew->add_option("--formula", formula_path)->required();
  nonskew->add_option("--samples", samples)->check(CLI::PositiveNumber);
  nonskew->add_option("--seed", seed);

  GenSpec spec;
  std::string shape = "circuit", fanin = "2", fixture_name;
  auto* gen = app.add_subcommand("gen", "Generate a seeded instance or a named fixture");
  gen->add_option("--shape", shape, "circuit|formula|readonce|monotone|dtree|nonskew");
  gen->add_option("--seed", spec.seed);
  gen->add_option("--vars", spec.num_vars);
  gen->add_option("--size", spec.size_budget);
  gen->add_option("--neg-density", spec.neg_density)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--fanin", fanin, "2|unbounded|bounded:<c>");
  gen->add_option("--min-negs", spec.min_negs);
  gen->add_option("--max-negs", spec.max_negs);
  gen->add_option("--depth", spec.max_depth);
  gen->add_option("--fixture", fixture_name, "parity<n>_dnf, and<n>, and_tree<n>, and_chain<n>, or<n>, addr<k>, minterm<n>");
  gen->add_option("-o,--out", out_path);

  std::string level = "smoke";
  std::vector<std::string> only;
  bool serial = false;
  auto* verify = app.add_subcommand("verify-all", "Run the property suites");
  verify->add_option("--level", level)->check(CLI::IsMember({"smoke", "full"}));
  verify->add_option("--json", json_path, "Write the report as JSON");
  verify->add_option("--only", only, "Run only these check ids")->check(CLI::IsMember(check_ids()));
  verify->add_flag("--serial", serial, "Run checks one after another");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto load_circuit = [&] { return parse_netlist(slurp(circuit_path)); };
    const auto load_formula = [&] { return parse_netlist(slurp(formula_path), Shape::Formula); };

    if (*eval) {
      const Circuit c = load_circuit();
      const EvalTrace tr = evaluate(c, bits_of(parse_bits(input_a, c.num_vars()), c.num_vars()));
      std::string values;
      for (bool v : tr.gate_values) values.push_back(v ? '1' : '0');
      std::cout << "output=" << tr.output << " energy=" << tr.energy << " gates=" << values << "\n";
      return kOk;
    }
    if (*energy_cmd) {
      const Circuit c = load_circuit();
      if (moments) {
        const EnergySweep sw = energy_sweep(c, cap);
        std::cout << "EC=" << sw.max << " argmax=" << bit_string(sw.argmax, c.num_vars()) << " mean=" << sw.mean
                  << " stddev=" << std::sqrt(sw.variance) << "\n";
      } else {
        const EnergyResult r = energy_exhaustive(c, cap);
        std::cout << "EC=" << r.ec << " argmax=" << bit_string(r.argmax, c.num_vars()) << "\n";
      }
      return kOk;
    }
    if (*patterns) {
      const Circuit c = load_circuit();
      const auto ps = firing_patterns(c, cap);
      std::cout << "patterns=" << ps.size() << "\n";
      if (list_patterns) {
        for (const auto& p : ps) {
          std::string s;
          for (std::size_t k = 0; k < p.length; ++k) s.push_back(p.bit(k) ? '1' : '0');
          std::cout << s << "\n";
        }
      }
      return kOk;
    }
    if (*compile_tt) {
      const TruthTable f = parse_truth_table(slurp(table_path));
      const Circuit c = compile_truth_table(f);
      const int ec = energy_exhaustive(c, cap).ec;
      const int bound = 3 * f.num_vars() - 1;
      emit(serialize_netlist(c, "compile-tt n=" + std::to_string(f.num_vars())), out_path);
      std::cerr << "EC=" << ec << " bound=" << bound << " size=" << structural_stats(c).size << "\n";
      return ec <= std::max(bound, 0) && truth_table(c, cap) == f ? kOk : kViolation;
    }
    if (*dt2 || *fanin2) {
      const DecisionTree t = parse_decision_tree(slurp(tree_path));
      const DtCompileResult r = dt_to_circuit(t, tree_vars);
      const int n = r.circuit.num_vars();
      if (*dt2) {
        const DtConditions k = check_dt_conditions(r);
        const bool eq = truth_table(r.circuit, cap) == t.truth_table(n);
        emit(serialize_netlist(r.circuit, "dt2circuit d=" + std::to_string(r.tree_depth)), out_path);
        std::cerr << "d=" << k.d << " EC=" << k.ec << " bound=" << 2 * k.d * k.d << " negs=" << k.negs
                  << " maxAndFanin=" << k.max_and_fanin << " orFanin2=" << k.or_fanin2
                  << " noLiteralIntoOr=" << k.no_literal_into_or << " equivalent=" << eq << "\n";
        return eq && k.all() ? kOk : kViolation;
      }
      const Circuit c = fanin2_reduce(r);
      const int d = r.tree_depth;
      const int ec = energy_exhaustive(c, cap).ec;
      const bool eq = truth_table(c, cap) == t.truth_table(n);
      emit(serialize_netlist(c, "fanin2 d=" + std::to_string(d)), out_path);
      std::cerr << "d=" << d << " EC=" << ec << " bound=" << 2 * d * d * (d + 1) << " equivalent=" << eq << "\n";
      return eq && ec <= 2 * d * d * (d + 1) ? kOk : kViolation;
    }
    if (*psens_cmd) {
      const Circuit c = load_circuit();
      const PsensBound b = check_psens_bound(c, cap);
      json j = {{"ec", b.ec},
                {"psens", b.psens.value},
                {"divisor", b.divisor},
                {"holds", b.holds},
                {"witnessInput", bit_string(b.psens.witness_input, c.num_vars())},
                {"witnessIndices", b.psens.witness_indices}};
      std::cout << j.dump(2) << "\n";
      return b.holds ? kOk : kViolation;
    }
    if (*extract) {
      const Circuit c = load_circuit();
      const TradeoffReport r = dt_from_patterns(c, cap);
      json j = tree_json(r);
      const bool eq = r.tree.truth_table(c.num_vars()) == truth_table(c, cap);
      j["equivalent"] = eq;
      std::cout << j.dump(2) << "\n";
      return eq && r.depth_ok() && r.pattern_bound_ok() ? kOk : kViolation;
    }
    if (*kw) {
      const Circuit c = load_circuit();
      const int n = c.num_vars();
      KwInstance inst{truth_table(c, cap), c, parse_bits(input_a, n), parse_bits(input_b, n)};
      const KwTranscript tr = run_protocol(inst, cap);
      const bool ok = tr.result >= 0 && input_bit(inst.a, tr.result) && !input_bit(inst.b, tr.result);
      json j = {{"result", tr.result},
                {"aliceBits", tr.alice_bits},
                {"bobBits", tr.bob_bits},
                {"bitsPerAddress", tr.bits_per_address},
                {"minimizedInput", bit_string(tr.minimized_input, n)},
                {"energyAtMinimized", tr.energy_at_minimized},
                {"bound", tr.bound()},
                {"withinBound", tr.within_bound()},
                {"chargedGates", tr.charged_gates},
                {"correct", ok}};
      std::cout << j.dump(2) << "\n";
      return ok && tr.within_bound() ? kOk : kViolation;
    }
    if (*decompose) {
      const Circuit f = load_formula();
      const DecompositionResult r = decompose_gk(f);
      if (!out_path.empty()) emit(serialize_netlist(r.f_prime, "fml-decompose T=" + std::to_string(r.T)), out_path);
      json j = {{"T", r.T}, {"blocks", r.blocks}, {"skeletonGates", r.skeleton_gates}};
      bool ok = true;
      if (structural_stats(f).negs >= 1) {
        const DecompositionCheck k = check_decomposition(f, cap);
        j["check"] = {{"leaves", k.source.leaves},       {"leavesPrime", k.leaves_prime},
                      {"ec", k.source.ec},               {"ecPrime", k.ec_prime},
                      {"depth", k.source.depth},         {"negs", k.source.negs},
                      {"equivalent", k.equivalent},      {"leavesOk", k.leaves_ok},
                      {"blocksOk", k.blocks_ok},         {"blocksMonotone", k.blocks_monotone},
                      {"leavesInBlocks", k.leaves_in_blocks}, {"upperOk", k.upper_ok},
                      {"lowerOk", k.lower_ok},           {"combinedOk", k.combined_ok},
                      {"negsOk", k.negs_ok}};
        ok = k.all();
      }
      std::cout << j.dump(2) << "\n";
      return ok ? kOk : kViolation;
    }
    if (*fstats) {
      const FormulaStats s = formula_stats(load_formula(), cap);
      json j = {{"leaves", s.leaves}, {"depth", s.depth}, {"negs", s.negs}, {"size", s.size}, {"ec", s.ec}};
      if (s.negs >= 1) j["alpha"] = combined_alpha(s.leaves, s.depth);
      std::cout << j.dump(2) << "\n";
      return kOk;
    }
    if (*nonskew) {
      const NonSkewStats st = nonskew_energy_estimate(load_formula(), samples, seed);
      json j = {{"t", st.t},
                {"samples", st.sample_count},
                {"empiricalMean", st.empirical_mean},
                {"lowerEnvelope", st.lower_envelope}};
      j["exactMean"] = st.exact_mean ? json(*st.exact_mean) : json(nullptr);
      j["exactStddev"] = st.exact_stddev ? json(*st.exact_stddev) : json(nullptr);
      std::cout << j.dump(2) << "\n";
      return !st.exact_mean || *st.exact_mean >= st.lower_envelope ? kOk : kViolation;
    }
    if (*gen) {
      if (!fixture_name.empty()) {
        emit(serialize_netlist(fixture(fixture_name), "fixture " + fixture_name), out_path);
        return kOk;
      }
      spec.shape = parse_shape(shape);
      spec.fanin = parse_fanin(fanin);
      const Generated g = generate(spec);
      if (const auto* t = std::get_if<DecisionTree>(&g)) {
        emit("# " + describe(spec) + "\n" + tree_line(*t), out_path);
      } else {
        emit(serialize_netlist(std::get<Circuit>(g), describe(spec)), out_path);
      }
      return kOk;
    }
    if (*verify) {
      VerifyOptions opts;
      opts.level = parse_level(level);
      opts.cap = cap;
      opts.parallel = !serial;
      opts.only = only;
      const Report report = verify_all(opts);
      for (const auto& c : report.checks) {
        std::cout << (c.passed() ? "PASS " : "FAIL ") << c.check_id << " instances=" << c.instances
                  << " violations=" << c.violations << " seconds=" << c.seconds << "\n";
        if (!c.passed()) std::cout << "  " << c.witness << "\n";
      }
      std::cout << report.suite << ": " << report.violations() << " violations in " << report.wall_seconds << " s\n";
      if (!json_path.empty()) emit(report_json(report) + "\n", json_path);
      return report.passed() ? kOk : kViolation;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
