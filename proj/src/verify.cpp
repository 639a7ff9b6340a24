#include "energy/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <future>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "energy/corpus.hpp"
#include "energy/formula_energy.hpp"
#include "energy/kw_game.hpp"
#include "energy/lower_bounds.hpp"
#include "energy/netlist.hpp"
#include "energy/rng.hpp"
#include "energy/synthesize.hpp"
#include "energy/transform.hpp"

namespace energy {

VerifyLevel parse_level(std::string_view name) {
  if (name == "smoke") return VerifyLevel::Smoke;
  if (name == "full") return VerifyLevel::Full;
  throw Error(ErrorCode::ParseError, "unknown level '" + std::string(name) + "'");
}

const char* to_string(VerifyLevel level) { return level == VerifyLevel::Smoke ? "smoke" : "full"; }

std::size_t Report::violations() const {
  std::size_t v = 0;
  for (const auto& c : checks) v += c.violations;
  return v;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed(); });
}

namespace {

using Clock = std::chrono::steady_clock;

/// Counts instances and keeps the first violation, or else the instance with
/// the least slack against its bound.
class Tally {
 public:
  explicit Tally(CheckRecord& rec) : rec_(rec) {}

  void check(bool ok, double slack, const std::function<std::string()>& what) {
    ++rec_.instances;
    if (!ok) {
      if (rec_.violations++ == 0) rec_.witness = "violation: " + what();
      return;
    }
    if (rec_.violations == 0 && slack < best_) {
      best_ = slack;
      std::ostringstream os;
      os << "tightest: " << what() << " (slack " << slack << ")";
      rec_.witness = os.str();
    }
  }

  void error(const Error& e, const std::function<std::string()>& what) {
    check(false, 0, [&] { return what() + " threw " + to_string(e.code()) + ": " + e.what(); });
  }

 private:
  CheckRecord& rec_;
  double best_ = std::numeric_limits<double>::infinity();
};

bool smoke(const VerifyOptions& o) { return o.level == VerifyLevel::Smoke; }

std::string tt_str(const TruthTable& f) {
  std::string s = serialize_truth_table(f);
  while (!s.empty() && s.back() == '\n') s.pop_back();
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string tree_str(const DecisionTree& t) { return serialize_decision_tree(t); }

template <class T>
T pick(Rng& rng, std::initializer_list<T> xs) {
  return *(xs.begin() + rng.below(xs.size()));
}

// ---------------------------------------------------------------------------

void check_compile_tt(const VerifyOptions& o, Tally& tally) {
  for (int n : {3, 4}) {
    const std::uint64_t count = std::uint64_t{1} << (1u << n);
    const std::uint64_t stride = smoke(o) && n == 4 ? 64 : 1;
    const int bound = 3 * n - 1;
    for (std::uint64_t code = 0; code < count; code += stride) {
      TruthTable f(n);
      f.words()[0] = code;
      const auto what = [&] { return tt_str(f); };
      try {
        const Circuit c = compile_truth_table(f, o.cap);
        const int ec = energy_exhaustive(c, o.cap).ec;
        const bool eq = truth_table(c, o.cap) == f;
        tally.check(eq && ec <= bound, bound - ec, [&] {
          return what() + " EC=" + std::to_string(ec) + " bound=" + std::to_string(bound) + (eq ? "" : " not equivalent");
        });
      } catch (const Error& e) {
        tally.error(e, what);
      }
    }
  }
}

void check_minterm_cascade(const VerifyOptions& o, Tally& tally) {
  const int top = smoke(o) ? 6 : 10;
  for (int n = 1; n <= top; ++n) {
    try {
      const MintermCascade m = minterm_cascade(n);
      int max_energy = 0;
      for (InputIndex a = 0; a < (InputIndex{1} << n); ++a) {
        const EvalTrace tr = evaluate(m.circuit, a);
        int fired = 0;
        for (GateId t : m.taps) fired += tr.gate_values[static_cast<std::size_t>(t)] ? 1 : 0;
        const bool own = tr.gate_values[static_cast<std::size_t>(m.taps[a])];
        max_energy = std::max(max_energy, tr.energy);
        tally.check(fired == 1 && own && tr.energy <= 2 * n - 1, 2 * n - 1 - tr.energy, [&] {
          return "n=" + std::to_string(n) + " input=" + bit_string(a, n) + " taps fired=" + std::to_string(fired) +
                 " energy=" + std::to_string(tr.energy);
        });
      }
      if (n == 1) {
        tally.check(max_energy == 1, 0, [&] { return "n=1 EC=" + std::to_string(max_energy) + " (expected 1)"; });
      }
    } catch (const Error& e) {
      tally.error(e, [&] { return "n=" + std::to_string(n); });
    }
  }
}

/// Exhaustive reduced trees of depth <= 3 over 4 variables, then seeded
/// random trees of depth <= 6 over 8 variables.
void for_each_dt(const VerifyOptions& o, const std::function<void(const DecisionTree&, int)>& fn) {
  const auto trees = enumerate_reduced_trees(3, 4);
  const std::size_t stride = smoke(o) ? 97 : 1;
  for (std::size_t k = 0; k < trees.size(); k += stride) fn(trees[k], 4);
  const int randoms = smoke(o) ? 60 : 500;
  for (int k = 0; k < randoms; ++k) {
    GenSpec s;
    s.seed = static_cast<std::uint64_t>(k + 1);
    s.shape = GenShape::DTree;
    s.num_vars = 8;
    s.max_depth = 6;
    fn(generate_tree(s), 8);
  }
}

void check_dt_compile(const VerifyOptions& o, Tally& tally) {
  for_each_dt(o, [&](const DecisionTree& t, int n) {
    const auto what = [&] { return tree_str(t); };
    try {
      const DtCompileResult r = dt_to_circuit(t, n);
      const DtConditions k = check_dt_conditions(r);
      const bool eq = truth_table(r.circuit, o.cap) == t.truth_table(n);
      // Constant trees sit at slack 0 trivially; keep them out of the witness.
      const double slack = k.d == 0 ? std::numeric_limits<double>::infinity() : 2 * k.d * k.d - k.ec;
      tally.check(eq && k.all(), slack, [&] {
        std::ostringstream os;
        os << what() << " d=" << k.d << " EC=" << k.ec << " negs=" << k.negs << " maxAnd=" << k.max_and_fanin;
        if (!eq) os << " not-equivalent";
        if (!k.or_fanin2) os << " or-fanin";
        if (!k.no_literal_into_or) os << " literal-into-or";
        return os.str();
      });
    } catch (const Error& e) {
      tally.error(e, what);
    }
  });
}

void check_dt_fanin2(const VerifyOptions& o, Tally& tally) {
  for_each_dt(o, [&](const DecisionTree& t, int n) {
    const auto what = [&] { return tree_str(t); };
    try {
      const DtCompileResult r = dt_to_circuit(t, n);
      const Circuit c = fanin2_reduce(r);
      const int d = r.tree_depth;
      const int bound = 2 * d * d * (d + 1);
      const int ec = energy_exhaustive(c, o.cap).ec;
      const bool eq = truth_table(c, o.cap) == t.truth_table(n);
      const bool narrow = c.max_fanin() <= 2;
      const double slack = d == 0 ? std::numeric_limits<double>::infinity() : bound - ec;
      tally.check(eq && narrow && ec <= bound, slack, [&] {
        return what() + " d=" + std::to_string(d) + " EC=" + std::to_string(ec) + " maxFanin=" +
               std::to_string(c.max_fanin()) + (eq ? "" : " not-equivalent");
      });
    } catch (const Error& e) {
      tally.error(e, what);
    }
  });
}

GenSpec psens_spec(std::size_t k) {
  Rng rng(k + 1, 5);
  GenSpec s;
  s.seed = k + 1;
  s.shape = GenShape::Circuit;
  s.num_vars = rng.range(1, 8);
  s.size_budget = rng.range(1, 40);
  s.neg_density = pick(rng, {0.0, 0.15, 0.3, 0.5});
  s.fanin = Fanin::two();
  return s;
}

std::size_t psens_corpus_size(const VerifyOptions& o) { return smoke(o) ? 150 : 1000; }

Circuit and_circuit_dt(int n) {
  DecisionTree t = DecisionTree::leaf(true);
  for (int v = n - 1; v >= 0; --v) t = DecisionTree::branch(v, DecisionTree::leaf(false), t);
  return fanin2_reduce(dt_to_circuit(t, n));
}

void check_psens(const VerifyOptions& o, Tally& tally) {
  for (std::size_t k = 0; k < psens_corpus_size(o); ++k) {
    const GenSpec s = psens_spec(k);
    const auto what = [&] { return describe(s); };
    try {
      const Circuit c = generate_circuit(s);
      const PsensBound b = check_psens_bound(c, o.cap);
      tally.check(b.holds, b.ec * b.divisor - b.psens.value, [&] {
        return what() + " EC=" + std::to_string(b.ec) + " psens=" + std::to_string(b.psens.value);
      });
    } catch (const Error& e) {
      tally.error(e, what);
    }
  }
  // AND_n built several ways; each must pay at least n/3.
  for (int n = 2; n <= 9; ++n) {
    std::vector<std::pair<std::string, Circuit>> builds = {
        {"and_tree" + std::to_string(n), fixture("and_tree" + std::to_string(n))},
        {"and_chain" + std::to_string(n), fixture("and_chain" + std::to_string(n))},
        {"compile_tt(and" + std::to_string(n) + ")", compile_truth_table(truth_table(fixture("and" + std::to_string(n))))},
        {"dt_fanin2(and" + std::to_string(n) + ")", and_circuit_dt(n)},
    };
    for (const auto& [name, c] : builds) {
      const int ec = energy_exhaustive(c, o.cap).ec;
      tally.check(3 * ec >= n, 3 * ec - n, [&] { return name + " EC=" + std::to_string(ec); });
    }
  }
}

void check_positive_paths(const VerifyOptions& o, Tally& tally) {
  for (std::size_t k = 0; k < psens_corpus_size(o); ++k) {
    const GenSpec s = psens_spec(k);
    try {
      const Circuit c = generate_circuit(s);
      const TruthTable f = truth_table(c, o.cap);
      const int n = c.num_vars();
      for (InputIndex a = 0; a < (InputIndex{1} << n); ++a) {
        const auto sens = psens_at(f, a);
        if (sens.empty()) continue;
        const EvalTrace tr = evaluate(c, a);
        for (VarIndex i : sens) {
          const auto what = [&] { return describe(s) + " a=" + bit_string(a, n) + " i=" + std::to_string(i); };
          try {
            const PositivePath p = find_positive_path(c, tr.gate_values, a, i);
            tally.check(verify_positive_path(c, p), 0, what);
          } catch (const Error& e) {
            tally.error(e, what);
          }
        }
      }
    } catch (const Error& e) {
      tally.error(e, [&] { return describe(s); });
    }
  }
}

void check_tradeoff(const VerifyOptions& o, Tally& tally) {
  const std::size_t count = smoke(o) ? 80 : 500;
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(k + 1, 7);
    GenSpec s;
    s.seed = k + 1;
    s.shape = GenShape::Circuit;
    s.num_vars = rng.range(1, 5);
    s.size_budget = rng.range(1, 24);
    s.neg_density = pick(rng, {0.0, 0.2, 0.4});
    s.fanin = k % 2 ? Fanin::unbounded() : Fanin::two();
    const auto what = [&] { return describe(s); };
    try {
      const Circuit c = generate_circuit(s);
      const TradeoffReport r = dt_from_patterns(c, o.cap);
      const bool eq = r.tree.truth_table(c.num_vars()) == truth_table(c, o.cap);
      const auto lt = static_cast<long long>(r.max_fanin) * static_cast<long long>(r.pattern_count);
      const bool oracle_ok = !r.dt_oracle || *r.dt_oracle <= lt;
      tally.check(eq && r.depth_ok() && r.pattern_bound_ok() && oracle_ok, static_cast<double>(lt - r.tree_depth()), [&] {
        std::ostringstream os;
        os << what() << " depth=" << r.tree_depth() << " l=" << r.max_fanin << " t=" << r.pattern_count
           << " s=" << r.size << " e=" << r.energy;
        if (r.dt_oracle) os << " DT=" << *r.dt_oracle;
        if (!eq) os << " not-equivalent";
        return os.str();
      });
    } catch (const Error& e) {
      tally.error(e, what);
    }
  }
}

void check_kw(const VerifyOptions& o, Tally& tally) {
  const std::size_t count = smoke(o) ? 40 : 200;
  const int pairs = smoke(o) ? 10 : 50;
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(k + 1, 8);
    GenSpec s;
    s.seed = k + 1;
    s.shape = GenShape::Monotone;
    s.num_vars = rng.range(2, 7);
    s.size_budget = rng.range(2, 16);
    s.fanin = k % 3 == 0 ? Fanin::bounded(4) : Fanin::two();
    try {
      const Circuit mono = generate_circuit(s);
      const TruthTable f = truth_table(mono, o.cap);
      const Circuit neg = k % 2 == 0 ? compile_truth_table(f) : demorgan_rewrite(mono);
      const int n = f.num_vars();
      std::vector<InputIndex> ones, zeros;
      for (InputIndex a = 0; a < f.size(); ++a) (f.get(a) ? ones : zeros).push_back(a);
      if (ones.empty() || zeros.empty()) {
        tally.check(false, 0, [&] { return describe(s) + " generated a constant function"; });
        continue;
      }
      for (int p = 0; p < pairs; ++p) {
        const InputIndex a = ones[rng.below(ones.size())];
        const InputIndex b = zeros[rng.below(zeros.size())];
        for (const Circuit* c : {&mono, &neg}) {
          const auto what = [&] {
            return describe(s) + (c == &mono ? " monotone" : " negated") + " a=" + bit_string(a, n) +
                   " b=" + bit_string(b, n);
          };
          try {
            const KwTranscript tr = run_protocol({f, *c, a, b}, o.cap);
            const InputIndex am = tr.minimized_input;
            const bool found = tr.result >= 0 && tr.result < n && input_bit(a, tr.result) && !input_bit(b, tr.result);
            const bool below = (am & ~a) == 0 && f.get(am);
            tally.check(found && below && tr.within_bound(), tr.bound() - tr.alice_bits, [&] {
              return what() + " i=" + std::to_string(tr.result) + " aliceBits=" + std::to_string(tr.alice_bits) +
                     " bound=" + std::to_string(tr.bound());
            });
          } catch (const Error& e) {
            tally.error(e, what);
          }
        }
      }
    } catch (const Error& e) {
      tally.error(e, [&] { return describe(s); });
    }
  }
}

void check_formulas(const VerifyOptions& o, Tally& tally) {
  const std::size_t count = smoke(o) ? 80 : 500;
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(k + 1, 9);
    GenSpec s;
    s.seed = k + 1;
    s.shape = GenShape::Formula;
    s.num_vars = rng.range(2, 8);
    s.size_budget = rng.range(1, 23);
    s.neg_density = 0.1;
    s.min_negs = rng.range(1, std::min(4, 2 * s.size_budget + 1));
    s.max_negs = 4;
    const auto what = [&] { return describe(s); };
    try {
      const Circuit f = generate_circuit(s);
      std::string failed;
      double slack = std::numeric_limits<double>::infinity();
      for (GateId g = 0; g < static_cast<GateId>(f.num_gates()); ++g) {
        if (g == f.output()) continue;
        for (bool b : {false, true}) {
          const RestrictionCheck r = restriction_energy_check(f, g, b, o.cap);
          slack = std::min(slack, static_cast<double>(r.bound - r.ec_restricted));
          if (!r.holds && failed.empty()) {
            failed = " restriction g" + std::to_string(g) + "=" + (b ? "1" : "0") + " EC=" +
                     std::to_string(r.ec_restricted) + " bound=" + std::to_string(r.bound);
          }
        }
      }
      const DecompositionCheck d = check_decomposition(f, o.cap);
      if (!d.all() && failed.empty()) {
        std::ostringstream os;
        os << " decomposition T=" << d.T << " L'=" << d.leaves_prime << " EC'=" << d.ec_prime
           << " equivalent=" << d.equivalent << " leaves=" << d.leaves_ok << " blocks=" << d.blocks_ok
           << " monotoneBlocks=" << d.blocks_monotone << " leavesInBlocks=" << d.leaves_in_blocks
           << " upper=" << d.upper_ok << " lower=" << d.lower_ok << " combined=" << d.combined_ok
           << " negs=" << d.negs_ok;
        failed = os.str();
      }
      tally.check(failed.empty(), slack, [&] {
        return what() + (failed.empty() ? " restriction" : failed) + " L=" + std::to_string(d.source.leaves) +
               " negs=" + std::to_string(d.source.negs) + " EC=" + std::to_string(d.source.ec);
      });
    } catch (const Error& e) {
      tally.error(e, what);
    }
  }
}

void check_readonce(const VerifyOptions& o, Tally& tally) {
  const std::size_t count = smoke(o) ? 60 : 200;
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(k + 1, 10);
    const int leaves = rng.range(2, 16);
    GenSpec s;
    s.seed = k + 1;
    s.shape = GenShape::ReadOnceLeafNeg;
    s.num_vars = std::min(16, leaves + rng.range(0, 2));
    s.size_budget = leaves - 1;
    s.neg_density = 0.35;
    const auto what = [&] { return describe(s); };
    try {
      const ReadOnceReport r = readonce_leafneg_energy(generate_circuit(s), o.cap);
      tally.check(r.equal, 0, [&] {
        return what() + " EC=" + std::to_string(r.ec) + " L-1=" + std::to_string(r.leaves_minus_1);
      });
    } catch (const Error& e) {
      tally.error(e, what);
    }
  }
}

void check_monotone(const VerifyOptions& o, Tally& tally) {
  const std::size_t count = smoke(o) ? 60 : 200;
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(k + 1, 11);
    GenSpec s;
    s.seed = k + 1;
    s.shape = GenShape::Monotone;
    s.num_vars = rng.range(1, 10);
    s.size_budget = rng.range(1, 30);
    s.fanin = pick(rng, {Fanin::two(), Fanin::bounded(3), Fanin::unbounded()});
    const auto what = [&] { return describe(s); };
    try {
      const Circuit c = generate_circuit(s);
      const int size = structural_stats(c).size;
      const int ec = energy_exhaustive(c, o.cap).ec;
      const InputIndex all = (InputIndex{1} << c.num_vars()) - 1;
      const int top = energy_at(c, all);
      tally.check(ec == size && top == ec, 0, [&] {
        return what() + " EC=" + std::to_string(ec) + " size=" + std::to_string(size) +
               " EC(1^n)=" + std::to_string(top);
      });
    } catch (const Error& e) {
      tally.error(e, what);
    }
  }
}

void check_parity_dnf(const VerifyOptions& o, Tally& tally) {
  for (int n = 2; n <= 4; ++n) {
    const std::string name = "parity" + std::to_string(n) + "_dnf";
    const Circuit c = fixture(name);
    const int ec = energy_exhaustive(c, o.cap).ec;
    TruthTable parity(n);
    for (InputIndex a = 0; a < parity.size(); ++a) parity.set(a, std::popcount(a) % 2);
    const bool eq = truth_table(c, o.cap) == parity;
    tally.check(eq && ec <= n + 2, n + 2 - ec, [&] {
      return name + " EC=" + std::to_string(ec) + (eq ? "" : " not-parity");
    });
  }
}

void check_nonskew(const VerifyOptions& o, Tally& tally) {
  const std::size_t count = smoke(o) ? 30 : 100;
  const std::size_t samples = 2000;
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(k + 1, 13);
    GenSpec s;
    s.seed = k + 1;
    s.shape = GenShape::NonSkew;
    s.num_vars = rng.range(2, 12);
    s.size_budget = rng.range(1, 8);
    s.neg_density = 0.2;
    const auto what = [&] { return describe(s); };
    try {
      const NonSkewStats st = nonskew_energy_estimate(generate_circuit(s), samples, k + 1);
      const bool exact = st.exact_mean.has_value();
      const bool mean_ok = exact && *st.exact_mean * 4.0 >= st.t;
      tally.check(mean_ok && st.within(3.0), exact ? *st.exact_mean - st.lower_envelope : 0, [&] {
        std::ostringstream os;
        os << what() << " t=" << st.t << " mean=" << (exact ? *st.exact_mean : -1.0)
           << " empirical=" << st.empirical_mean;
        if (st.exact_stddev) os << " sigma=" << *st.exact_stddev;
        return os.str();
      });
    } catch (const Error& e) {
      tally.error(e, what);
    }
  }
}

struct CheckDef {
  const char* id;
  const char* property;
  double time_limit;
  void (*run)(const VerifyOptions&, Tally&);
};

const std::vector<CheckDef>& defs() {
  static const std::vector<CheckDef> all = {
      {"compile-tt", "compiled truth table is equivalent with EC <= 3n-1, all functions on 3 and 4 variables", 120,
       check_compile_tt},
      {"minterm-cascade", "one tap fires per input and energy <= 2n-1, n = 1..10; n = 1 has EC exactly 1", 30,
       check_minterm_cascade},
      {"dt-compile", "tree compiler: equivalent, negs <= d, EC <= 2d^2, OR fan-in 2, AND fan-in <= d+2, no literal into OR",
       300, check_dt_compile},
      {"dt-fanin2", "fan-in 2 reduction: equivalent, fan-in <= 2, EC <= 2d^2(d+1)", 300, check_dt_fanin2},
      {"psens-bound", "3 EC(C) >= psens(f) on fan-in 2 circuits and 3 EC >= n for AND_n builds", 180, check_psens},
      {"positive-path", "every positively sensitive (C, a, i) has an all-firing path to the root or a NOT", 180,
       check_positive_paths},
      {"pattern-tree", "pattern-extracted tree is equivalent, depth <= l t, t <= s^e + 1, DT(f) <= l t", 300,
       check_tradeoff},
      {"kw-energy", "KW protocol returns i with a_i = 1, b_i = 0 using at most EC(C, a') ceil(log2 c) address bits",
       300, check_kw},
      {"formula-bounds", "restriction bound, decomposition invariants and the combined formula lower bounds", 600,
       check_formulas},
      {"readonce", "read-once formulas with leaf negations have EC = L - 1", 60, check_readonce},
      {"monotone-energy", "NOT-free circuits reach EC = size at the all-ones input", 60, check_monotone},
      {"parity-dnf", "depth-2 DNF for parity on n = 2..4 variables has EC <= n + 2", 10, check_parity_dnf},
      {"nonskew-mean", "exact mean energy >= t/4; sampled mean within 3 standard errors", 120, check_nonskew},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& d : defs()) out.emplace_back(d.id);
    return out;
  }();
  return ids;
}

CheckRecord run_check(std::string_view id, const VerifyOptions& opts) {
  const auto it = std::find_if(defs().begin(), defs().end(), [&](const CheckDef& d) { return id == d.id; });
  if (it == defs().end()) throw Error(ErrorCode::ParseError, "unknown check '" + std::string(id) + "'");
  CheckRecord rec;
  rec.check_id = it->id;
  rec.property = it->property;
  rec.time_limit = it->time_limit;
  Tally tally(rec);
  const auto start = Clock::now();
  it->run(opts, tally);
  rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return rec;
}

Report verify_all(const VerifyOptions& opts) {
  Report report;
  report.suite = std::string("verify-all/") + to_string(opts.level);
  std::vector<std::string> ids = opts.only.empty() ? check_ids() : opts.only;
  const auto start = Clock::now();
  if (opts.parallel) {
    std::vector<std::future<CheckRecord>> jobs;
    for (const auto& id : ids) jobs.push_back(std::async(std::launch::async, [&opts, id] { return run_check(id, opts); }));
    for (auto& j : jobs) report.checks.push_back(j.get());
  } else {
    for (const auto& id : ids) report.checks.push_back(run_check(id, opts));
  }
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::string report_json(const Report& report) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["wallSeconds"] = report.wall_seconds;
  j["violations"] = report.violations();
  j["passed"] = report.passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"checkId", c.check_id},
                           {"property", c.property},
                           {"instancesTried", c.instances},
                           {"violations", c.violations},
                           {"extremalWitness", c.witness},
                           {"seconds", c.seconds}});
  }
  return j.dump(2);
}

}  // namespace energy
