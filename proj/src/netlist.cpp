#include "energy/netlist.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace energy {
namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<int> numbered(std::string_view token, char prefix) {
  if (token.size() < 2 || token[0] != prefix) return std::nullopt;
  int value = 0;
  const auto* first = token.data() + 1;
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || value < 0) return std::nullopt;
  return value;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

}  // namespace

Circuit parse_netlist(std::string_view text, Shape shape) {
  std::vector<Line> lines;
  std::optional<int> declared_vars;
  std::optional<Fanin> declared_fanin;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) {
      for (const auto& tok : split_ws(raw.substr(hash + 1))) {
        if (tok.rfind("vars=", 0) == 0) {
          declared_vars = std::stoi(tok.substr(5));
        } else if (tok == "fanin=2") {
          declared_fanin = Fanin::two();
        } else if (tok == "fanin=unbounded") {
          declared_fanin = Fanin::unbounded();
        } else if (tok.rfind("fanin=bounded:", 0) == 0) {
          declared_fanin = Fanin::bounded(std::stoi(tok.substr(14)));
        } else if (tok == "formula") {
          shape = Shape::Formula;
        }
      }
      raw = raw.substr(0, hash);
    }
    auto tokens = split_ws(raw);
    if (!tokens.empty()) lines.push_back({line_no, std::move(tokens)});
    if (end == text.size()) break;
  }

  // First pass: names and positions, so forward references can be told apart
  // from references to names that never appear.
  std::unordered_map<std::string, GateId> names;
  GateId position = 0;
  bool saw_output = false;
  for (const Line& ln : lines) {
    const auto& t = ln.tokens;
    if (t[0] == "OUTPUT") {
      if (saw_output) parse_fail(ln.number, "more than one OUTPUT");
      saw_output = true;
      continue;
    }
    if (saw_output) parse_fail(ln.number, "declaration after OUTPUT");
    if (t[0] == "INPUT") {
      if (t.size() != 2 || !numbered(t[1], 'x')) parse_fail(ln.number, "expected INPUT x<k>");
    } else {
      if (t.size() < 3 || t[1] != "=") parse_fail(ln.number, "expected <name> = <KIND> ...");
      if (!names.emplace(t[0], position).second) parse_fail(ln.number, "duplicate name " + t[0]);
    }
    ++position;
  }
  if (!saw_output) throw Error(ErrorCode::ParseError, "missing OUTPUT line");

  std::vector<Gate> gates;
  std::unordered_map<int, std::vector<GateId>> inputs_by_var;
  int max_var = -1;

  const auto resolve = [&](const std::string& ref, std::size_t number) -> GateId {
    const auto current = static_cast<GateId>(gates.size());
    if (auto it = names.find(ref); it != names.end()) {
      if (it->second >= current) {
        throw Error(ErrorCode::CycleOrForwardRef, "line " + std::to_string(number) + ": " + ref);
      }
      return it->second;
    }
    if (auto id = numbered(ref, 'g')) {
      if (*id >= current) {
        throw Error(ErrorCode::CycleOrForwardRef, "line " + std::to_string(number) + ": " + ref);
      }
      return *id;
    }
    if (auto var = numbered(ref, 'x')) {
      auto it = inputs_by_var.find(*var);
      if (it == inputs_by_var.end()) {
        throw Error(ErrorCode::UnknownGateRef, "line " + std::to_string(number) + ": " + ref);
      }
      if (it->second.size() != 1) {
        throw Error(ErrorCode::UnknownGateRef,
                    "line " + std::to_string(number) + ": " + ref + " is ambiguous");
      }
      return it->second.front();
    }
    throw Error(ErrorCode::UnknownGateRef, "line " + std::to_string(number) + ": " + ref);
  };

  GateId output = -1;
  for (const Line& ln : lines) {
    const auto& t = ln.tokens;
    if (t[0] == "OUTPUT") {
      if (t.size() != 2) parse_fail(ln.number, "expected OUTPUT <ref>");
      output = resolve(t[1], ln.number);
      continue;
    }
    if (t[0] == "INPUT") {
      const int var = *numbered(t[1], 'x');
      max_var = std::max(max_var, var);
      inputs_by_var[var].push_back(static_cast<GateId>(gates.size()));
      gates.push_back(Gate::input(var));
      continue;
    }
    const std::string& kind = t[2];
    std::vector<GateId> children;
    for (std::size_t k = 3; k < t.size(); ++k) {
      if (kind == "CONST") break;
      children.push_back(resolve(t[k], ln.number));
    }
    if (kind == "CONST") {
      if (t.size() != 4 || (t[3] != "0" && t[3] != "1")) parse_fail(ln.number, "expected CONST 0|1");
      gates.push_back(Gate::constant(t[3] == "1"));
    } else if (kind == "NOT") {
      if (children.size() != 1) {
        throw Error(ErrorCode::ArityViolation, "line " + std::to_string(ln.number) + ": NOT takes 1 input");
      }
      gates.push_back(Gate::not_of(children[0]));
    } else if (kind == "AND" || kind == "OR") {
      if (children.size() < 2) {
        throw Error(ErrorCode::ArityViolation,
                    "line " + std::to_string(ln.number) + ": " + kind + " takes at least 2 inputs");
      }
      gates.push_back(kind == "AND" ? Gate::and_of(std::move(children)) : Gate::or_of(std::move(children)));
    } else {
      parse_fail(ln.number, "unknown gate kind " + kind);
    }
  }

  const int num_vars = declared_vars.value_or(max_var + 1);
  const Fanin fanin = declared_fanin.value_or(infer_fanin(gates));
  return Circuit(num_vars, std::move(gates), output, fanin, shape);
}

std::string serialize_netlist(const Circuit& c, std::string_view header) {
  std::ostringstream out;
  if (!header.empty()) {
    std::istringstream in{std::string(header)};
    std::string line;
    while (std::getline(in, line)) out << "# " << line << '\n';
  }
  out << "# vars=" << c.num_vars();
  switch (c.fanin().mode) {
    case FaninMode::Fanin2: out << " fanin=2"; break;
    case FaninMode::Bounded: out << " fanin=bounded:" << c.fanin().bound; break;
    case FaninMode::Unbounded: out << " fanin=unbounded"; break;
  }
  if (c.is_formula()) out << " formula";
  out << '\n';
  for (std::size_t id = 0; id < c.num_gates(); ++id) {
    const Gate& g = c.gates()[id];
    if (g.is_input()) {
      out << "INPUT x" << g.payload << '\n';
      continue;
    }
    out << 'g' << id << " = " << to_string(g.kind);
    if (g.is_const()) {
      out << ' ' << g.payload;
    } else {
      for (GateId ch : g.children) out << " g" << ch;
    }
    out << '\n';
  }
  out << "OUTPUT g" << c.output() << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

struct TreeParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size()) {
      if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "decision tree at offset " + std::to_string(pos) + ": " + what);
  }

  DecisionTree node() {
    skip();
    if (pos >= text.size()) fail("unexpected end");
    const char c = text[pos];
    if (c == '0' || c == '1') {
      ++pos;
      return DecisionTree::leaf(c == '1');
    }
    if (c != '(') fail("expected '(' or leaf");
    ++pos;
    skip();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')') {
      ++pos;
    }
    const auto var = numbered(text.substr(start, pos - start), 'x');
    if (!var) fail("expected x<k>");
    DecisionTree low = node();
    DecisionTree high = node();
    skip();
    if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
    ++pos;
    return DecisionTree::branch(*var, low, high);
  }
};

void write_tree(const DecisionTree& t, int node, std::ostringstream& out) {
  const auto& nd = t.nodes[static_cast<std::size_t>(node)];
  if (nd.is_leaf) {
    out << (nd.leaf_value ? '1' : '0');
    return;
  }
  out << "(x" << nd.var << ' ';
  write_tree(t, nd.low, out);
  out << ' ';
  write_tree(t, nd.high, out);
  out << ')';
}

}  // namespace

DecisionTree parse_decision_tree(std::string_view text) {
  TreeParser p{text};
  DecisionTree t = p.node();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing characters");
  return t;
}

std::string serialize_decision_tree(const DecisionTree& t) {
  std::ostringstream out;
  write_tree(t, 0, out);
  return out.str();
}

TruthTable parse_truth_table(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (text.substr(pos, 2) != "n=") throw Error(ErrorCode::ParseError, "truth table must start with n=<k>");
  pos += 2;
  int n = 0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), n);
  if (ec != std::errc() || n < 0) throw Error(ErrorCode::ParseError, "bad variable count");
  pos = static_cast<std::size_t>(ptr - text.data());
  std::vector<bool> bits;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '0' || c == '1') {
      bits.push_back(c == '1');
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::ParseError, std::string("unexpected character '") + c + "'");
    }
  }
  return TruthTable::from_bits(n, bits);
}

std::string serialize_truth_table(const TruthTable& t) {
  std::string s = "n=" + std::to_string(t.num_vars()) + "\n";
  for (std::uint64_t i = 0; i < t.size(); ++i) s.push_back(t.get(i) ? '1' : '0');
  s.push_back('\n');
  return s;
}

}  // namespace energy
