#include "teamcheck/circuit.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>

#include "teamcheck/error.hpp"

namespace tc {

BooleanCircuit::BooleanCircuit(std::vector<GateKind> gates, std::set<Edge> edges,
                               std::size_t output)
    : gates_(std::move(gates)), edges_(std::move(edges)), output_(output) {
  const std::size_t m = gates_.size();
  if (m == 0) throw InputError("circuit has no gates");
  if (output_ >= m) throw InputError("output gate " + std::to_string(output_) + " does not exist");
  children_.assign(m, {});
  std::vector<std::vector<std::size_t>> parents(m);
  for (auto [c, p] : edges_) {
    if (c >= m || p >= m) throw InputError("edge refers to a missing gate");
    if (gates_[p] == GateKind::kInput)
      throw InputError("input gate " + std::to_string(p) + " has an incoming edge");
    children_[p].push_back(c);
    parents[c].push_back(p);
  }
  std::vector<std::size_t> pending(m);
  for (std::size_t g = 0; g < m; ++g) pending[g] = children_[g].size();
  for (std::size_t g = 0; g < m; ++g)
    if (pending[g] == 0) order_.push_back(g);
  for (std::size_t i = 0; i < order_.size(); ++i)
    for (auto p : parents[order_[i]])
      if (--pending[p] == 0) order_.push_back(p);
  if (order_.size() != m) throw InputError("circuit contains a cycle");
}

std::vector<std::size_t> BooleanCircuit::inputs() const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < gates_.size(); ++g)
    if (gates_[g] == GateKind::kInput) out.push_back(g);
  return out;
}

BooleanCircuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::map<std::size_t, GateKind> gates;
  std::set<BooleanCircuit::Edge> edges;
  std::optional<std::size_t> output;
  auto number = [&](std::istringstream& ls, const char* what) {
    long long v = -1;
    if (!(ls >> v) || v < 0) throw ParseError(std::string("expected ") + what, line_no, 1);
    return static_cast<std::size_t>(v);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "gate") {
      auto id = number(ls, "gate id");
      std::string kind;
      ls >> kind;
      GateKind k;
      if (kind == "and")
        k = GateKind::kAnd;
      else if (kind == "or")
        k = GateKind::kOr;
      else if (kind == "input")
        k = GateKind::kInput;
      else
        throw ParseError("gate kind must be and, or or input", line_no, 1);
      if (!gates.emplace(id, k).second)
        throw ParseError("gate " + std::to_string(id) + " declared twice", line_no, 1);
    } else if (tag == "edge") {
      auto c = number(ls, "child gate");
      auto p = number(ls, "parent gate");
      edges.insert({c, p});
    } else if (tag == "output") {
      if (output) throw ParseError("duplicate output line", line_no, 1);
      output = number(ls, "output gate");
    } else {
      throw ParseError("unknown line tag '" + tag + "'", line_no, 1);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing token '" + extra + "'", line_no, 1);
  }
  if (!output) throw InputError("circuit has no output line");
  std::vector<GateKind> kinds;
  for (const auto& [id, k] : gates) {
    if (id != kinds.size()) throw InputError("gate ids must be 0..m-1 without gaps");
    kinds.push_back(k);
  }
  return BooleanCircuit(std::move(kinds), std::move(edges), *output);
}

std::string render_circuit(const BooleanCircuit& circuit) {
  std::string out;
  for (std::size_t g = 0; g < circuit.gate_count(); ++g) {
    out += "gate " + std::to_string(g) + " ";
    switch (circuit.kind(g)) {
      case GateKind::kInput: out += "input\n"; break;
      case GateKind::kAnd: out += "and\n"; break;
      case GateKind::kOr: out += "or\n"; break;
    }
  }
  for (auto [c, p] : circuit.edges())
    out += "edge " + std::to_string(c) + " " + std::to_string(p) + "\n";
  out += "output " + std::to_string(circuit.output()) + "\n";
  return out;
}

namespace {

void check_inputs(const BooleanCircuit& circuit, const std::set<std::size_t>& true_inputs) {
  for (auto g : true_inputs)
    if (g >= circuit.gate_count() || circuit.kind(g) != GateKind::kInput)
      throw InputError("gate " + std::to_string(g) + " is not an input");
}

}  // namespace

bool circuit_eval(const BooleanCircuit& circuit, const std::set<std::size_t>& true_inputs) {
  check_inputs(circuit, true_inputs);
  std::vector<char> value(circuit.gate_count(), 0);
  for (auto g : circuit.topological_order()) {
    const auto& kids = circuit.children(g);
    switch (circuit.kind(g)) {
      case GateKind::kInput: value[g] = true_inputs.contains(g); break;
      case GateKind::kAnd:
        value[g] = std::all_of(kids.begin(), kids.end(), [&](auto c) { return value[c] != 0; });
        break;
      case GateKind::kOr:
        value[g] = std::any_of(kids.begin(), kids.end(), [&](auto c) { return value[c] != 0; });
        break;
    }
  }
  return value[circuit.output()] != 0;
}

bool proof_tree_exists(const BooleanCircuit& circuit, const std::set<std::size_t>& true_inputs) {
  check_inputs(circuit, true_inputs);
  const std::size_t m = circuit.gate_count();
  if (m > 24) throw InputError("proof-tree search is limited to 24 gates");
  for (std::uint32_t p = 0; p < (std::uint32_t{1} << m); ++p) {
    auto in = [&](std::size_t g) { return (p >> g & 1) != 0; };
    if (!in(circuit.output())) continue;
    bool ok = true;
    for (std::size_t g = 0; g < m && ok; ++g) {
      const auto& kids = circuit.children(g);
      switch (circuit.kind(g)) {
        case GateKind::kInput: ok = in(g) == true_inputs.contains(g); break;
        case GateKind::kOr:
          ok = !in(g) || std::any_of(kids.begin(), kids.end(), in);
          break;
        case GateKind::kAnd:
          ok = !in(g) || std::all_of(kids.begin(), kids.end(), in);
          break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace tc
