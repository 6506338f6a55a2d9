#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tc {

enum class GateKind { kInput, kAnd, kOr };

// Monotone Boolean circuit on gates 0..m-1. An edge (c, p) means gate c
// feeds gate p. An AND gate without inputs is true, an OR gate without
// inputs is false.
class BooleanCircuit {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  BooleanCircuit(std::vector<GateKind> gates, std::set<Edge> edges, std::size_t output);

  std::size_t gate_count() const { return gates_.size(); }
  GateKind kind(std::size_t gate) const { return gates_.at(gate); }
  const std::vector<GateKind>& gates() const { return gates_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::size_t output() const { return output_; }
  const std::vector<std::size_t>& children(std::size_t gate) const { return children_.at(gate); }
  std::vector<std::size_t> inputs() const;
  // Gates ordered so that every gate comes after all of its children.
  const std::vector<std::size_t>& topological_order() const { return order_; }

 private:
  std::vector<GateKind> gates_;
  std::set<Edge> edges_;
  std::size_t output_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> order_;
};

// Lines `gate <id> and|or|input`, `edge <child> <parent>`, `output <id>`.
// Gate ids must be exactly 0..m-1.
BooleanCircuit parse_circuit(std::string_view text);
std::string render_circuit(const BooleanCircuit& circuit);

// Bottom-up evaluation with the inputs in `true_inputs` set to true.
bool circuit_eval(const BooleanCircuit& circuit, const std::set<std::size_t>& true_inputs);

// Searches all gate subsets P for one with: the output in P, P ∩ inputs
// equal to `true_inputs`, every OR gate in P fed by some gate of P, and
// every AND gate in P fed only by gates of P.
bool proof_tree_exists(const BooleanCircuit& circuit, const std::set<std::size_t>& true_inputs);

}  // namespace tc
