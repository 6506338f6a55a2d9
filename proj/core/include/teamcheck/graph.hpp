#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teamcheck/structure.hpp"

namespace tc {

// Simple undirected graph; each edge is stored once as (u, v) with u < v.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  explicit Graph(std::size_t vertex_count = 0) : vertex_count_(vertex_count) {}
  Graph(std::size_t vertex_count, const std::vector<Edge>& edges);

  std::size_t vertex_count() const { return vertex_count_; }
  const std::set<Edge>& edges() const { return edges_; }
  bool adjacent(std::size_t u, std::size_t v) const;
  void add_edge(std::size_t u, std::size_t v);

  static Graph complete(std::size_t n);
  static Graph path(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph star(std::size_t leaves);  // vertex 0 is the center

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t vertex_count_;
  std::set<Edge> edges_;
};

// `p <n> <m>` then m lines `e <u> <v>`, 0-based; '#' comments.
Graph parse_graph(std::string_view text);
std::string render_graph(const Graph& graph);

// Graph number `mask` on n vertices: bit i of mask selects the i-th pair
// (u, v), u < v, in lexicographic order. Masks range over 2^(n(n-1)/2).
Graph graph_from_mask(std::size_t n, std::uint64_t mask);

enum class GraphProblem { kClique, kIndependentSet, kDominatingSet };

std::string_view problem_name(GraphProblem problem);
GraphProblem parse_problem(std::string_view name);

// Exhaustive search over all k-subsets of the vertices.
bool graph_brute(GraphProblem problem, const Graph& graph, std::size_t k);

// The graph as a structure over its vertices with the symmetric edge
// relation E; elements are labelled v0, v1, ...
Structure graph_structure(const Graph& graph);

}  // namespace tc
