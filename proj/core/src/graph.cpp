#include "teamcheck/graph.hpp"

#include <algorithm>
#include <sstream>

#include "teamcheck/error.hpp"

namespace tc {

Graph::Graph(std::size_t vertex_count, const std::vector<Edge>& edges)
    : vertex_count_(vertex_count) {
  for (auto [u, v] : edges) add_edge(u, v);
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return edges_.contains({u, v});
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= vertex_count_ || v >= vertex_count_)
    throw InputError("edge endpoint outside [0, " + std::to_string(vertex_count_) + ")");
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  if (u > v) std::swap(u, v);
  edges_.insert({u, v});
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::path(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

Graph Graph::cycle(std::size_t n) {
  Graph g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

Graph Graph::star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (std::size_t v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::size_t declared_edges = 0;
  Graph g;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "p") {
      if (header) throw ParseError("duplicate 'p' line", line_no, 1);
      long long n = -1, m = -1;
      if (!(ls >> n >> m) || n < 0 || m < 0) throw ParseError("expected 'p <n> <m>'", line_no, 1);
      g = Graph(static_cast<std::size_t>(n));
      declared_edges = static_cast<std::size_t>(m);
      header = true;
    } else if (tag == "e") {
      if (!header) throw ParseError("edge before 'p' line", line_no, 1);
      long long u = -1, v = -1;
      if (!(ls >> u >> v) || u < 0 || v < 0) throw ParseError("expected 'e <u> <v>'", line_no, 1);
      try {
        g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
      } catch (const InputError& e) {
        throw ParseError(e.what(), line_no, 1);
      }
    } else {
      throw ParseError("unknown line tag '" + tag + "'", line_no, 1);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing token '" + extra + "'", line_no, 1);
  }
  if (!header) throw ParseError("missing 'p <n> <m>' line", line_no ? line_no : 1, 1);
  if (g.edges().size() != declared_edges)
    throw InputError("header declares " + std::to_string(declared_edges) + " edges, found " +
                     std::to_string(g.edges().size()));
  return g;
}

std::string render_graph(const Graph& graph) {
  std::string out = "p " + std::to_string(graph.vertex_count()) + " " +
                    std::to_string(graph.edges().size()) + "\n";
  for (auto [u, v] : graph.edges())
    out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  Graph g(n);
  std::size_t bit = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) g.add_edge(u, v);
  return g;
}

std::string_view problem_name(GraphProblem problem) {
  switch (problem) {
    case GraphProblem::kClique: return "clique";
    case GraphProblem::kIndependentSet: return "indset";
    case GraphProblem::kDominatingSet: return "domset";
  }
  return "?";
}

GraphProblem parse_problem(std::string_view name) {
  if (name == "clique") return GraphProblem::kClique;
  if (name == "indset") return GraphProblem::kIndependentSet;
  if (name == "domset") return GraphProblem::kDominatingSet;
  throw InputError("unknown graph problem '" + std::string(name) + "'");
}

namespace {

bool accepts(GraphProblem problem, const Graph& g, const std::vector<std::size_t>& s) {
  switch (problem) {
    case GraphProblem::kClique:
    case GraphProblem::kIndependentSet: {
      bool want = problem == GraphProblem::kClique;
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
          if (g.adjacent(s[i], s[j]) != want) return false;
      return true;
    }
    case GraphProblem::kDominatingSet:
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        bool dominated = std::any_of(s.begin(), s.end(), [&](std::size_t u) {
          return u == v || g.adjacent(u, v);
        });
        if (!dominated) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

bool graph_brute(GraphProblem problem, const Graph& graph, std::size_t k) {
  const std::size_t n = graph.vertex_count();
  if (k > n) return false;
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
  do {
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < n; ++v)
      if (pick[v]) s.push_back(v);
    if (accepts(problem, graph, s)) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

Structure graph_structure(const Graph& graph) {
  if (graph.vertex_count() == 0) throw InputError("a graph structure needs at least one vertex");
  TupleSet e;
  for (auto [u, v] : graph.edges()) {
    e.insert({static_cast<Element>(u), static_cast<Element>(v)});
    e.insert({static_cast<Element>(v), static_cast<Element>(u)});
  }
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) labels.push_back("v" + std::to_string(v));
  return Structure(Vocabulary({{"E", 2}}, {}), graph.vertex_count(), {{"E", std::move(e)}}, {},
                   std::move(labels));
}

}  // namespace tc
