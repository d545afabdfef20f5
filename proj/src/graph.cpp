#include "radiole/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace radiole {

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
  if (n == 0) throw GraphError("graph must have at least one node");
  Graph g;
  g.adjacency_.assign(n, {});
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw GraphError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end());
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end()) throw GraphError("duplicate edge");
  }
  g.edge_count_ = edges.size();

  std::uint32_t diameter = 0;
  for (NodeId s = 0; s < n; ++s) {
    const NodeId src[] = {s};
    const auto dist = bfs_distances(g, src);
    for (auto d : dist) {
      if (d == kUnreachable) throw GraphError("graph is not connected");
      diameter = std::max(diameter, d);
    }
  }
  g.diameter_ = diameter;
  return g;
}

bool Graph::adjacent(NodeId u, NodeId v) const {
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::uint32_t> bfs_distances(const Graph& graph, std::span<const NodeId> sources) {
  if (sources.empty()) throw std::invalid_argument("bfs_distances: empty source set");
  std::vector<std::uint32_t> dist(graph.size(), kUnreachable);
  std::vector<NodeId> frontier;
  for (NodeId s : sources) {
    if (s >= graph.size()) throw std::invalid_argument("bfs_distances: source out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  std::vector<NodeId> next;
  for (std::uint32_t d = 1; !frontier.empty(); ++d) {
    next.clear();
    for (NodeId u : frontier) {
      for (NodeId v : graph.neighbors(u)) {
        if (dist[v] == kUnreachable) {
          dist[v] = d;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  bool have_n = false;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (!have_n) {
      long long value = 0;
      if (!(ls >> value)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw GraphError("line " + std::to_string(lineno) + ": expected node count");
      }
      if (value <= 0) throw GraphError("node count must be positive");
      n = static_cast<std::size_t>(value);
      have_n = true;
      continue;
    }
    long long u = 0;
    long long v = 0;
    if (!(ls >> u)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw GraphError("line " + std::to_string(lineno) + ": malformed edge");
    }
    if (!(ls >> v)) throw GraphError("line " + std::to_string(lineno) + ": malformed edge");
    std::string rest;
    if (ls >> rest) throw GraphError("line " + std::to_string(lineno) + ": trailing data");
    if (u < 0 || v < 0) throw GraphError("line " + std::to_string(lineno) + ": negative node id");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  if (!have_n) throw GraphError("empty graph file");
  return Graph::from_edges(n, edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << graph.size() << '\n';
  for (const auto& [u, v] : graph.edges()) out << u << ' ' << v << '\n';
}

}  // namespace radiole
