#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace radiole {

using NodeId = std::uint32_t;
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected, connected, simple graph with its diameter computed at load.
class Graph {
 public:
  Graph() = default;

  /// Builds and validates a graph. Throws GraphError on self-loops,
  /// duplicate edges, out-of-range endpoints or a disconnected topology.
  static Graph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::uint32_t diameter() const { return diameter_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  bool adjacent(NodeId u, NodeId v) const;
  std::vector<std::pair<NodeId, NodeId>> edges() const;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
  std::uint32_t diameter_ = 0;
};

/// Hop distance from the nearest source, kUnreachable where none is reachable.
std::vector<std::uint32_t> bfs_distances(const Graph& graph, std::span<const NodeId> sources);

/// Parses "n" followed by one "u v" edge per line (0-indexed).
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& graph);

/// ceil(log2(x)) for x >= 1, with ceil_log2(1) == 0.
inline unsigned ceil_log2(std::uint64_t x) {
  unsigned r = 0;
  while ((std::uint64_t{1} << r) < x) ++r;
  return r;
}

/// The "log n" used for round budgets: ceil(log2 n), at least 1.
inline unsigned log_n(std::size_t n) {
  const unsigned l = ceil_log2(n);
  return l == 0 ? 1 : l;
}

}  // namespace radiole
