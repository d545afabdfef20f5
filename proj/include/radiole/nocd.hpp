#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "radiole/channel.hpp"
#include "radiole/decay.hpp"
#include "radiole/election.hpp"
#include "radiole/graph.hpp"
#include "radiole/random.hpp"

namespace radiole {

enum class NodeStatus : std::uint8_t {
  Unclustered,
  Candidate,
  Internal,
  BoundaryActive,
  BoundaryInactive,
  Undecided,
};

const char* to_string(NodeStatus s);

struct Clustering {
  std::vector<NodeStatus> status;
  /// Candidate node of the cluster, kNoNode when unclustered.
  std::vector<NodeId> cluster;
  /// Node whose packet recruited this one in the latest growth step.
  std::vector<NodeId> recruiter;
  std::vector<std::uint8_t> marked;

  static Clustering trivial(std::size_t n, std::span<const NodeId> candidates);

  bool clustered(NodeId v) const { return cluster[v] != kNoNode; }
  /// Candidates count as internal nodes of their own cluster.
  bool internal(NodeId v) const { return status[v] == NodeStatus::Internal || status[v] == NodeStatus::Candidate; }
  bool boundary(NodeId v) const {
    return status[v] == NodeStatus::BoundaryActive || status[v] == NodeStatus::BoundaryInactive;
  }
};

/// Timing parameters of one debate.
struct DebatePlan {
  std::size_t n = 1;
  std::uint64_t radius = 0;
  std::uint64_t diameter = 0;
  unsigned L = 1;
  unsigned delta = 1;
  unsigned cluster_epochs = 1;
  unsigned refine_epochs = 1;
  Constants constants;

  static DebatePlan make(std::size_t n, std::uint64_t diameter, std::uint64_t radius, const Constants& constants);

  std::uint64_t step1_rounds() const;
  std::uint64_t boundary_rounds() const;
  std::uint64_t long_phase_rounds() const;
  std::uint64_t cluster_epoch_rounds() const;
  std::uint64_t refine_epoch_rounds() const;
  /// alpha (R' delta + L^2) with R' = min(D, radius + refine_epochs).
  std::uint64_t cast_rounds() const;
  std::uint64_t intercom_rounds() const;
  std::uint64_t debate_rounds() const;
};

/// Checks that every clustered node reaches its candidate through internal
/// nodes of its own cluster.
bool clustering_intact(const Graph& graph, const Clustering& c);

/// Hook called after each Fast-Cluster epoch.
using EpochHook = std::function<void(unsigned epoch, const Clustering&)>;

Clustering fast_cluster(Channel& channel, std::span<const NodeId> candidates, const DebatePlan& plan,
                        const RandomSource& rng, const EpochHook& hook = {});
Clustering fast_cluster(const Graph& graph, std::span<const NodeId> candidates, std::uint64_t radius_budget,
                        const Constants& constants, const RandomSource& rng);

void cluster_refine(Channel& channel, Clustering& c, const DebatePlan& plan, unsigned epochs, const RandomSource& rng);

enum class CastDirection { Up, Down };

struct CastResult {
  /// Up: whether the node holds its candidate's message. Down: unused.
  std::vector<std::uint8_t> holds;
  /// Down: per node, the internal source whose message arrived first
  /// (meaningful at candidates), kNoNode if none.
  std::vector<NodeId> origin;
};

/// Fast-Decay restricted to internal nodes; a listener keeps only packets
/// from its own cluster. Up: candidates are the sources. Down: `holders`
/// are the sources and candidates only listen.
CastResult cluster_cast(Channel& channel, const Clustering& c, CastDirection direction,
                        std::span<const std::uint8_t> holders, const DebatePlan& plan, const RandomSource& rng);

/// Per internal node, foreign clusters in order of first reception.
using ForeignLists = std::vector<std::vector<NodeId>>;

/// Epochs with per-cluster activation 1/log n and 3 Decay phases each.
/// `informed` marks internal nodes that carry their cluster's message.
ForeignLists intercommunicate(Channel& channel, const Clustering& c, std::span<const std::uint8_t> informed,
                              const DebatePlan& plan, const RandomSource& rng);

struct Overlay {
  std::vector<NodeId> candidates;
  /// Indexed like `candidates`; kNoNode / empty where absent.
  std::vector<NodeId> parent;
  std::vector<std::vector<NodeId>> children;
  std::vector<std::vector<NodeId>> known_children;

  std::size_t index_of(NodeId candidate) const;
  /// min(|known_children| + [parent exists], 5)
  unsigned flattened_degree(std::size_t i) const;
};

Overlay build_overlay(Channel& channel, const Clustering& c, std::span<const NodeId> candidates,
                      const DebatePlan& plan, const RandomSource& rng);

struct CandidatePair {
  unsigned degree = 0;
  std::uint64_t id = 0;
  auto operator<=>(const CandidatePair&) const = default;
};

/// Rule on exact data: survive iff degree >= 5 or no pair received from the
/// parent and known children is larger.
std::vector<std::uint8_t> modified_elimination(const Overlay& overlay, std::span<const std::uint64_t> ids);

/// Basic Elimination Algorithm on an arbitrary graph: a node drops out iff a
/// neighbor's (degree, ID) pair is larger.
std::vector<std::uint8_t> elimination(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                                      std::span<const std::uint64_t> ids);

/// Candidates whose clusters have internal nodes within 3 hops of another
/// cluster's internal nodes.
std::vector<std::uint8_t> nocd_non_isolated(const Graph& graph, const Clustering& c,
                                            std::span<const NodeId> candidates);

struct NocdDebateOutcome {
  std::vector<std::uint8_t> survives;  // parallel to the candidate set
  std::size_t non_isolated = 0;
  std::uint64_t rounds = 0;
  Clustering clustering;
  Overlay overlay;
};

NocdDebateOutcome run_debate_nocd(Channel& channel, const CandidateSet& candidates, unsigned debate_index,
                                  const Constants& constants, const RandomSource& rng);
NocdDebateOutcome run_debate_nocd(const Graph& graph, const CandidateSet& candidates, unsigned debate_index,
                                  const Constants& constants, const RandomSource& rng);

/// Budget of the final broadcast: alpha (D delta + L^2).
std::uint64_t nocd_final_rounds(std::size_t n, std::uint64_t diameter, const Constants& constants);

ElectionResult elect_leader_nocd(const Graph& graph, const Constants& constants, const RandomSource& rng,
                                 std::uint64_t round_limit = 0, RoundObserver* observer = nullptr);

}  // namespace radiole
