#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "radiole/bits.hpp"
#include "radiole/codes.hpp"
#include "radiole/decay.hpp"
#include "radiole/election.hpp"
#include "radiole/graph.hpp"
#include "radiole/random.hpp"

namespace radiole {

/// Hop distance to the nearest candidate, learned by an activation wave.
/// Nodes the wave did not reach within the horizon keep kUnreachable.
struct Numbering {
  std::vector<std::uint32_t> dist;
  std::uint64_t horizon = 0;

  bool numbered(NodeId v) const { return dist[v] != kUnreachable; }
};

/// Runs `horizon` rounds of the activation wave on a beep channel.
Numbering numbering(const Graph& graph, std::span<const NodeId> candidates, std::uint64_t horizon);
Numbering numbering(const Graph& graph, std::span<const NodeId> candidates);

/// Rounds of one pipelined wave pass: horizon + 3L - 2.
std::uint64_t wave_rounds(std::uint64_t horizon, std::size_t L);

/// Per-node bit strings of length L; zero where nothing arrives.
using BitStrings = std::vector<Bits>;

/// Every numbered node receives the OR of the messages of the candidates at
/// distance dist(u) from it. Candidates keep their own message.
BitStrings beep_uplink(const Graph& graph, const Numbering& numbering, std::span<const NodeId> candidates,
                       std::span<const Bits> messages, std::size_t L);
/// Same result by playing the mod-3 schedule round by round.
BitStrings beep_uplink_rounds(const Graph& graph, const Numbering& numbering, std::span<const NodeId> candidates,
                              std::span<const Bits> messages, std::size_t L);

struct BeepClustering {
  std::vector<std::uint8_t> clustered;
  /// Candidate node of the cluster, kNoNode when unclustered.
  std::vector<NodeId> cluster;
  std::vector<std::uint8_t> boundary;
  /// Received uplink string used for the boundary probe.
  BitStrings received;
  std::uint64_t rounds = 0;

  bool is_boundary(NodeId v) const { return clustered[v] && boundary[v]; }
};

/// SI(1) clustering with candidate codewords `codewords` (parallel to
/// candidates and ids). Decoding is restricted to the given IDs.
BeepClustering beep_cluster(const Graph& graph, const Numbering& numbering, std::span<const NodeId> candidates,
                            std::span<const std::uint64_t> ids, std::span<const Bits> codewords);
/// Same with an explicit code; ids index into it and decoding uses the whole code.
BeepClustering beep_cluster(const Graph& graph, const Numbering& numbering, std::span<const NodeId> candidates,
                            std::span<const std::uint64_t> ids, const SICode& code);

/// Boundary flags from two rounds per bit (beep-listen for 1, listen-beep for 0).
std::vector<std::uint8_t> boundary_probe_rounds(const Graph& graph, const Numbering& numbering,
                                                const BitStrings& received, std::size_t L);

/// Two rounds per bit; non-boundary numbered nodes relay first-round beeps.
/// Boundary entries hold their own bits OR'd with everything heard.
BitStrings beep_intercommunicate(const Graph& graph, const Numbering& numbering, const BeepClustering& clustering,
                                 const BitStrings& messages, std::size_t L);
BitStrings beep_intercommunicate_rounds(const Graph& graph, const Numbering& numbering,
                                        const BeepClustering& clustering, const BitStrings& messages, std::size_t L);

/// Reversed waves toward the candidates. Each node forwards the OR of what
/// reaches it from dist+1, and a boundary adds its own message. Candidate
/// entries hold the result.
BitStrings beep_downlink(const Graph& graph, const Numbering& numbering, const BeepClustering& clustering,
                         const BitStrings& messages, std::size_t L);
BitStrings beep_downlink_rounds(const Graph& graph, const Numbering& numbering, const BeepClustering& clustering,
                                const BitStrings& messages, std::size_t L);

/// Boundaries compare their messages MSB first; a listening unmarked boundary
/// that hears a beep is marked and drops out. Non-boundary nodes relay.
std::vector<std::uint8_t> max_detect_intercommunicate(const Graph& graph, const Numbering& numbering,
                                                      const BeepClustering& clustering, const BitStrings& messages,
                                                      std::size_t L);

/// Candidates whose clusters have another cluster within two hops.
std::vector<std::uint8_t> beep_non_isolated(const Graph& graph, const BeepClustering& clustering,
                                            std::span<const NodeId> candidates);

struct BeepDebateOutcome {
  std::vector<std::uint8_t> survives;  // parallel to the candidate set
  std::size_t non_isolated = 0;
  std::uint64_t rounds = 0;
};

/// Deterministic round count of one debate.
std::uint64_t beep_debate_rounds(std::size_t n, std::uint64_t radius, BeepVariant variant, const Constants& constants);

BeepDebateOutcome run_debate_beep(const Graph& graph, const CandidateSet& candidates, unsigned debate_index,
                                  BeepVariant variant, const Constants& constants, const RandomSource& rng);

ElectionResult elect_leader_beep(const Graph& graph, const Constants& constants, const RandomSource& rng,
                                 BeepVariant variant = BeepVariant::Fast, std::uint64_t round_limit = 0);

}  // namespace radiole
