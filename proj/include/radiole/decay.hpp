#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "radiole/channel.hpp"
#include "radiole/graph.hpp"
#include "radiole/random.hpp"

namespace radiole {

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

struct DecayConfig {
  unsigned phase_len = 1;
  unsigned long_phase_factor = 24;
  unsigned alpha = 12;
  unsigned delta = 1;

  std::uint64_t long_phase_rounds() const { return std::uint64_t{long_phase_factor} * phase_len; }
  /// alpha * (distance * delta + phase_len^2)
  std::uint64_t broadcast_budget(std::uint64_t distance) const {
    return std::uint64_t{alpha} * (distance * delta + std::uint64_t{phase_len} * phase_len);
  }
};

/// Smallest k >= 1 with d * 2^k >= n, i.e. max(1, ceil(log2(n/d))).
unsigned delay_for(std::size_t n, std::uint64_t d);

DecayConfig make_decay_config(std::size_t n, std::uint64_t diameter);

/// Transmit probability as a function of rounds since a node started sending.
struct ProbabilitySchedule {
  std::function<double(std::uint64_t)> probability;

  /// 2^-1, 2^-2, ..., 2^-phase_len, repeated.
  static ProbabilitySchedule repeated_decay(unsigned phase_len);
};

/// Exponent used in round `offset` of a decay phase: 1 + offset mod phase_len.
inline unsigned decay_exponent(std::uint64_t offset, unsigned phase_len) {
  return 1 + static_cast<unsigned>(offset % phase_len);
}

/// First reception per node: the sending neighbor and the round offset.
struct DecayOutcome {
  std::vector<NodeId> from;
  std::vector<std::uint64_t> round;

  bool received(NodeId v) const { return from[v] != kNoNode; }
};

/// Decay phases by a fixed sender set for `rounds` rounds. `listening` marks
/// the interested listeners (empty: every non-sender).
DecayOutcome run_frozen_decay(Channel& channel, std::span<const NodeId> senders, std::vector<std::uint8_t> listening,
                              unsigned phase_len, std::uint64_t rounds, const RandomSource& rng,
                              std::uint64_t tag = purpose::kDecay);

/// One phase of Decay by a fixed sender set; everyone else listens.
DecayOutcome decay_phase(Channel& channel, std::span<const NodeId> senders, const DecayConfig& config,
                         const RandomSource& rng);
DecayOutcome decay_phase(const Graph& graph, std::span<const NodeId> senders, const RandomSource& rng);

/// long_phase_factor phases by the original senders only.
DecayOutcome long_phase(Channel& channel, std::span<const NodeId> senders, const DecayConfig& config,
                        const RandomSource& rng);
DecayOutcome long_phase(const Graph& graph, std::span<const NodeId> senders, const RandomSource& rng,
                        unsigned long_phase_factor = 24);

/// Node roles in a Fast-Decay run.
enum class DecayRole : std::uint8_t { Inert = 0, Relay = 1, Sink = 2 };

struct FastDecaySpec {
  std::vector<NodeId> sources;
  /// Per node; empty means every non-source relays.
  std::vector<DecayRole> roles;
  /// Whether a listener keeps a packet from this sender; empty accepts all.
  std::function<bool(NodeId listener, NodeId sender)> accept;
  unsigned delta = 1;
  const ProbabilitySchedule* schedule = nullptr;
  std::uint64_t rounds = 0;
  std::uint64_t tag = purpose::kFastDecay;
  /// Skip the rest of the budget once no reception is possible.
  bool skip_idle = true;
};

struct FastDecayOutcome {
  std::vector<NodeId> from;
  std::vector<NodeId> origin;
  /// Round offset of the first reception; sources have 0.
  std::vector<std::uint64_t> round;

  bool informed(NodeId v) const { return origin[v] != kNoNode; }
};

/// Runs exactly spec.rounds rounds on the channel clock.
FastDecayOutcome run_fast_decay(Channel& channel, const FastDecaySpec& spec, const RandomSource& rng);

/// Network-wide Fast-Decay(delta) broadcast. Throws ConfigError if T is below
/// alpha * (D * delta + phase_len^2).
FastDecayOutcome fast_decay_broadcast(const Graph& graph, std::span<const NodeId> sources, unsigned delta,
                                      const ProbabilitySchedule& schedule, std::uint64_t T,
                                      const RandomSource& rng, unsigned alpha = 12, RoundObserver* observer = nullptr);

/// Exact probability that a listener with m sending neighbors receives in one phase.
double phase_success_oracle(std::uint64_t m, unsigned phase_len);

}  // namespace radiole
