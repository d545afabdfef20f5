#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "radiole/bits.hpp"
#include "radiole/graph.hpp"
#include "radiole/random.hpp"

namespace radiole {

enum class Model { NoCD, Beep };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// What a node does in one round. In the beep model `transmit` means beep
/// and the packet is ignored.
struct RoundAction {
  bool transmit = false;
  Bits packet;

  static RoundAction listen() { return {}; }
  static RoundAction send(Bits packet) { return {true, std::move(packet)}; }
  static RoundAction beep() { return {true, {}}; }
  bool operator==(const RoundAction&) const = default;
};

/// What a node perceives. NoCD: Received(packet) or Nothing.
/// Beep: `received` is HeardBeep, otherwise Quiet.
struct Reception {
  bool received = false;
  Bits packet;

  bool heard() const { return received; }
  bool operator==(const Reception&) const = default;
};

/// Computes all receptions of one synchronous round from the full action vector.
std::vector<Reception> step(const Graph& graph, Model model, std::span<const RoundAction> actions);

/// A node-local state machine driven by run_protocol.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual void start(const Graph& graph, const RandomSource& rng) = 0;
  virtual RoundAction act(NodeId v, std::uint64_t round) = 0;
  virtual void update(NodeId v, std::uint64_t round, const Reception& reception) = 0;
  /// Checked before every round; true stops the run.
  virtual bool finished(std::uint64_t round) const = 0;
  virtual std::optional<std::uint64_t> output(NodeId v) const = 0;
};

struct RoundRecord {
  std::vector<RoundAction> actions;
  std::vector<Reception> receptions;
  bool operator==(const RoundRecord&) const = default;
};

struct Trace {
  std::vector<RoundRecord> rounds;
  std::vector<std::optional<std::uint64_t>> outputs;
  std::uint64_t round_count = 0;
  bool timed_out = false;
  bool operator==(const Trace&) const = default;
};

struct RunOptions {
  std::uint64_t round_limit = 1000;
  /// Largest allowed packet in bits; 0 disables the check.
  std::size_t max_packet_bits = 0;
  bool record_rounds = true;
};

Trace run_protocol(const Graph& graph, Model model, Protocol& protocol, const RandomSource& rng,
                   const RunOptions& options);

}  // namespace radiole
