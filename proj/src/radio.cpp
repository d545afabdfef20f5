#include "radiole/radio.hpp"

namespace radiole {

std::string to_string(Model m) { return m == Model::NoCD ? "nocd" : "beep"; }

Model model_from_string(const std::string& s) {
  if (s == "nocd") return Model::NoCD;
  if (s == "beep") return Model::Beep;
  throw ConfigError("unknown model: " + s);
}

std::vector<Reception> step(const Graph& graph, Model model, std::span<const RoundAction> actions) {
  const std::size_t n = graph.size();
  if (actions.size() != n) {
    throw ConfigError("step: expected " + std::to_string(n) + " actions, got " + std::to_string(actions.size()));
  }
  std::vector<Reception> out(n);
  for (NodeId v = 0; v < n; ++v) {
    if (actions[v].transmit) continue;
    std::size_t senders = 0;
    NodeId last = 0;
    for (NodeId u : graph.neighbors(v)) {
      if (actions[u].transmit) {
        ++senders;
        last = u;
      }
    }
    if (model == Model::Beep) {
      out[v].received = senders > 0;
    } else if (senders == 1) {
      out[v].received = true;
      out[v].packet = actions[last].packet;
    }
  }
  return out;
}

Trace run_protocol(const Graph& graph, Model model, Protocol& protocol, const RandomSource& rng,
                   const RunOptions& options) {
  const std::size_t n = graph.size();
  Trace trace;
  protocol.start(graph, rng);
  std::vector<RoundAction> actions(n);
  std::uint64_t round = 0;
  while (!protocol.finished(round)) {
    if (round >= options.round_limit) {
      trace.timed_out = true;
      break;
    }
    for (NodeId v = 0; v < n; ++v) {
      actions[v] = protocol.act(v, round);
      if (options.max_packet_bits != 0 && model == Model::NoCD && actions[v].transmit &&
          actions[v].packet.size() > options.max_packet_bits) {
        throw ConfigError("packet of " + std::to_string(actions[v].packet.size()) + " bits exceeds limit " +
                          std::to_string(options.max_packet_bits));
      }
    }
    auto receptions = step(graph, model, actions);
    for (NodeId v = 0; v < n; ++v) protocol.update(v, round, receptions[v]);
    if (options.record_rounds) trace.rounds.push_back({actions, std::move(receptions)});
    ++round;
  }
  trace.round_count = round;
  trace.outputs.resize(n);
  for (NodeId v = 0; v < n; ++v) trace.outputs[v] = protocol.output(v);
  return trace;
}

}  // namespace radiole
