#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "radiole/graph.hpp"
#include "radiole/radio.hpp"

namespace radiole {

/// A listener that perceived a transmission, and the neighbor it came from.
/// In the beep model `sender` is one of the beeping neighbors.
struct Delivery {
  NodeId listener;
  NodeId sender;
};

class RoundObserver {
 public:
  virtual ~RoundObserver() = default;
  virtual void on_round(std::uint64_t round, std::span<const NodeId> transmitters,
                        std::span<const Delivery> deliveries) = 0;
};

/// Shared clock and collision resolution for the protocol simulations.
///
/// Protocols pass only the transmitters and listeners that can matter for
/// their state; receptions are resolved with the same rule as step(), so a
/// pruned round gives the interested listeners exactly what the full round
/// would have given them.
class Channel {
 public:
  Channel(const Graph& graph, Model model);

  const Graph& graph() const { return *graph_; }
  Model model() const { return model_; }
  std::uint64_t now() const { return now_; }

  void set_observer(RoundObserver* observer) { observer_ = observer; }
  RoundObserver* observer() const { return observer_; }

  /// Lets `rounds` rounds pass in which nothing relevant happens.
  void advance(std::uint64_t rounds) { now_ += rounds; }

  /// Resolves one round. `listening[v] != 0` marks v as an interested
  /// listener; transmitters never listen.
  std::span<const Delivery> round(std::span<const NodeId> transmitters, std::span<const std::uint8_t> listening);

 private:
  const Graph* graph_;
  Model model_;
  std::uint64_t now_ = 0;
  RoundObserver* observer_ = nullptr;
  std::vector<std::uint64_t> tx_stamp_;
  std::vector<std::uint64_t> hit_stamp_;
  std::vector<std::uint32_t> hits_;
  std::vector<NodeId> hit_from_;
  std::vector<NodeId> touched_;
  std::vector<Delivery> deliveries_;
  std::uint64_t stamp_ = 0;
};

}  // namespace radiole
