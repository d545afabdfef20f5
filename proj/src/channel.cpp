#include "radiole/channel.hpp"

namespace radiole {

Channel::Channel(const Graph& graph, Model model)
    : graph_(&graph),
      model_(model),
      tx_stamp_(graph.size(), 0),
      hit_stamp_(graph.size(), 0),
      hits_(graph.size(), 0),
      hit_from_(graph.size(), 0) {}

std::span<const Delivery> Channel::round(std::span<const NodeId> transmitters, std::span<const std::uint8_t> listening) {
  ++stamp_;
  touched_.clear();
  deliveries_.clear();
  for (NodeId u : transmitters) tx_stamp_[u] = stamp_;
  for (NodeId u : transmitters) {
    for (NodeId v : graph_->neighbors(u)) {
      if (!listening[v] || tx_stamp_[v] == stamp_) continue;
      if (hit_stamp_[v] != stamp_) {
        hit_stamp_[v] = stamp_;
        hits_[v] = 0;
        hit_from_[v] = u;
        touched_.push_back(v);
      }
      ++hits_[v];
    }
  }
  for (NodeId v : touched_) {
    if (model_ == Model::Beep || hits_[v] == 1) deliveries_.push_back({v, hit_from_[v]});
  }
  if (observer_ != nullptr) observer_->on_round(now_, transmitters, deliveries_);
  ++now_;
  return deliveries_;
}

}  // namespace radiole
