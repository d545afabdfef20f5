#include "radiole/nocd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace radiole {

const char* to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::Unclustered: return "unclustered";
    case NodeStatus::Candidate: return "candidate";
    case NodeStatus::Internal: return "internal";
    case NodeStatus::BoundaryActive: return "boundary-active";
    case NodeStatus::BoundaryInactive: return "boundary-inactive";
    case NodeStatus::Undecided: return "undecided";
  }
  return "?";
}

Clustering Clustering::trivial(std::size_t n, std::span<const NodeId> candidates) {
  Clustering c;
  c.status.assign(n, NodeStatus::Unclustered);
  c.cluster.assign(n, kNoNode);
  c.recruiter.assign(n, kNoNode);
  c.marked.assign(n, 0);
  for (NodeId x : candidates) {
    if (x >= n) throw std::invalid_argument("clustering: candidate out of range");
    c.status[x] = NodeStatus::Candidate;
    c.cluster[x] = x;
  }
  return c;
}

DebatePlan DebatePlan::make(std::size_t n, std::uint64_t diameter, std::uint64_t radius, const Constants& k) {
  DebatePlan p;
  p.n = n;
  p.diameter = diameter;
  p.radius = radius;
  p.constants = k;
  p.L = log_n(n);
  p.delta = delay_for(n, std::max<std::uint64_t>(radius, 1));
  const std::uint64_t L2 = std::uint64_t{p.L} * p.L;
  p.cluster_epochs = static_cast<unsigned>(1 + (radius * p.delta + L2 - 1) / L2 + k.cluster_epochs_extra);
  p.refine_epochs =
      std::max(1U, static_cast<unsigned>(std::ceil(k.refine_factor * static_cast<double>(L2) / p.delta - 1e-9)));
  return p;
}

std::uint64_t DebatePlan::step1_rounds() const { return 4ULL * constants.alpha * L * L; }
std::uint64_t DebatePlan::boundary_rounds() const { return std::uint64_t{constants.boundary_parts} * L * L; }
std::uint64_t DebatePlan::long_phase_rounds() const { return std::uint64_t{constants.long_phase_factor} * L; }
std::uint64_t DebatePlan::cluster_epoch_rounds() const {
  return 2 * step1_rounds() + boundary_rounds() + long_phase_rounds();
}
std::uint64_t DebatePlan::refine_epoch_rounds() const { return long_phase_rounds() + boundary_rounds(); }
std::uint64_t DebatePlan::cast_rounds() const {
  const std::uint64_t reach = std::min(diameter, radius + refine_epochs);
  return std::uint64_t{constants.alpha} * (reach * delta + std::uint64_t{L} * L);
}
std::uint64_t DebatePlan::intercom_rounds() const {
  return std::uint64_t{constants.intercom_epochs} * L * L * constants.intercom_phases * L;
}

namespace {
constexpr unsigned kCastsPerDebate = 21;
constexpr unsigned kIntercomsPerDebate = 3;
constexpr unsigned kTurns = 5;
}  // namespace

std::uint64_t DebatePlan::debate_rounds() const {
  return cluster_epochs * cluster_epoch_rounds() + refine_epochs * refine_epoch_rounds() +
         kCastsPerDebate * cast_rounds() + kIntercomsPerDebate * intercom_rounds();
}

bool clustering_intact(const Graph& graph, const Clustering& c) {
  const std::size_t n = graph.size();
  std::vector<std::uint8_t> reach(n, 0);
  std::vector<NodeId> queue;
  for (NodeId v = 0; v < n; ++v) {
    if (c.status[v] == NodeStatus::Candidate) {
      if (c.cluster[v] != v) return false;
      reach[v] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const NodeId u = queue[i];
    for (NodeId w : graph.neighbors(u)) {
      if (!reach[w] && c.internal(w) && c.cluster[w] == c.cluster[u]) {
        reach[w] = 1;
        queue.push_back(w);
      }
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!c.clustered(v) || reach[v]) continue;
    if (c.internal(v)) return false;
    bool ok = false;
    for (NodeId w : graph.neighbors(v)) ok = ok || (reach[w] && c.cluster[w] == c.cluster[v]);
    if (!ok) return false;
  }
  return true;
}

namespace {

/// Boundary parts: clusters take turns at random (shared coin per cluster and
/// part), unclustered nodes run Decay throughout; listeners hear whatever the
/// NoCD rule delivers. `on_receive` returns whether the listener keeps listening.
template <typename OnReceive>
void shared_parts(Channel& ch, const Clustering& c, std::vector<std::uint8_t>& listening, const DebatePlan& p,
                  const RandomSource& rng, OnReceive&& on_receive) {
  const Graph& g = ch.graph();
  const std::size_t n = g.size();
  const unsigned L = p.L;
  const std::uint64_t parts = std::uint64_t{p.constants.boundary_parts} * L;
  const std::uint64_t salt = ch.now();
  std::vector<std::uint8_t> active(n, 0);
  std::vector<std::uint64_t> stamp(n, 0);
  std::vector<NodeId> listeners;
  std::vector<NodeId> relevant;
  std::vector<NodeId> tx;
  for (std::uint64_t part = 0; part < parts; ++part) {
    listeners.clear();
    for (NodeId v = 0; v < n; ++v) {
      if (listening[v]) listeners.push_back(v);
    }
    if (listeners.empty()) {
      ch.advance((parts - part) * L);
      return;
    }
    relevant.clear();
    for (NodeId v : listeners) {
      for (NodeId w : g.neighbors(v)) {
        if (stamp[w] == part + 1) continue;
        stamp[w] = part + 1;
        relevant.push_back(w);
      }
    }
    for (NodeId w : relevant) {
      if (c.clustered(w)) active[c.cluster[w]] = rng.bits(purpose::kSharedCluster, c.cluster[w], salt + part) & 1U;
    }
    for (unsigned j = 0; j < L; ++j) {
      tx.clear();
      for (NodeId u : relevant) {
        const bool go = c.clustered(u) ? active[c.cluster[u]] && rng.coin_pow2(j + 1, purpose::kDecay, u, ch.now())
                                       : rng.coin_pow2(j + 1, purpose::kUnclusteredDecay, u, ch.now());
        if (go) tx.push_back(u);
      }
      for (const Delivery& d : ch.round(tx, listening)) {
        if (!on_receive(d.listener, d.sender)) listening[d.listener] = 0;
      }
    }
  }
}

const ProbabilitySchedule& schedule_for(unsigned L) {
  static thread_local std::unordered_map<unsigned, ProbabilitySchedule> cache;
  auto it = cache.find(L);
  if (it == cache.end()) it = cache.emplace(L, ProbabilitySchedule::repeated_decay(L)).first;
  return it->second;
}

void fast_cluster_epoch(Channel& ch, Clustering& c, const DebatePlan& p, const RandomSource& rng) {
  const Graph& g = ch.graph();
  const std::size_t n = g.size();
  for (NodeId v = 0; v < n; ++v) {
    if (c.boundary(v)) c.status[v] = NodeStatus::Undecided;
    c.marked[v] = 0;
  }

  // Step 1: grow with Fast-Decay from candidates and undecided nodes.
  FastDecaySpec spec;
  spec.roles.assign(n, DecayRole::Inert);
  for (NodeId v = 0; v < n; ++v) {
    if (c.status[v] == NodeStatus::Candidate || c.status[v] == NodeStatus::Undecided) spec.sources.push_back(v);
    if (c.status[v] == NodeStatus::Unclustered) spec.roles[v] = DecayRole::Relay;
  }
  spec.delta = p.delta;
  spec.schedule = &schedule_for(p.L);
  spec.rounds = p.step1_rounds();
  const FastDecayOutcome grow = run_fast_decay(ch, spec, rng);
  std::vector<NodeId> recruits;
  for (NodeId v = 0; v < n; ++v) {
    if (c.status[v] != NodeStatus::Unclustered || grow.from[v] == kNoNode) continue;
    c.status[v] = NodeStatus::Undecided;
    c.cluster[v] = c.cluster[grow.origin[v]];
    c.recruiter[v] = grow.from[v];
    recruits.push_back(v);
  }

  // Step 2: mark undecided nodes next to unclustered or foreign nodes.
  std::vector<std::uint8_t> listening(n, 0);
  for (NodeId v = 0; v < n; ++v) listening[v] = c.status[v] == NodeStatus::Undecided;
  shared_parts(ch, c, listening, p, rng, [&](NodeId v, NodeId s) {
    if (!c.clustered(s) || c.cluster[s] != c.cluster[v]) {
      c.marked[v] = 1;
      return false;
    }
    return true;
  });

  // Step 3: replay Step 1; recruits of marked nodes become marked.
  std::stable_sort(recruits.begin(), recruits.end(),
                   [&](NodeId a, NodeId b) { return grow.round[a] < grow.round[b]; });
  for (NodeId v : recruits) {
    if (c.marked[c.recruiter[v]]) c.marked[v] = 1;
  }
  ch.advance(p.step1_rounds());

  // Step 4: settle statuses.
  std::vector<NodeId> senders;
  std::fill(listening.begin(), listening.end(), 0);
  for (NodeId v = 0; v < n; ++v) {
    if (c.status[v] == NodeStatus::Undecided && !c.marked[v]) c.status[v] = NodeStatus::Internal;
    if (c.internal(v)) {
      senders.push_back(v);
    } else {
      listening[v] = 1;
    }
  }
  const DecayOutcome edge =
      run_frozen_decay(ch, senders, std::move(listening), p.L, p.long_phase_rounds(), rng, purpose::kDecay);
  for (NodeId v = 0; v < n; ++v) {
    if (edge.received(v)) {
      c.status[v] = NodeStatus::BoundaryActive;
      c.cluster[v] = c.cluster[edge.from[v]];
      c.recruiter[v] = edge.from[v];
    } else if (c.status[v] == NodeStatus::Undecided) {
      c.status[v] = NodeStatus::Unclustered;
      c.cluster[v] = kNoNode;
      c.recruiter[v] = kNoNode;
    }
  }
}

}  // namespace

Clustering fast_cluster(Channel& ch, std::span<const NodeId> candidates, const DebatePlan& p, const RandomSource& rng,
                        const EpochHook& hook) {
  if (candidates.empty()) throw std::invalid_argument("fast_cluster: no candidates");
  Clustering c = Clustering::trivial(ch.graph().size(), candidates);
  for (unsigned e = 0; e < p.cluster_epochs; ++e) {
    fast_cluster_epoch(ch, c, p, rng);
    if (hook) hook(e, c);
  }
  return c;
}

Clustering fast_cluster(const Graph& graph, std::span<const NodeId> candidates, std::uint64_t radius_budget,
                        const Constants& constants, const RandomSource& rng) {
  Channel ch(graph, Model::NoCD);
  const DebatePlan p = DebatePlan::make(graph.size(), graph.diameter(), radius_budget, constants);
  return fast_cluster(ch, candidates, p, rng);
}

void cluster_refine(Channel& ch, Clustering& c, const DebatePlan& p, unsigned epochs, const RandomSource& rng) {
  const std::size_t n = ch.graph().size();
  std::vector<std::uint8_t> listening(n, 0);
  std::vector<std::uint8_t> saw_unclustered(n, 0);
  for (unsigned e = 0; e < epochs; ++e) {
    // Growth: internal and active boundary nodes recruit unclustered neighbors.
    std::vector<NodeId> senders;
    for (NodeId v = 0; v < n; ++v) {
      listening[v] = c.status[v] == NodeStatus::Unclustered;
      if (c.internal(v) || c.status[v] == NodeStatus::BoundaryActive) senders.push_back(v);
    }
    const DecayOutcome grow = run_frozen_decay(ch, senders, listening, p.L, p.long_phase_rounds(), rng, purpose::kDecay);
    for (NodeId v = 0; v < n; ++v) {
      if (!grow.received(v)) continue;
      c.status[v] = NodeStatus::BoundaryActive;
      c.cluster[v] = c.cluster[grow.from[v]];
      c.recruiter[v] = grow.from[v];
    }

    // Boundary determination for the active boundary.
    for (NodeId v = 0; v < n; ++v) {
      listening[v] = c.status[v] == NodeStatus::BoundaryActive;
      saw_unclustered[v] = 0;
    }
    std::vector<std::uint8_t> pending = listening;
    shared_parts(ch, c, listening, p, rng, [&](NodeId v, NodeId s) {
      if (!c.clustered(s)) {
        saw_unclustered[v] = 1;
        return true;
      }
      if (c.cluster[s] != c.cluster[v]) {
        c.status[v] = NodeStatus::BoundaryInactive;
        return false;
      }
      return true;
    });
    for (NodeId v = 0; v < n; ++v) {
      if (!pending[v] || c.status[v] == NodeStatus::BoundaryInactive) continue;
      c.status[v] = saw_unclustered[v] ? NodeStatus::BoundaryActive : NodeStatus::Internal;
    }
  }
}

CastResult cluster_cast(Channel& ch, const Clustering& c, CastDirection direction,
                        std::span<const std::uint8_t> holders, const DebatePlan& p, const RandomSource& rng) {
  const std::size_t n = ch.graph().size();
  FastDecaySpec spec;
  spec.roles.assign(n, DecayRole::Inert);
  for (NodeId v = 0; v < n; ++v) {
    if (!c.internal(v)) continue;
    const bool candidate = c.status[v] == NodeStatus::Candidate;
    if (direction == CastDirection::Up) {
      spec.roles[v] = DecayRole::Relay;
      if (candidate) spec.sources.push_back(v);
    } else {
      spec.roles[v] = candidate ? DecayRole::Sink : DecayRole::Relay;
      if (!candidate && v < holders.size() && holders[v]) spec.sources.push_back(v);
    }
  }
  spec.accept = [&c](NodeId listener, NodeId sender) { return c.cluster[listener] == c.cluster[sender]; };
  spec.delta = p.delta;
  spec.schedule = &schedule_for(p.L);
  spec.rounds = p.cast_rounds();
  const FastDecayOutcome out = run_fast_decay(ch, spec, rng);
  CastResult r;
  if (direction == CastDirection::Up) {
    r.holds.assign(n, 0);
    for (NodeId v = 0; v < n; ++v) r.holds[v] = c.internal(v) && out.informed(v);
  } else {
    r.origin.assign(n, kNoNode);
    for (NodeId v = 0; v < n; ++v) {
      if (c.status[v] == NodeStatus::Candidate) r.origin[v] = out.origin[v];
    }
  }
  return r;
}

ForeignLists intercommunicate(Channel& ch, const Clustering& c, std::span<const std::uint8_t> informed,
                              const DebatePlan& p, const RandomSource& rng) {
  const Graph& g = ch.graph();
  const std::size_t n = g.size();
  const unsigned L = p.L;
  const std::uint64_t epochs = std::uint64_t{p.constants.intercom_epochs} * L * L;
  const unsigned phases = p.constants.intercom_phases;
  ForeignLists out(n);

  // Internal nodes whose neighbors are all internal in their own cluster can
  // only ever hear their own cluster, so they are left out.
  std::vector<std::uint8_t> edge_listener(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (!c.internal(v)) continue;
    for (NodeId w : g.neighbors(v)) {
      if (!c.internal(w) || c.cluster[w] != c.cluster[v]) edge_listener[v] = 1;
    }
  }
  std::unordered_map<NodeId, std::vector<NodeId>> senders;
  std::vector<NodeId> clusters;
  for (NodeId u = 0; u < n; ++u) {
    if (c.status[u] == NodeStatus::Candidate) clusters.push_back(u);
    if (!c.internal(u) || u >= informed.size() || !informed[u]) continue;
    bool matters = false;
    for (NodeId w : g.neighbors(u)) {
      matters = matters || !c.internal(w) || c.cluster[w] != c.cluster[u] || edge_listener[w];
    }
    if (matters) senders[c.cluster[u]].push_back(u);
  }

  std::vector<std::uint8_t> listening(n, 0);
  for (NodeId v = 0; v < n; ++v) listening[v] = edge_listener[v] || !c.internal(v);
  std::vector<NodeId> hold(n, kNoNode);
  std::vector<NodeId> relays;
  std::vector<NodeId> fresh;
  std::vector<NodeId> base;
  std::vector<NodeId> tx;
  const std::uint64_t salt = ch.now();
  const double p_active = 1.0 / L;
  for (std::uint64_t e = 0; e < epochs; ++e) {
    base.clear();
    for (NodeId x : clusters) {
      if (!rng.bernoulli(p_active, purpose::kSharedCluster, x, salt + e)) continue;
      auto it = senders.find(x);
      if (it != senders.end()) base.insert(base.end(), it->second.begin(), it->second.end());
    }
    if (base.empty()) {
      ch.advance(std::uint64_t{phases} * L);
      continue;
    }
    relays.clear();
    for (unsigned ph = 0; ph < phases; ++ph) {
      fresh.clear();
      for (unsigned j = 0; j < L; ++j) {
        tx.clear();
        for (NodeId u : base) {
          if (rng.coin_pow2(j + 1, purpose::kDecay, u, ch.now())) tx.push_back(u);
        }
        for (NodeId u : relays) {
          if (rng.coin_pow2(j + 1, purpose::kDecay, u, ch.now())) tx.push_back(u);
        }
        for (const Delivery& d : ch.round(tx, listening)) {
          const NodeId from = c.internal(d.sender) ? c.cluster[d.sender] : hold[d.sender];
          const NodeId v = d.listener;
          if (c.internal(v)) {
            if (from != c.cluster[v] && std::find(out[v].begin(), out[v].end(), from) == out[v].end()) {
              out[v].push_back(from);
            }
          } else if (hold[v] == kNoNode) {
            hold[v] = from;
            listening[v] = 0;
            fresh.push_back(v);
          }
        }
      }
      relays.insert(relays.end(), fresh.begin(), fresh.end());
    }
    for (NodeId v : relays) {
      hold[v] = kNoNode;
      listening[v] = 1;
    }
  }
  return out;
}

std::size_t Overlay::index_of(NodeId candidate) const {
  auto it = std::find(candidates.begin(), candidates.end(), candidate);
  if (it == candidates.end()) throw std::out_of_range("overlay: unknown candidate");
  return static_cast<std::size_t>(it - candidates.begin());
}

unsigned Overlay::flattened_degree(std::size_t i) const {
  const std::size_t d = known_children[i].size() + (parent[i] != kNoNode ? 1 : 0);
  return static_cast<unsigned>(std::min<std::size_t>(d, 5));
}

namespace {

/// Down action where each internal node offers at most one payload. The
/// candidate's own payload wins; otherwise the first message to arrive.
std::vector<NodeId> down_first(Channel& ch, const Clustering& c, std::span<const NodeId> candidates,
                               const std::vector<NodeId>& payload, const DebatePlan& p, const RandomSource& rng) {
  const std::size_t n = payload.size();
  std::vector<std::uint8_t> holders(n, 0);
  for (NodeId v = 0; v < n; ++v) holders[v] = payload[v] != kNoNode;
  const CastResult r = cluster_cast(ch, c, CastDirection::Down, holders, p, rng);
  std::vector<NodeId> got(candidates.size(), kNoNode);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const NodeId x = candidates[i];
    if (payload[x] != kNoNode) {
      got[i] = payload[x];
    } else if (r.origin[x] != kNoNode) {
      got[i] = payload[r.origin[x]];
    }
  }
  return got;
}

}  // namespace

Overlay build_overlay(Channel& ch, const Clustering& c, std::span<const NodeId> candidates, const DebatePlan& p,
                      const RandomSource& rng) {
  const std::size_t n = ch.graph().size();
  const std::size_t k = candidates.size();
  Overlay ov;
  ov.candidates.assign(candidates.begin(), candidates.end());
  ov.parent.assign(k, kNoNode);
  ov.children.assign(k, {});
  ov.known_children.assign(k, {});
  std::unordered_map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < k; ++i) index.emplace(candidates[i], i);
  std::vector<NodeId> parent_of(n, kNoNode);

  const CastResult ids = cluster_cast(ch, c, CastDirection::Up, {}, p, rng);
  const ForeignLists near = intercommunicate(ch, c, ids.holds, p, rng);
  std::vector<NodeId> payload(n, kNoNode);
  for (NodeId v = 0; v < n; ++v) {
    if (c.internal(v) && !near[v].empty()) payload[v] = near[v].front();
  }
  const auto parents = down_first(ch, c, candidates, payload, p, rng);
  for (std::size_t i = 0; i < k; ++i) {
    ov.parent[i] = parents[i];
    parent_of[candidates[i]] = parents[i];
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (ov.parent[i] == kNoNode) continue;
    auto it = index.find(ov.parent[i]);
    if (it != index.end()) ov.children[it->second].push_back(candidates[i]);
  }

  const CastResult told = cluster_cast(ch, c, CastDirection::Up, {}, p, rng);
  const ForeignLists heard = intercommunicate(ch, c, told.holds, p, rng);
  for (unsigned turn = 0; turn < kTurns; ++turn) {
    const CastResult asked = cluster_cast(ch, c, CastDirection::Up, {}, p, rng);
    std::fill(payload.begin(), payload.end(), kNoNode);
    for (NodeId v = 0; v < n; ++v) {
      if (!c.internal(v) || !(asked.holds[v] || c.status[v] == NodeStatus::Candidate)) continue;
      const auto& known = ov.known_children[index.at(c.cluster[v])];
      for (NodeId b : heard[v]) {
        if (parent_of[b] == c.cluster[v] && std::find(known.begin(), known.end(), b) == known.end()) {
          payload[v] = b;
          break;
        }
      }
    }
    const auto fresh = down_first(ch, c, candidates, payload, p, rng);
    for (std::size_t i = 0; i < k; ++i) {
      if (fresh[i] != kNoNode) ov.known_children[i].push_back(fresh[i]);
    }
  }
  return ov;
}

std::vector<std::uint8_t> modified_elimination(const Overlay& ov, std::span<const std::uint64_t> ids) {
  const std::size_t k = ov.candidates.size();
  if (ids.size() != k) throw std::invalid_argument("modified_elimination: one ID per candidate");
  std::vector<CandidatePair> pair(k);
  for (std::size_t i = 0; i < k; ++i) pair[i] = {ov.flattened_degree(i), ids[i]};
  std::vector<std::uint8_t> survives(k, 1);
  for (std::size_t i = 0; i < k; ++i) {
    if (pair[i].degree >= 5) continue;
    auto beats = [&](NodeId other) { return other != kNoNode && pair[ov.index_of(other)] > pair[i]; };
    bool out = beats(ov.parent[i]);
    for (NodeId ch : ov.known_children[i]) out = out || beats(ch);
    survives[i] = !out;
  }
  return survives;
}

std::vector<std::uint8_t> elimination(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                                      std::span<const std::uint64_t> ids) {
  if (ids.size() != n) throw std::invalid_argument("elimination: one ID per node");
  std::vector<unsigned> degree(n, 0);
  for (auto [a, b] : edges) {
    ++degree[a];
    ++degree[b];
  }
  auto pair = [&](NodeId v) { return CandidatePair{degree[v], ids[v]}; };
  std::vector<std::uint8_t> survives(n, 1);
  for (auto [a, b] : edges) {
    if (pair(a) < pair(b)) survives[a] = 0;
    if (pair(b) < pair(a)) survives[b] = 0;
  }
  return survives;
}

std::vector<std::uint8_t> nocd_non_isolated(const Graph& graph, const Clustering& c,
                                            std::span<const NodeId> candidates) {
  const std::size_t n = graph.size();
  std::unordered_map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < candidates.size(); ++i) index.emplace(candidates[i], i);
  std::vector<std::uint8_t> flag(candidates.size(), 0);
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  std::vector<NodeId> frontier;
  std::vector<NodeId> next;
  for (NodeId u = 0; u < n; ++u) {
    if (!c.internal(u)) continue;
    auto it = index.find(c.cluster[u]);
    if (it == index.end() || flag[it->second]) continue;
    ++stamp;
    seen[u] = stamp;
    frontier.assign(1, u);
    for (int depth = 0; depth < 3 && !flag[it->second]; ++depth) {
      next.clear();
      for (NodeId x : frontier) {
        for (NodeId w : graph.neighbors(x)) {
          if (seen[w] == stamp) continue;
          seen[w] = stamp;
          if (c.internal(w) && c.cluster[w] != c.cluster[u]) flag[it->second] = 1;
          next.push_back(w);
        }
      }
      frontier.swap(next);
    }
  }
  return flag;
}

NocdDebateOutcome run_debate_nocd(Channel& ch, const CandidateSet& cand, unsigned debate_index, const Constants& k,
                                  const RandomSource& rng) {
  if (cand.size() == 0) throw std::invalid_argument("run_debate_nocd: no candidates");
  const Graph& g = ch.graph();
  const std::size_t n = g.size();
  const std::uint64_t radius = debate_radius(n, g.diameter(), debate_index);
  const DebatePlan p = DebatePlan::make(n, g.diameter(), radius, k);
  const std::uint64_t start = ch.now();

  NocdDebateOutcome out;
  out.clustering = fast_cluster(ch, cand.nodes, p, rng);
  cluster_refine(ch, out.clustering, p, p.refine_epochs, rng);
  const Clustering& c = out.clustering;
  out.overlay = build_overlay(ch, c, cand.nodes, p, rng);
  const Overlay& ov = out.overlay;

  // Pair exchange: children hear their parent, parents hear known children.
  const std::size_t m = cand.size();
  std::unordered_map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index.emplace(cand.nodes[i], i);
  std::vector<CandidatePair> pair(m);
  for (std::size_t i = 0; i < m; ++i) pair[i] = {ov.flattened_degree(i), cand.ids[i]};

  const CastResult told = cluster_cast(ch, c, CastDirection::Up, {}, p, rng);
  const ForeignLists heard = intercommunicate(ch, c, told.holds, p, rng);
  auto offers = [&](NodeId v, NodeId wanted) {
    return wanted != kNoNode && c.internal(v) && std::find(heard[v].begin(), heard[v].end(), wanted) != heard[v].end();
  };
  std::vector<std::vector<CandidatePair>> received(m);
  std::vector<NodeId> payload(n, kNoNode);
  for (NodeId v = 0; v < n; ++v) {
    if (!c.internal(v) || !(told.holds[v] || c.status[v] == NodeStatus::Candidate)) continue;
    const NodeId parent = ov.parent[index.at(c.cluster[v])];
    if (offers(v, parent)) payload[v] = parent;
  }
  for (std::size_t i = 0; const NodeId got : down_first(ch, c, cand.nodes, payload, p, rng)) {
    if (got != kNoNode) received[i].push_back(pair[index.at(got)]);
    ++i;
  }
  const CastResult listed = cluster_cast(ch, c, CastDirection::Up, {}, p, rng);
  for (unsigned slot = 0; slot < kTurns; ++slot) {
    std::fill(payload.begin(), payload.end(), kNoNode);
    for (NodeId v = 0; v < n; ++v) {
      if (!c.internal(v) || !(listed.holds[v] || c.status[v] == NodeStatus::Candidate)) continue;
      const auto& known = ov.known_children[index.at(c.cluster[v])];
      if (slot < known.size() && offers(v, known[slot])) payload[v] = known[slot];
    }
    for (std::size_t i = 0; const NodeId got : down_first(ch, c, cand.nodes, payload, p, rng)) {
      if (got != kNoNode) received[i].push_back(pair[index.at(got)]);
      ++i;
    }
  }
  out.survives.assign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (pair[i].degree >= 5) continue;
    for (const CandidatePair& q : received[i]) {
      if (q > pair[i]) out.survives[i] = 0;
    }
  }

  const auto iso = nocd_non_isolated(g, c, cand.nodes);
  out.non_isolated = static_cast<std::size_t>(std::count(iso.begin(), iso.end(), 1));
  out.rounds = ch.now() - start;
  if (out.rounds != p.debate_rounds()) throw std::logic_error("run_debate_nocd: round accounting mismatch");
  return out;
}

NocdDebateOutcome run_debate_nocd(const Graph& graph, const CandidateSet& cand, unsigned debate_index,
                                  const Constants& k, const RandomSource& rng) {
  Channel ch(graph, Model::NoCD);
  return run_debate_nocd(ch, cand, debate_index, k, rng);
}

std::uint64_t nocd_final_rounds(std::size_t n, std::uint64_t diameter, const Constants& k) {
  const unsigned L = log_n(n);
  return std::uint64_t{k.alpha} * (diameter * delay_for(n, std::max<std::uint64_t>(diameter, 1)) + std::uint64_t{L} * L);
}

ElectionResult elect_leader_nocd(const Graph& graph, const Constants& k, const RandomSource& rng,
                                 std::uint64_t round_limit, RoundObserver* observer) {
  const std::size_t n = graph.size();
  ElectionResult res;
  res.outputs.assign(n, std::nullopt);
  Channel ch(graph, Model::NoCD);
  ch.set_observer(observer);
  CandidateSet cand = sample_candidates(n, rng, k.candidate_factor);
  res.candidates = cand.size();
  if (cand.size() == 0) {
    res.reason = "no candidates";
    return res;
  }
  const unsigned debates = debate_count(n);
  for (unsigned i = 1; i <= debates; ++i) {
    DebateStats st;
    st.incoming = cand.size();
    st.radius = debate_radius(n, graph.diameter(), i);
    if (cand.size() == 1 && k.fast_forward) {
      st.rounds = DebatePlan::make(n, graph.diameter(), st.radius, k).debate_rounds();
      st.survivors = 1;
      ch.advance(st.rounds);
    } else {
      const NocdDebateOutcome o = run_debate_nocd(ch, cand, i, k, rng);
      CandidateSet next;
      for (std::size_t j = 0; j < cand.size(); ++j) {
        if (!o.survives[j]) continue;
        next.nodes.push_back(cand.nodes[j]);
        next.ids.push_back(cand.ids[j]);
      }
      st.rounds = o.rounds;
      st.survivors = next.size();
      st.non_isolated = o.non_isolated;
      st.simulated = true;
      cand = std::move(next);
    }
    res.rounds += st.rounds;
    res.debates.push_back(st);
    if (round_limit != 0 && res.rounds > round_limit) {
      res.reason = "round limit exceeded";
      return res;
    }
    if (cand.size() == 0) {
      res.reason = "no survivor";
      return res;
    }
  }

  FastDecaySpec spec;
  spec.sources = cand.nodes;
  spec.delta = delay_for(n, std::max<std::uint64_t>(graph.diameter(), 1));
  spec.schedule = &schedule_for(log_n(n));
  spec.rounds = nocd_final_rounds(n, graph.diameter(), k);
  const FastDecayOutcome fin = run_fast_decay(ch, spec, rng);
  res.rounds += spec.rounds;
  std::unordered_map<NodeId, std::uint64_t> id_of;
  for (std::size_t j = 0; j < cand.size(); ++j) id_of.emplace(cand.nodes[j], cand.ids[j]);
  for (NodeId v = 0; v < n; ++v) {
    if (fin.informed(v)) res.outputs[v] = id_of.at(fin.origin[v]);
  }
  if (round_limit != 0 && res.rounds > round_limit) {
    res.reason = "round limit exceeded";
    return res;
  }
  judge(res, cand.ids);
  return res;
}

}  // namespace radiole
