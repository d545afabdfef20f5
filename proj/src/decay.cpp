#include "radiole/decay.hpp"

#include <cmath>
#include <deque>

namespace radiole {

unsigned delay_for(std::size_t n, std::uint64_t d) {
  if (d == 0) d = 1;
  unsigned k = 1;
  while (k < 63 && (d << k) < n) ++k;
  return k;
}

DecayConfig make_decay_config(std::size_t n, std::uint64_t diameter) {
  DecayConfig c;
  c.phase_len = log_n(n);
  c.delta = delay_for(n, diameter);
  return c;
}

ProbabilitySchedule ProbabilitySchedule::repeated_decay(unsigned phase_len) {
  if (phase_len == 0) throw std::invalid_argument("phase_len must be positive");
  return {[phase_len](std::uint64_t offset) { return std::ldexp(1.0, -static_cast<int>(decay_exponent(offset, phase_len))); }};
}

DecayOutcome run_frozen_decay(Channel& channel, std::span<const NodeId> senders, std::vector<std::uint8_t> listening,
                              unsigned phase_len, std::uint64_t rounds, const RandomSource& rng, std::uint64_t tag) {
  const Graph& g = channel.graph();
  const std::size_t n = g.size();
  DecayOutcome out{std::vector<NodeId>(n, kNoNode), std::vector<std::uint64_t>(n, kNever)};
  if (listening.empty()) listening.assign(n, 1);
  for (NodeId s : senders) listening[s] = 0;

  // A sender matters only while some neighbor is still waiting.
  std::vector<std::uint32_t> waiting(n, 0);
  for (NodeId s : senders) {
    for (NodeId v : g.neighbors(s)) waiting[s] += listening[v];
  }
  std::vector<NodeId> relevant;
  for (NodeId s : senders) {
    if (waiting[s] > 0) relevant.push_back(s);
  }

  std::vector<NodeId> tx;
  const std::uint64_t begin = channel.now();
  for (std::uint64_t j = 0; j < rounds; ++j) {
    std::erase_if(relevant, [&](NodeId s) { return waiting[s] == 0; });
    if (relevant.empty()) {
      channel.advance(rounds - j);
      break;
    }
    tx.clear();
    const unsigned e = decay_exponent(j, phase_len);
    for (NodeId s : relevant) {
      if (rng.coin_pow2(e, tag, s, channel.now())) tx.push_back(s);
    }
    for (const Delivery& d : channel.round(tx, listening)) {
      out.from[d.listener] = d.sender;
      out.round[d.listener] = channel.now() - 1 - begin;
      listening[d.listener] = 0;
      for (NodeId w : g.neighbors(d.listener)) {
        if (waiting[w] > 0) --waiting[w];
      }
    }
  }
  return out;
}

DecayOutcome decay_phase(Channel& channel, std::span<const NodeId> senders, const DecayConfig& config,
                         const RandomSource& rng) {
  return run_frozen_decay(channel, senders, {}, config.phase_len, config.phase_len, rng);
}

DecayOutcome decay_phase(const Graph& graph, std::span<const NodeId> senders, const RandomSource& rng) {
  Channel ch(graph, Model::NoCD);
  return decay_phase(ch, senders, make_decay_config(graph.size(), graph.diameter()), rng);
}

DecayOutcome long_phase(Channel& channel, std::span<const NodeId> senders, const DecayConfig& config,
                        const RandomSource& rng) {
  return run_frozen_decay(channel, senders, {}, config.phase_len, config.long_phase_rounds(), rng);
}

DecayOutcome long_phase(const Graph& graph, std::span<const NodeId> senders, const RandomSource& rng,
                        unsigned long_phase_factor) {
  Channel ch(graph, Model::NoCD);
  DecayConfig c = make_decay_config(graph.size(), graph.diameter());
  c.long_phase_factor = long_phase_factor;
  return long_phase(ch, senders, c, rng);
}

FastDecayOutcome run_fast_decay(Channel& channel, const FastDecaySpec& spec, const RandomSource& rng) {
  const Graph& g = channel.graph();
  const std::size_t n = g.size();
  if (spec.schedule == nullptr) throw std::invalid_argument("run_fast_decay: missing schedule");
  if (!spec.roles.empty() && spec.roles.size() != n) throw std::invalid_argument("run_fast_decay: roles size mismatch");

  FastDecayOutcome out{std::vector<NodeId>(n, kNoNode), std::vector<NodeId>(n, kNoNode),
                       std::vector<std::uint64_t>(n, kNever)};
  std::vector<std::uint8_t> listening(n, 0);
  std::vector<std::uint8_t> relays(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    const DecayRole r = spec.roles.empty() ? DecayRole::Relay : spec.roles[v];
    listening[v] = r != DecayRole::Inert;
    relays[v] = r == DecayRole::Relay;
  }
  std::vector<std::uint64_t> start(n, kNever);
  for (NodeId s : spec.sources) {
    listening[s] = 0;
    out.origin[s] = s;
    out.round[s] = 0;
    start[s] = 0;
  }
  std::vector<std::uint32_t> waiting(n, 0);
  auto count_waiting = [&](NodeId u) {
    std::uint32_t c = 0;
    for (NodeId v : g.neighbors(u)) c += listening[v];
    waiting[u] = c;
  };

  std::vector<NodeId> active;
  std::vector<std::uint8_t> seen(n, 0);
  for (NodeId s : spec.sources) {
    if (seen[s]) continue;
    seen[s] = 1;
    count_waiting(s);
    if (waiting[s] > 0) active.push_back(s);
  }
  std::deque<NodeId> pending;  // informed relays ordered by start round

  std::vector<NodeId> tx;
  for (std::uint64_t t = 0; t < spec.rounds; ++t) {
    while (!pending.empty() && start[pending.front()] <= t) {
      const NodeId u = pending.front();
      pending.pop_front();
      count_waiting(u);
      if (waiting[u] > 0) active.push_back(u);
    }
    std::erase_if(active, [&](NodeId u) { return waiting[u] == 0; });
    if (active.empty()) {
      if (pending.empty()) {
        if (spec.skip_idle) {
          channel.advance(spec.rounds - t);
          break;
        }
      } else if (spec.skip_idle) {
        const std::uint64_t next = std::min<std::uint64_t>(start[pending.front()], spec.rounds);
        channel.advance(next - t);
        t = next - 1;
        continue;
      }
    }
    tx.clear();
    for (NodeId u : active) {
      const double p = spec.schedule->probability(t - start[u]);
      if (rng.bernoulli(p, spec.tag, u, channel.now())) tx.push_back(u);
    }
    for (const Delivery& d : channel.round(tx, listening)) {
      const NodeId v = d.listener;
      if (spec.accept && !spec.accept(v, d.sender)) continue;
      out.from[v] = d.sender;
      out.origin[v] = out.origin[d.sender];
      out.round[v] = t;
      listening[v] = 0;
      for (NodeId w : g.neighbors(v)) {
        if (waiting[w] > 0) --waiting[w];
      }
      if (relays[v]) {
        start[v] = t + spec.delta;
        pending.push_back(v);
      }
    }
  }
  return out;
}

FastDecayOutcome fast_decay_broadcast(const Graph& graph, std::span<const NodeId> sources, unsigned delta,
                                      const ProbabilitySchedule& schedule, std::uint64_t T,
                                      const RandomSource& rng, unsigned alpha, RoundObserver* observer) {
  if (sources.empty()) throw std::invalid_argument("fast_decay_broadcast: empty source set");
  const unsigned L = log_n(graph.size());
  const std::uint64_t minimum =
      std::uint64_t{alpha} * (std::uint64_t{graph.diameter()} * delta + std::uint64_t{L} * L);
  if (T < minimum) {
    throw ConfigError("fast_decay_broadcast: T=" + std::to_string(T) + " below budget " + std::to_string(minimum));
  }
  Channel ch(graph, Model::NoCD);
  ch.set_observer(observer);
  FastDecaySpec spec;
  spec.sources.assign(sources.begin(), sources.end());
  spec.delta = delta;
  spec.schedule = &schedule;
  spec.rounds = T;
  return run_fast_decay(ch, spec, rng);
}

double phase_success_oracle(std::uint64_t m, unsigned phase_len) {
  if (m == 0) return 0.0;
  double fail = 1.0;
  for (unsigned i = 1; i <= phase_len; ++i) {
    const double p = std::ldexp(1.0, -static_cast<int>(i));
    fail *= 1.0 - static_cast<double>(m) * p * std::pow(1.0 - p, static_cast<double>(m - 1));
  }
  return 1.0 - fail;
}

}  // namespace radiole
