#include "radiole/beep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "radiole/channel.hpp"

namespace radiole {

namespace {

unsigned mod3(std::int64_t x) { return static_cast<unsigned>(((x % 3) + 3) % 3); }

std::vector<std::vector<NodeId>> layers(const Numbering& num) {
  std::vector<std::vector<NodeId>> by_dist;
  for (NodeId v = 0; v < num.dist.size(); ++v) {
    if (!num.numbered(v)) continue;
    if (num.dist[v] >= by_dist.size()) by_dist.resize(num.dist[v] + 1);
    by_dist[num.dist[v]].push_back(v);
  }
  return by_dist;
}

void check_messages(std::span<const Bits> messages, std::size_t count, std::size_t L, const char* what) {
  if (messages.size() != count) throw std::invalid_argument(std::string(what) + ": message count mismatch");
  for (const Bits& m : messages) {
    if (m.size() != L) throw std::invalid_argument(std::string(what) + ": message length mismatch");
  }
}

void check_node_messages(const Graph& g, const BeepClustering& c, const BitStrings& messages, std::size_t L,
                         const char* what) {
  if (messages.size() != g.size()) throw std::invalid_argument(std::string(what) + ": need one entry per node");
  for (NodeId v = 0; v < g.size(); ++v) {
    if (c.is_boundary(v) && messages[v].size() != L) {
      throw std::invalid_argument(std::string(what) + ": boundary message length mismatch");
    }
  }
}

std::vector<std::uint8_t> heard_flags(std::span<const Delivery> deliveries, std::size_t n) {
  std::vector<std::uint8_t> heard(n, 0);
  for (const Delivery& d : deliveries) heard[d.listener] = 1;
  return heard;
}

Bits concat(const Bits& a, const Bits& b) {
  Bits out(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a.get(i));
  for (std::size_t i = 0; i < b.size(); ++i) out.set(a.size() + i, b.get(i));
  return out;
}

template <typename Decode>
BeepClustering cluster_with(const Graph& g, const Numbering& num, std::span<const NodeId> candidates,
                            std::span<const std::uint64_t> ids, std::span<const Bits> codewords, Decode&& decode) {
  if (candidates.size() != ids.size()) throw std::invalid_argument("beep_cluster: ids and candidates differ in size");
  const std::size_t n = g.size();
  const std::size_t L = codewords.empty() ? 0 : codewords.front().size();
  BeepClustering c;
  c.clustered.assign(n, 0);
  c.cluster.assign(n, kNoNode);
  c.boundary.assign(n, 0);
  c.received = beep_uplink(g, num, candidates, codewords, L);
  std::unordered_map<std::uint64_t, NodeId> owner;
  for (std::size_t i = 0; i < ids.size(); ++i) owner.emplace(ids[i], candidates[i]);
  for (NodeId v = 0; v < n; ++v) {
    if (!num.numbered(v)) continue;
    const DecodeResult r = decode(c.received[v]);
    if (r.more_than_k || r.ids.size() != 1) continue;
    auto it = owner.find(r.ids.front());
    if (it == owner.end()) continue;
    c.clustered[v] = 1;
    c.cluster[v] = it->second;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!c.clustered[v]) continue;
    for (NodeId w : g.neighbors(v)) {
      if (num.numbered(w) && !(c.received[w] == c.received[v])) {
        c.boundary[v] = 1;
        break;
      }
    }
  }
  c.rounds = wave_rounds(num.horizon, L) + 2 * L;
  return c;
}

}  // namespace

Numbering numbering(const Graph& graph, std::span<const NodeId> candidates, std::uint64_t horizon) {
  if (candidates.empty()) throw std::invalid_argument("numbering: no candidates");
  const std::size_t n = graph.size();
  Numbering num{std::vector<std::uint32_t>(n, kUnreachable), horizon};
  Channel ch(graph, Model::Beep);
  std::vector<std::uint8_t> listening(n, 1);
  std::vector<NodeId> frontier;
  for (NodeId c : candidates) {
    if (c >= n) throw std::invalid_argument("numbering: candidate out of range");
    if (num.dist[c] == 0) continue;
    num.dist[c] = 0;
    listening[c] = 0;
    frontier.push_back(c);
  }
  // Older active nodes have no inactive neighbors left, so only the newest
  // wavefront can activate anyone.
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    if (frontier.empty()) {
      ch.advance(horizon - t + 1);
      break;
    }
    std::vector<NodeId> next;
    for (const Delivery& d : ch.round(frontier, listening)) {
      num.dist[d.listener] = static_cast<std::uint32_t>(t);
      listening[d.listener] = 0;
      next.push_back(d.listener);
    }
    frontier = std::move(next);
  }
  return num;
}

Numbering numbering(const Graph& graph, std::span<const NodeId> candidates) {
  return numbering(graph, candidates, graph.diameter());
}

std::uint64_t wave_rounds(std::uint64_t horizon, std::size_t L) {
  if (L == 0) return 0;
  return horizon + 3 * std::uint64_t{L} - 2;
}

BitStrings beep_uplink(const Graph& graph, const Numbering& num, std::span<const NodeId> candidates,
                       std::span<const Bits> messages, std::size_t L) {
  check_messages(messages, candidates.size(), L, "beep_uplink");
  BitStrings out(graph.size(), Bits(L));
  for (std::size_t i = 0; i < candidates.size(); ++i) out[candidates[i]] = messages[i];
  const auto by_dist = layers(num);
  for (std::size_t d = 1; d < by_dist.size(); ++d) {
    for (NodeId u : by_dist[d]) {
      for (NodeId w : graph.neighbors(u)) {
        if (num.dist[w] + 1 == d) out[u] |= out[w];
      }
    }
  }
  return out;
}

BitStrings beep_uplink_rounds(const Graph& graph, const Numbering& num, std::span<const NodeId> candidates,
                              std::span<const Bits> messages, std::size_t L) {
  check_messages(messages, candidates.size(), L, "beep_uplink");
  const std::size_t n = graph.size();
  std::vector<const Bits*> own(n, nullptr);
  for (std::size_t i = 0; i < candidates.size(); ++i) own[candidates[i]] = &messages[i];
  BitStrings out(n, Bits(L));
  std::vector<std::uint8_t> active(n, 0);
  std::vector<std::uint8_t> listening(n, 0);
  std::vector<NodeId> tx;
  Channel ch(graph, Model::Beep);
  const std::uint64_t rounds = wave_rounds(num.horizon, L);
  for (std::uint64_t t = 0; t < rounds; ++t) {
    tx.clear();
    std::fill(listening.begin(), listening.end(), 0);
    for (NodeId u = 0; u < n; ++u) {
      if (!num.numbered(u)) continue;
      if (own[u] != nullptr) active[u] = t / 3 < L && own[u]->get(t / 3);
      const auto e = static_cast<std::int64_t>(t) - num.dist[u];
      if (mod3(e) == 0 && active[u]) {
        tx.push_back(u);
      } else {
        listening[u] = 1;
      }
    }
    const auto heard = heard_flags(ch.round(tx, listening), n);
    for (NodeId u = 0; u < n; ++u) {
      if (!num.numbered(u)) continue;
      const auto e = static_cast<std::int64_t>(t) - num.dist[u];
      if (mod3(e) != 2) continue;
      if (e + 1 >= 0) {
        const auto idx = static_cast<std::size_t>((e + 1) / 3);
        if (idx < L) out[u].set(idx, heard[u]);
      }
      active[u] = heard[u];
    }
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) out[candidates[i]] = messages[i];
  return out;
}

BeepClustering beep_cluster(const Graph& graph, const Numbering& num, std::span<const NodeId> candidates,
                            std::span<const std::uint64_t> ids, std::span<const Bits> codewords) {
  if (codewords.size() != candidates.size()) throw std::invalid_argument("beep_cluster: one codeword per candidate");
  return cluster_with(graph, num, candidates, ids, codewords,
                      [&](const Bits& w) { return si_decode_among(w, 1, ids, codewords); });
}

BeepClustering beep_cluster(const Graph& graph, const Numbering& num, std::span<const NodeId> candidates,
                            std::span<const std::uint64_t> ids, const SICode& code) {
  if (code.k < 1) throw std::invalid_argument("beep_cluster: need an SI(1) code");
  std::vector<Bits> words;
  for (std::uint64_t id : ids) words.push_back(code.codeword(id));
  return cluster_with(graph, num, candidates, ids, words, [&](const Bits& w) {
    DecodeResult r = si_decode(code, w);
    if (r.ids.size() > 1) r.more_than_k = true;
    return r;
  });
}

std::vector<std::uint8_t> boundary_probe_rounds(const Graph& graph, const Numbering& num, const BitStrings& received,
                                                std::size_t L) {
  const std::size_t n = graph.size();
  std::vector<std::uint8_t> flag(n, 0);
  std::vector<std::uint8_t> listening(n, 0);
  std::vector<NodeId> tx;
  Channel ch(graph, Model::Beep);
  for (std::size_t t = 0; t < L; ++t) {
    for (int half = 0; half < 2; ++half) {
      const bool beep_bit = half == 0;
      tx.clear();
      std::fill(listening.begin(), listening.end(), 0);
      for (NodeId u = 0; u < n; ++u) {
        if (!num.numbered(u)) continue;
        if (received[u].get(t) == beep_bit) {
          tx.push_back(u);
        } else {
          listening[u] = 1;
        }
      }
      for (const Delivery& d : ch.round(tx, listening)) flag[d.listener] = 1;
    }
  }
  return flag;
}

BitStrings beep_intercommunicate(const Graph& graph, const Numbering& num, const BeepClustering& c,
                                 const BitStrings& messages, std::size_t L) {
  check_node_messages(graph, c, messages, L, "beep_intercommunicate");
  const std::size_t n = graph.size();
  BitStrings relay(n, Bits(L));
  for (NodeId x = 0; x < n; ++x) {
    if (!num.numbered(x) || c.is_boundary(x)) continue;
    for (NodeId w : graph.neighbors(x)) {
      if (num.numbered(w) && c.is_boundary(w)) relay[x] |= messages[w];
    }
  }
  BitStrings out(n, Bits(L));
  for (NodeId u = 0; u < n; ++u) {
    if (!num.numbered(u) || !c.is_boundary(u)) continue;
    out[u] = messages[u];
    for (NodeId w : graph.neighbors(u)) {
      if (!num.numbered(w)) continue;
      out[u] |= c.is_boundary(w) ? messages[w] : relay[w];
    }
  }
  return out;
}

BitStrings beep_intercommunicate_rounds(const Graph& graph, const Numbering& num, const BeepClustering& c,
                                        const BitStrings& messages, std::size_t L) {
  check_node_messages(graph, c, messages, L, "beep_intercommunicate");
  const std::size_t n = graph.size();
  BitStrings out(n, Bits(L));
  std::vector<std::uint8_t> listening(n, 0);
  std::vector<NodeId> tx;
  Channel ch(graph, Model::Beep);
  auto sender = [&](NodeId u, std::size_t t) { return c.is_boundary(u) && messages[u].get(t); };
  for (std::size_t t = 0; t < L; ++t) {
    tx.clear();
    std::fill(listening.begin(), listening.end(), 0);
    for (NodeId u = 0; u < n; ++u) {
      if (!num.numbered(u)) continue;
      if (sender(u, t)) {
        tx.push_back(u);
      } else {
        listening[u] = 1;
      }
    }
    const auto heard1 = heard_flags(ch.round(tx, listening), n);
    tx.clear();
    std::fill(listening.begin(), listening.end(), 0);
    for (NodeId u = 0; u < n; ++u) {
      if (!num.numbered(u)) continue;
      if (sender(u, t) || (!c.is_boundary(u) && heard1[u])) {
        tx.push_back(u);
      } else {
        listening[u] = 1;
      }
    }
    const auto heard2 = heard_flags(ch.round(tx, listening), n);
    for (NodeId u = 0; u < n; ++u) {
      if (num.numbered(u) && c.is_boundary(u)) out[u].set(t, sender(u, t) || heard1[u] || heard2[u]);
    }
  }
  return out;
}

BitStrings beep_downlink(const Graph& graph, const Numbering& num, const BeepClustering& c,
                         const BitStrings& messages, std::size_t L) {
  check_node_messages(graph, c, messages, L, "beep_downlink");
  BitStrings acc(graph.size(), Bits(L));
  const auto by_dist = layers(num);
  for (std::size_t d = by_dist.size(); d-- > 0;) {
    for (NodeId u : by_dist[d]) {
      if (c.is_boundary(u)) acc[u] |= messages[u];
      for (NodeId w : graph.neighbors(u)) {
        if (num.numbered(w) && num.dist[w] == d + 1) acc[u] |= acc[w];
      }
    }
  }
  return acc;
}

BitStrings beep_downlink_rounds(const Graph& graph, const Numbering& num, const BeepClustering& c,
                                const BitStrings& messages, std::size_t L) {
  check_node_messages(graph, c, messages, L, "beep_downlink");
  const std::size_t n = graph.size();
  BitStrings rec(n, Bits(L));
  std::vector<std::uint8_t> active(n, 0);
  std::vector<std::uint8_t> listening(n, 0);
  std::vector<NodeId> tx;
  Channel ch(graph, Model::Beep);
  const std::uint64_t rounds = wave_rounds(num.horizon, L);
  const auto last = static_cast<std::int64_t>(3 * (L - 1));
  for (std::uint64_t step = 0; step < rounds; ++step) {
    const std::uint64_t t = rounds - 1 - step;
    tx.clear();
    std::fill(listening.begin(), listening.end(), 0);
    for (NodeId u = 0; u < n; ++u) {
      if (!num.numbered(u)) continue;
      const auto e = static_cast<std::int64_t>(t) - num.dist[u];
      if (mod3(e) == 0) {
        if (c.is_boundary(u) && e >= 0 && e <= last) active[u] |= messages[u].get(static_cast<std::size_t>(e / 3));
        if (active[u]) {
          tx.push_back(u);
          continue;
        }
      }
      listening[u] = 1;
    }
    const auto heard = heard_flags(ch.round(tx, listening), n);
    for (NodeId u = 0; u < n; ++u) {
      if (!num.numbered(u)) continue;
      const auto e = static_cast<std::int64_t>(t) - num.dist[u];
      if (mod3(e) != 1) continue;
      active[u] = heard[u];
      if (num.dist[u] == 0 && t >= 1 && static_cast<std::int64_t>(t) <= last + 1) {
        rec[u].set(static_cast<std::size_t>((e - 1) / 3), active[u]);
      }
    }
  }
  for (NodeId u = 0; u < n; ++u) {
    if (num.numbered(u) && num.dist[u] == 0 && c.is_boundary(u)) rec[u] |= messages[u];
  }
  return rec;
}

std::vector<std::uint8_t> max_detect_intercommunicate(const Graph& graph, const Numbering& num,
                                                      const BeepClustering& c, const BitStrings& messages,
                                                      std::size_t L) {
  check_node_messages(graph, c, messages, L, "max_detect_intercommunicate");
  const std::size_t n = graph.size();
  std::vector<std::uint8_t> marked(n, 0);
  std::vector<std::uint8_t> listening(n, 0);
  std::vector<NodeId> tx;
  Channel ch(graph, Model::Beep);
  auto comparing = [&](NodeId u) { return c.is_boundary(u) && !marked[u]; };
  for (std::size_t t = 0; t < L; ++t) {
    tx.clear();
    std::fill(listening.begin(), listening.end(), 0);
    for (NodeId u = 0; u < n; ++u) {
      if (!num.numbered(u)) continue;
      if (comparing(u) && messages[u].get(t)) {
        tx.push_back(u);
      } else {
        listening[u] = 1;
      }
    }
    const auto heard1 = heard_flags(ch.round(tx, listening), n);
    tx.clear();
    std::fill(listening.begin(), listening.end(), 0);
    for (NodeId u = 0; u < n; ++u) {
      if (!num.numbered(u)) continue;
      // A marked boundary drops out and does not relay.
      const bool beeps = comparing(u) ? messages[u].get(t) : !c.is_boundary(u) && heard1[u] != 0;
      if (beeps) {
        tx.push_back(u);
      } else {
        listening[u] = 1;
      }
    }
    const auto heard2 = heard_flags(ch.round(tx, listening), n);
    for (NodeId u = 0; u < n; ++u) {
      if (num.numbered(u) && comparing(u) && !messages[u].get(t) && (heard1[u] || heard2[u])) marked[u] = 1;
    }
  }
  return marked;
}

std::vector<std::uint8_t> beep_non_isolated(const Graph& graph, const BeepClustering& c,
                                            std::span<const NodeId> candidates) {
  std::unordered_map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < candidates.size(); ++i) index.emplace(candidates[i], i);
  std::vector<std::uint8_t> flag(candidates.size(), 0);
  auto touch = [&](NodeId a, NodeId b) {
    if (!c.clustered[b] || c.cluster[b] == c.cluster[a]) return;
    if (auto it = index.find(c.cluster[a]); it != index.end()) flag[it->second] = 1;
  };
  for (NodeId u = 0; u < graph.size(); ++u) {
    if (!c.clustered[u]) continue;
    for (NodeId w : graph.neighbors(u)) {
      touch(u, w);
      for (NodeId x : graph.neighbors(w)) touch(u, x);
    }
  }
  return flag;
}

namespace {

ApproxCodeParams beep_count_code(std::size_t n, const Constants& k) {
  const std::uint64_t N = std::max<std::size_t>(n, 2);
  const auto max_count = static_cast<std::uint64_t>(std::ceil(20.0 * std::log2(static_cast<double>(N)))) + 1;
  return ApproxCodeParams::make(N, max_count, k.beep_code_delta, k.beep_code_const);
}

unsigned full_strength(std::size_t n, const Constants& k) { return ceil_log2(n) + k.si_slack; }

std::size_t si1_length(std::size_t n) { return si_length(std::uint64_t{1} << id_bits(n), 1); }

std::size_t full_length(std::size_t n, const Constants& k) {
  return si_length(std::uint64_t{1} << id_bits(n), full_strength(n, k));
}

unsigned degree_width(const ApproxCodeParams& p) { return static_cast<unsigned>(std::bit_width(p.block_count)); }

constexpr std::uint64_t kClusterCode = 0x5349;
constexpr std::uint64_t kIdCode = 0x4944;
constexpr std::uint64_t kPairCode = 0x5041;

}  // namespace

std::uint64_t beep_debate_rounds(std::size_t n, std::uint64_t r, BeepVariant variant, const Constants& k) {
  const std::size_t s1 = si1_length(n);
  std::uint64_t rounds = r + wave_rounds(r, s1) + 2 * s1;
  auto exchange = [&](std::size_t L) { return 2 * wave_rounds(r, L) + 2 * L; };
  if (variant == BeepVariant::Fast) {
    const ApproxCodeParams p = beep_count_code(n, k);
    const std::size_t w = degree_width(p) + id_bits(n);
    rounds += exchange(p.length());
    rounds += wave_rounds(r, w) + 2 * w + wave_rounds(r, 1);
  } else {
    rounds += 2 * exchange(full_length(n, k));
  }
  return rounds;
}

BeepDebateOutcome run_debate_beep(const Graph& graph, const CandidateSet& cand, unsigned debate_index,
                                  BeepVariant variant, const Constants& k, const RandomSource& rng) {
  if (cand.size() == 0) throw std::invalid_argument("run_debate_beep: no candidates");
  const std::size_t n = graph.size();
  const std::uint64_t r = debate_radius(n, graph.diameter(), debate_index);
  BeepDebateOutcome out;
  out.survives.assign(cand.size(), 1);
  out.rounds = beep_debate_rounds(n, r, variant, k);

  const Numbering num = numbering(graph, cand.nodes, r);
  const std::size_t s1 = si1_length(n);
  std::vector<Bits> si1;
  for (std::uint64_t id : cand.ids) si1.push_back(si_codeword(rng, kClusterCode, 1, s1, id));
  const BeepClustering clus = beep_cluster(graph, num, cand.nodes, cand.ids, si1);
  const auto iso = beep_non_isolated(graph, clus, cand.nodes);
  out.non_isolated = static_cast<std::size_t>(std::count(iso.begin(), iso.end(), 1));

  auto exchange = [&](const std::vector<Bits>& msgs, std::size_t L) {
    const BitStrings up = beep_uplink(graph, num, cand.nodes, msgs, L);
    const BitStrings ic = beep_intercommunicate(graph, num, clus, up, L);
    return beep_downlink(graph, num, clus, ic, L);
  };

  if (variant == BeepVariant::Fast) {
    const ApproxCodeParams p = beep_count_code(n, k);
    std::vector<Bits> words;
    for (NodeId c : cand.nodes) {
      Stream s = rng.stream(purpose::kCodeSample, c, debate_index);
      words.push_back(approx_sample(p, s));
    }
    const BitStrings down = exchange(words, p.length());
    const unsigned qw = degree_width(p);
    const unsigned b = id_bits(n);
    std::vector<Bits> cmp;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const ApproxEstimate e = approx_decode(p, down[cand.nodes[i]]);
      const std::uint64_t q = e.zero ? 0 : static_cast<std::uint64_t>(e.exponent + 1);
      cmp.push_back(concat(Bits::from_uint(q, qw), Bits::from_uint(cand.ids[i], b)));
    }
    const std::size_t w = qw + b;
    const BitStrings up = beep_uplink(graph, num, cand.nodes, cmp, w);
    const auto marked = max_detect_intercommunicate(graph, num, clus, up, w);
    BitStrings flags(n, Bits(1));
    for (NodeId v = 0; v < n; ++v) flags[v].set(0, marked[v] != 0);
    const BitStrings report = beep_downlink(graph, num, clus, flags, 1);
    for (std::size_t i = 0; i < cand.size(); ++i) out.survives[i] = !report[cand.nodes[i]].get(0);
  } else {
    const unsigned strength = full_strength(n, k);
    const std::size_t L = full_length(n, k);
    const unsigned b = id_bits(n);
    std::vector<Bits> id_words;
    for (std::uint64_t id : cand.ids) id_words.push_back(si_codeword(rng, kIdCode, strength, L, id));
    const BitStrings down = exchange(id_words, L);
    std::vector<std::uint64_t> degree(cand.size(), 0);
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const DecodeResult d = si_decode_among(down[cand.nodes[i]], strength, cand.ids, id_words);
      if (d.more_than_k) {
        degree[i] = strength + 1;
      } else {
        degree[i] = static_cast<std::uint64_t>(
            std::count_if(d.ids.begin(), d.ids.end(), [&](std::uint64_t id) { return id != cand.ids[i]; }));
      }
    }
    auto pair_key = [&](std::uint64_t deg, std::uint64_t id) { return (deg << b) | id; };
    std::vector<std::uint64_t> dict;
    std::vector<Bits> dict_words;
    for (std::uint64_t deg = 0; deg <= strength + 1; ++deg) {
      for (std::uint64_t id : cand.ids) {
        dict.push_back(pair_key(deg, id));
        dict_words.push_back(si_codeword(rng, kPairCode, strength, L, pair_key(deg, id)));
      }
    }
    std::vector<Bits> pair_words;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      pair_words.push_back(si_codeword(rng, kPairCode, strength, L, pair_key(degree[i], cand.ids[i])));
    }
    const BitStrings pairs = exchange(pair_words, L);
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const DecodeResult d = si_decode_among(pairs[cand.nodes[i]], strength, dict, dict_words);
      if (d.more_than_k) continue;
      const std::uint64_t own = pair_key(degree[i], cand.ids[i]);
      for (std::uint64_t got : d.ids) {
        if (got > own) out.survives[i] = 0;
      }
    }
  }
  return out;
}

ElectionResult elect_leader_beep(const Graph& graph, const Constants& k, const RandomSource& rng,
                                 BeepVariant variant, std::uint64_t round_limit) {
  const std::size_t n = graph.size();
  ElectionResult res;
  res.outputs.assign(n, std::nullopt);
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
      st.rounds = beep_debate_rounds(n, st.radius, variant, k);
      st.survivors = 1;
    } else {
      const BeepDebateOutcome o = run_debate_beep(graph, cand, i, variant, k, rng);
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
  const unsigned b = id_bits(n);
  const Numbering num = numbering(graph, cand.nodes, graph.diameter());
  std::vector<Bits> msgs;
  for (std::uint64_t id : cand.ids) msgs.push_back(Bits::from_uint(id, b));
  const BitStrings got = beep_uplink(graph, num, cand.nodes, msgs, b);
  res.rounds += graph.diameter() + wave_rounds(graph.diameter(), b);
  for (NodeId v = 0; v < n; ++v) {
    if (num.numbered(v)) res.outputs[v] = got[v].to_uint();
  }
  if (round_limit != 0 && res.rounds > round_limit) {
    res.reason = "round limit exceeded";
    return res;
  }
  judge(res, cand.ids);
  return res;
}

}  // namespace radiole
