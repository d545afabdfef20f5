#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "radiole/beep.hpp"
#include "radiole/harness.hpp"

using namespace radiole;

namespace {

using Edges = std::vector<std::pair<NodeId, NodeId>>;

Graph path(std::size_t n) { return generate_graph("path", n, RandomSource(0)); }

struct Instance {
  Graph graph;
  std::vector<NodeId> candidates;
  Numbering num;
  BeepClustering clus;
};

const SICode& si1() {
  static const SICode code = si_generate(16, 1, RandomSource(77));
  return code;
}

Instance clustered(Graph g, std::vector<NodeId> cands) {
  Numbering num = numbering(g, cands);
  std::vector<std::uint64_t> ids;
  for (std::size_t i = 0; i < cands.size(); ++i) ids.push_back(i + 1);
  BeepClustering c = beep_cluster(g, num, cands, ids, si1());
  return {std::move(g), std::move(cands), std::move(num), std::move(c)};
}

BitStrings blank(std::size_t n, std::size_t L) { return BitStrings(n, Bits(L)); }

bool same_at(const BitStrings& a, const BitStrings& b, const std::vector<NodeId>& nodes) {
  for (NodeId v : nodes) {
    if (a[v] != b[v]) return false;
  }
  return true;
}

// OR of all candidate messages at distance dist(u), by brute force over BFS from each candidate.
BitStrings uplink_oracle(const Graph& g, const std::vector<NodeId>& cands, const std::vector<Bits>& msgs,
                         std::size_t L) {
  const NodeId* begin = cands.data();
  const auto near = bfs_distances(g, std::span<const NodeId>(begin, cands.size()));
  BitStrings out = blank(g.size(), L);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const NodeId one[] = {cands[i]};
    const auto d = bfs_distances(g, one);
    for (NodeId v = 0; v < g.size(); ++v) {
      if (d[v] == near[v]) out[v] |= msgs[i];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("numbering") {
  const Graph s = generate_graph("star", 9, RandomSource(0));
  const NodeId center[] = {0};
  const Numbering a = numbering(s, center);
  for (NodeId v = 1; v < 9; ++v) CHECK(a.dist[v] == 1);
  const NodeId left[] = {0};
  CHECK(numbering(path(4), left).dist == std::vector<std::uint32_t>{0, 1, 2, 3});
  const NodeId l2[] = {0};
  const Numbering cut = numbering(path(6), l2, 2);
  CHECK(cut.numbered(2));
  CHECK_FALSE(cut.numbered(3));

  for (int t = 0; t < 50; ++t) {
    const Graph g = generate_graph("random_connected", 20 + 4 * t, RandomSource(30, t));
    const auto cand = sample_candidates(g.size(), RandomSource(31, t), 1.0);
    if (cand.size() == 0) continue;
    CHECK(numbering(g, cand.nodes).dist == bfs_distances(g, cand.nodes));
  }
}

TEST_CASE("wave rounds") {
  CHECK(wave_rounds(10, 6) == 10 + 18 - 2);
  CHECK(wave_rounds(0, 1) == 1);
}

TEST_CASE("uplink superimposes equidistant candidates") {
  const Graph g = path(5);
  const std::vector<NodeId> cands = {0, 4};
  const std::vector<Bits> msgs = {Bits::from_string("101101"), Bits::from_string("101011")};
  const Numbering num = numbering(g, cands);
  const BitStrings up = beep_uplink(g, num, cands, msgs, 6);
  CHECK(up[2].to_string() == "101111");
  CHECK(up[1].to_string() == "101101");
  CHECK(up[3].to_string() == "101011");
  CHECK(up[0] == msgs[0]);
  CHECK(beep_uplink_rounds(g, num, cands, msgs, 6) == up);
}

TEST_CASE("uplink: single source and unique nearest candidate") {
  const Graph g = generate_graph("grid", 30, RandomSource(0));
  const std::vector<NodeId> one = {7};
  const std::vector<Bits> ones = {Bits::from_string("1111")};
  const BitStrings up = beep_uplink(g, numbering(g, one), one, ones, 4);
  for (const Bits& b : up) CHECK(b.to_string() == "1111");

  const Graph p = path(6);
  const std::vector<NodeId> c = {0};
  const std::vector<Bits> m = {Bits::from_string("10110")};
  const Numbering num = numbering(p, c);
  const BitStrings a = beep_uplink(p, num, c, m, 5);
  const BitStrings b = beep_uplink_rounds(p, num, c, m, 5);
  for (NodeId v = 0; v < 6; ++v) {
    CHECK(a[v].to_string() == "10110");
    CHECK(b[v].to_string() == "10110");
  }
}

TEST_CASE("uplink against the BFS oracle") {
  for (int t = 0; t < 30; ++t) {
    const Graph g = generate_graph("random_connected", 60, RandomSource(32, t));
    const auto cand = sample_candidates(g.size(), RandomSource(33, t), 2.0);
    if (cand.size() == 0) continue;
    std::vector<Bits> msgs;
    for (std::uint64_t id : cand.ids) msgs.push_back(Bits::from_uint(id, 12));
    const Numbering num = numbering(g, cand.nodes);
    const BitStrings fast = beep_uplink(g, num, cand.nodes, msgs, 12);
    CHECK(fast == uplink_oracle(g, cand.nodes, msgs, 12));
    CHECK(beep_uplink_rounds(g, num, cand.nodes, msgs, 12) == fast);
  }
}

TEST_CASE("beep clustering") {
  const Instance one = clustered(generate_graph("grid", 25, RandomSource(0)), {12});
  for (NodeId v = 0; v < 25; ++v) {
    CHECK(one.clus.clustered[v]);
    CHECK(one.clus.cluster[v] == 12);
    CHECK_FALSE(one.clus.is_boundary(v));
  }

  const Instance two = clustered(path(5), {0, 4});
  CHECK_FALSE(two.clus.clustered[2]);
  CHECK(two.clus.is_boundary(1));
  CHECK(two.clus.is_boundary(3));
  CHECK(two.clus.cluster[1] == 0);
  CHECK(two.clus.cluster[3] == 4);
  CHECK_FALSE(two.clus.is_boundary(0));
}

TEST_CASE("boundary probe is symmetric") {
  for (int t = 0; t < 50; ++t) {
    const Graph g = generate_graph("random_connected", 40, RandomSource(34, t));
    const auto cand = sample_candidates(g.size(), RandomSource(35, t), 3.0);
    if (cand.size() == 0) continue;
    std::vector<NodeId> nodes = cand.nodes;
    if (nodes.size() > 15) nodes.resize(15);
    const Instance in = clustered(g, nodes);
    const auto probe = boundary_probe_rounds(g, in.num, in.clus.received, si1().length);
    for (NodeId u = 0; u < g.size(); ++u) {
      if (!in.clus.clustered[u]) continue;
      CHECK(bool(probe[u]) == bool(in.clus.boundary[u]));
      for (NodeId w : g.neighbors(u)) {
        if (in.clus.clustered[w] && in.clus.cluster[w] != in.clus.cluster[u]) {
          CHECK(in.clus.is_boundary(u));
          CHECK(in.clus.is_boundary(w));
        }
      }
    }
  }
}

TEST_CASE("intercommunication") {
  SUBCASE("touching boundaries") {
    const Instance in = clustered(path(4), {0, 3});
    BitStrings m = blank(4, 3);
    m[1] = Bits::from_string("100");
    m[2] = Bits::from_string("001");
    const BitStrings out = beep_intercommunicate(in.graph, in.num, in.clus, m, 3);
    CHECK(out[1].to_string() == "101");
    CHECK(out[2].to_string() == "101");
    CHECK(beep_intercommunicate_rounds(in.graph, in.num, in.clus, m, 3) == out);
  }
  SUBCASE("bridged by an unclustered node") {
    const Instance in = clustered(path(5), {0, 4});
    BitStrings m = blank(5, 3);
    m[1] = Bits::from_string("100");
    m[3] = Bits::from_string("001");
    const BitStrings out = beep_intercommunicate(in.graph, in.num, in.clus, m, 3);
    CHECK(out[1].to_string() == "101");
    CHECK(out[3].to_string() == "101");
    CHECK(beep_intercommunicate_rounds(in.graph, in.num, in.clus, m, 3) == out);
  }
  SUBCASE("isolated boundary") {
    const Instance in = clustered(path(9), {0, 8});
    BitStrings m = blank(9, 3);
    m[3] = Bits::from_string("010");
    m[5] = Bits::from_string("000");
    const BitStrings out = beep_intercommunicate(in.graph, in.num, in.clus, m, 3);
    REQUIRE(in.clus.is_boundary(3));
    CHECK(out[3].to_string() == "010");
  }
}

TEST_CASE("intercommunication matches round simulation on random instances") {
  for (int t = 0; t < 30; ++t) {
    const Graph g = generate_graph("random_connected", 50, RandomSource(36, t));
    const auto cand = sample_candidates(g.size(), RandomSource(37, t), 2.0);
    if (cand.size() < 2) continue;
    std::vector<NodeId> nodes = cand.nodes;
    if (nodes.size() > 15) nodes.resize(15);
    const Instance in = clustered(g, nodes);
    BitStrings m = blank(g.size(), 10);
    for (NodeId v = 0; v < g.size(); ++v) m[v] = Bits::from_uint(RandomSource(38, t).bits(1, v, 0), 10);
    CHECK(beep_intercommunicate(g, in.num, in.clus, m, 10) == beep_intercommunicate_rounds(g, in.num, in.clus, m, 10));
  }
}

TEST_CASE("downlink") {
  SUBCASE("two boundaries") {
    const Instance in = clustered(path(9), {0, 4, 8});
    REQUIRE(in.clus.is_boundary(3));
    REQUIRE(in.clus.is_boundary(5));
    BitStrings m = blank(9, 3);
    m[3] = Bits::from_string("100");
    m[5] = Bits::from_string("001");
    const BitStrings down = beep_downlink(in.graph, in.num, in.clus, m, 3);
    CHECK(down[4].to_string() == "101");
    CHECK(same_at(beep_downlink_rounds(in.graph, in.num, in.clus, m, 3), down, in.candidates));
    const BitStrings quiet = beep_downlink(in.graph, in.num, in.clus, blank(9, 3), 3);
    CHECK(quiet[4].to_string() == "000");
  }
  SUBCASE("one boundary on a path cluster") {
    const Instance in = clustered(path(7), {0, 6});
    REQUIRE(in.clus.is_boundary(2));
    BitStrings m = blank(7, 4);
    m[2] = Bits::from_string("1011");
    const BitStrings down = beep_downlink(in.graph, in.num, in.clus, m, 4);
    CHECK(down[0].to_string() == "1011");
    CHECK(same_at(beep_downlink_rounds(in.graph, in.num, in.clus, m, 4), down, in.candidates));
  }
}

TEST_CASE("downlink OR oracle on random instances") {
  for (int t = 0; t < 50; ++t) {
    const Graph g = generate_graph("random_connected", 64, RandomSource(39, t));
    const auto cand = sample_candidates(g.size(), RandomSource(40, t), 2.0);
    if (cand.size() == 0) continue;
    std::vector<NodeId> nodes = cand.nodes;
    if (nodes.size() > 15) nodes.resize(15);
    const Instance in = clustered(g, nodes);
    BitStrings m = blank(g.size(), 16);
    for (NodeId v = 0; v < g.size(); ++v) {
      if (in.clus.is_boundary(v)) m[v] = Bits::from_uint(RandomSource(41, t).bits(2, v, 0), 16);
    }
    const BitStrings down = beep_downlink(g, in.num, in.clus, m, 16);
    CHECK(same_at(beep_downlink_rounds(g, in.num, in.clus, m, 16), down, nodes));
    for (NodeId c : nodes) {
      Bits expect(16);
      for (NodeId v = 0; v < g.size(); ++v) {
        if (in.clus.is_boundary(v) && in.clus.cluster[v] == c) expect |= m[v];
      }
      CHECK(down[c] == expect);
    }
  }
}

TEST_CASE("max detection") {
  const Instance in = clustered(path(4), {0, 3});
  BitStrings m = blank(4, 3);
  m[1] = Bits::from_string("110");
  m[2] = Bits::from_string("101");
  auto marked = max_detect_intercommunicate(in.graph, in.num, in.clus, m, 3);
  CHECK(marked[2] == 1);
  CHECK(marked[1] == 0);
  m[2] = m[1];
  marked = max_detect_intercommunicate(in.graph, in.num, in.clus, m, 3);
  CHECK(marked[1] == 0);
  CHECK(marked[2] == 0);

  // boundaries 3, 4, 5 form a triangle; candidates 0, 1, 2 hang off them
  const Edges e = {{0, 3}, {1, 4}, {2, 5}, {3, 4}, {4, 5}, {3, 5}};
  const Instance tri = clustered(Graph::from_edges(6, e), {0, 1, 2});
  BitStrings t = blank(6, 3);
  t[3] = Bits::from_string("111");
  t[4] = Bits::from_string("101");
  t[5] = Bits::from_string("100");
  marked = max_detect_intercommunicate(tri.graph, tri.num, tri.clus, t, 3);
  CHECK(marked[3] == 0);
  CHECK(marked[4] == 1);
  CHECK(marked[5] == 1);
}

TEST_CASE("beep debates") {
  const Constants k;
  const Graph p = path(10);
  CandidateSet one;
  one.nodes = {3};
  one.ids = {9};
  CHECK(run_debate_beep(p, one, 1, BeepVariant::Fast, k, RandomSource(1)).survives == std::vector<std::uint8_t>{1});

  for (BeepVariant variant : {BeepVariant::Fast, BeepVariant::Full}) {
    int ok = 0;
    for (int t = 0; t < 100; ++t) {
      CandidateSet two;
      two.nodes = {4, 5};
      two.ids = {200, 100};
      ok += run_debate_beep(p, two, 1, variant, k, RandomSource(42, t)).survives == std::vector<std::uint8_t>{1, 0};
    }
    CHECK(ok >= 99);
  }
}

TEST_CASE("fast debate removes a fifth") {
  const Constants k;
  int ok = 0;
  int counted = 0;
  for (int t = 0; t < 40; ++t) {
    const Graph g = generate_graph("random_connected", 256, RandomSource(43, t));
    const RandomSource rng(44, t);
    const auto cand = sample_candidates(g.size(), rng, k.candidate_factor);
    const auto o = run_debate_beep(g, cand, 1, BeepVariant::Fast, k, rng);
    if (2 * o.non_isolated < cand.size()) continue;
    ++counted;
    const auto left = std::count(o.survives.begin(), o.survives.end(), 1);
    ok += 5 * (cand.size() - left) >= cand.size();
  }
  CHECK(counted > 0);
  CHECK(ok * 100 >= counted * 95);
}

TEST_CASE("beep leader election") {
  const Graph single = Graph::from_edges(1, {});
  const ElectionResult r = elect_leader_beep(single, Constants{}, RandomSource(1));
  CHECK(r.success);

  const Graph g = generate_graph("grid", 256, RandomSource(0));
  int ok = 0;
  for (int t = 0; t < 100; ++t) ok += elect_leader_beep(g, Constants{}, RandomSource(45, t)).success;
  CHECK(ok >= 99);
}
