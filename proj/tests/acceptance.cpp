#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radiole/beep.hpp"
#include "radiole/codes.hpp"
#include "radiole/decay.hpp"
#include "radiole/harness.hpp"
#include "radiole/nocd.hpp"

using namespace radiole;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1 -------------------------------------------------------------------------

Verdict decay_phase_rates() {
  const auto start = Clock::now();
  const std::size_t n = 64;
  const Graph star = generate_graph("star", n, RandomSource(0));
  const unsigned L = make_decay_config(n, star.diameter()).phase_len;
  const int trials = 10000;
  bool ok = true;
  std::string detail;
  for (std::uint64_t m : {1, 2, 4, 8, 16, 32}) {
    std::vector<NodeId> senders;
    for (NodeId v = 1; v <= m; ++v) senders.push_back(v);
    int got = 0;
    for (int t = 0; t < trials; ++t) got += decay_phase(star, senders, RandomSource(100 + m, t)).received(0);
    const double rate = double(got) / trials;
    const double expect = phase_success_oracle(m, L);
    const double se = std::sqrt(expect * (1 - expect) / trials);
    const bool good = rate >= 0.1 && std::abs(rate - expect) <= 3 * se;
    ok = ok && good;
    detail += fmt("m=%llu %.4f/%.4f ", static_cast<unsigned long long>(m), rate, expect);
  }
  const double secs = seconds_since(start);
  return {ok && secs < 10, detail + fmt("(%.1fs)", secs)};
}

// 2 -------------------------------------------------------------------------

Verdict fast_decay_structure() {
  bool early = false;
  int worst = 1000;
  std::string detail;
  for (std::size_t n : {8, 32, 64, 128, 256}) {
    const Graph p = generate_graph("path", n, RandomSource(0));
    const DecayConfig cfg = make_decay_config(n, p.diameter());
    const auto sched = ProbabilitySchedule::repeated_decay(cfg.phase_len);
    const std::uint64_t T = cfg.broadcast_budget(p.diameter());
    const NodeId src[] = {0};
    int all = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto o = fast_decay_broadcast(p, src, cfg.delta, sched, T, RandomSource(200 + n, t), cfg.alpha);
      bool informed = true;
      for (NodeId v = 1; v < n; ++v) {
        informed = informed && o.informed(v);
        if (o.informed(v) && o.round[v] < (v - 1) * std::uint64_t{cfg.delta}) early = true;
      }
      all += informed;
    }
    worst = std::min(worst, all);
    detail += fmt("n=%zu %d/1000 ", n, all);
  }
  return {!early && worst >= 990, detail + (early ? "early reception" : "no early reception")};
}

// 3 -------------------------------------------------------------------------

bool elimination_holds(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                       const std::vector<std::uint64_t>& ids) {
  const auto survives = elimination(n, edges, ids);
  std::vector<unsigned> deg(n, 0);
  for (auto [a, b] : edges) ++deg[a], ++deg[b];
  std::size_t non_isolated = 0;
  std::size_t marked = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (deg[v] == 0) continue;
    ++non_isolated;
    marked += !survives[v];
  }
  NodeId best = 0;
  for (NodeId v = 1; v < n; ++v) {
    if (std::pair(deg[v], ids[v]) > std::pair(deg[best], ids[best])) best = v;
  }
  return 2 * marked >= non_isolated && survives[best];
}

Verdict elimination_bound() {
  const auto start = Clock::now();
  std::size_t checked = 0;
  std::size_t bad = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::pair<NodeId, NodeId>> all;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) all.emplace_back(a, b);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
      std::vector<std::pair<NodeId, NodeId>> edges;
      for (std::size_t e = 0; e < all.size(); ++e) {
        if ((mask >> e) & 1) edges.push_back(all[e]);
      }
      std::vector<std::uint64_t> ids(n);
      std::iota(ids.begin(), ids.end(), 0);
      do {
        ++checked;
        bad += !elimination_holds(n, edges, ids);
      } while (std::next_permutation(ids.begin(), ids.end()));
    }
  }
  const RandomSource rng(300);
  for (std::uint64_t t = 0; t < 10000; ++t) {
    Stream s = rng.stream(1, t);
    const std::size_t n = 1 + s() % 10;
    const double p = double(s() % 1001) / 1000.0;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) {
        if (double(s() % 1000000) < p * 1e6) edges.emplace_back(a, b);
      }
    }
    std::set<std::uint64_t> used;
    std::vector<std::uint64_t> ids;
    while (ids.size() < n) {
      const std::uint64_t id = s() >> 40;
      if (used.insert(id).second) ids.push_back(id);
    }
    ++checked;
    bad += !elimination_holds(n, edges, ids);
  }
  const double secs = seconds_since(start);
  return {bad == 0 && secs < 30, fmt("%zu instances, %zu exceptions (%.1fs)", checked, bad, secs)};
}

// 4 -------------------------------------------------------------------------

Verdict si_codes() {
  std::size_t bad = 0;
  std::size_t codes = 0;
  for (std::uint64_t N = 2; N <= 12; ++N) {
    for (unsigned k = 1; k <= 2 && k < N; ++k) {
      const SICode c = si_generate(N, k, RandomSource(400 + N, k));
      ++codes;
      const std::size_t expect_len = 4 * (k + 1) * (k + 1) * ceil_log2(N);
      if (!c.verified || !si_verify(c, static_cast<unsigned>(N)) || c.length != expect_len) {
        ++bad;
        continue;
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
        if (static_cast<unsigned>(std::popcount(mask)) > k) continue;
        std::vector<std::uint64_t> members;
        Bits word(c.length);
        for (std::uint64_t i = 0; i < N; ++i) {
          if ((mask >> i) & 1) {
            members.push_back(i);
            word |= c.codeword(i);
          }
        }
        const DecodeResult d = si_decode(c, word);
        bad += d.more_than_k || d.ids != members;
      }
    }
  }
  return {bad == 0, fmt("%zu codes, %zu failures", codes, bad)};
}

// 5 -------------------------------------------------------------------------

Verdict approximate_counting() {
  const auto start = Clock::now();
  const ApproxCodeParams p = ApproxCodeParams::make(64, 64, 0.1, 48.0);
  const std::vector<std::size_t> js = {1, 2, 4, 8, 16, 32};
  std::vector<int> within(js.size(), 0);
  const int trials = 1000;
  const RandomSource rng(500);
  // Each trial draws 32 codewords; the count j uses the first j of them.
  for (int t = 0; t < trials; ++t) {
    Bits acc(p.length());
    std::size_t next = 0;
    for (std::size_t i = 0; i < js.size(); ++i) {
      for (; next < js[i]; ++next) acc |= approx_sample(p, rng, 64 * std::uint64_t(t) + next);
      const double est = approx_decode(p, acc).value;
      const double j = double(js[i]);
      within[i] += est >= j / 1.1 && est <= j * 1.1;
    }
  }
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < js.size(); ++i) {
    ok = ok && within[i] * 100 >= trials * 95;
    detail += fmt("j=%zu %d/%d ", js[i], within[i], trials);
  }
  const double secs = seconds_since(start);
  return {ok && secs < 60, detail + fmt("(%.1fs)", secs)};
}

// 6 -------------------------------------------------------------------------

Verdict beep_waves() {
  std::size_t numbering_bad = 0;
  std::size_t downlink_bad = 0;
  std::size_t instances = 0;
  const SICode code = si_generate(16, 1, RandomSource(600));
  for (int t = 0; t < 50; ++t) {
    const Graph g = generate_graph("random_connected", 40 + 2 * t, RandomSource(601, t));
    const auto cand = sample_candidates(g.size(), RandomSource(602, t), 2.0);
    if (cand.nodes.empty()) {
      ++numbering_bad;
      continue;
    }
    const Numbering num = numbering(g, cand.nodes);
    numbering_bad += num.dist != bfs_distances(g, cand.nodes);
  }
  for (int t = 0; instances < 50; ++t) {
    const Graph g = generate_graph("random_connected", 64, RandomSource(603, t));
    auto nodes = sample_candidates(g.size(), RandomSource(604, t), 2.0).nodes;
    if (nodes.empty()) continue;
    if (nodes.size() > 15) nodes.resize(15);
    ++instances;
    std::vector<std::uint64_t> ids(nodes.size());
    std::iota(ids.begin(), ids.end(), 1);
    const Numbering num = numbering(g, nodes);
    const BeepClustering clus = beep_cluster(g, num, nodes, ids, code);
    const std::size_t L = 24;
    BitStrings m(g.size(), Bits(L));
    for (NodeId v = 0; v < g.size(); ++v) {
      if (clus.is_boundary(v)) m[v] = Bits::from_uint(RandomSource(605, t).bits(1, v, 0), L);
    }
    const BitStrings down = beep_downlink_rounds(g, num, clus, m, L);
    for (NodeId c : nodes) {
      Bits expect(L);
      for (NodeId v = 0; v < g.size(); ++v) {
        if (clus.is_boundary(v) && clus.cluster[v] == c) expect |= m[v];
      }
      downlink_bad += down[c] != expect;
    }
  }
  const Graph p = generate_graph("path", 5, RandomSource(0));
  const std::vector<NodeId> two = {0, 4};
  const std::vector<Bits> msgs = {Bits::from_string("101101"), Bits::from_string("101011")};
  const std::string middle = beep_uplink_rounds(p, numbering(p, two), two, msgs, 6)[2].to_string();
  return {numbering_bad == 0 && downlink_bad == 0 && middle == "101111",
          fmt("numbering mismatches %zu/50, uplink middle %s, downlink mismatches %zu", numbering_bad, middle.c_str(),
              downlink_bad)};
}

// 7, 8 ----------------------------------------------------------------------

struct RunStats {
  std::size_t runs = 0;
  std::size_t success = 0;
  std::size_t candidates_in_range = 0;
  std::size_t qualifying = 0;
  std::size_t progressed = 0;
};

void run_family(Model model, const std::string& family, std::size_t n, std::size_t trials, RunStats& s,
                std::vector<std::uint64_t>* rounds = nullptr) {
  ExperimentConfig cfg;
  cfg.model = model;
  cfg.generator = family;
  cfg.n = n;
  cfg.seed = 700 + n;
  const double cap = 20.0 * std::log2(double(n));
  const double keep = model == Model::NoCD ? 0.95 : 0.9;
  for (std::size_t t = 0; t < trials; ++t) {
    const Graph graph = trial_graph(cfg, t);
    const auto limit = static_cast<std::uint64_t>(
        std::ceil(cfg.round_limit_mult * double(election_budget(graph, model, cfg.variant, cfg.constants))));
    const ElectionResult r = run_election(graph, model, cfg.variant, cfg.constants, RandomSource(cfg.seed, t), limit);
    ++s.runs;
    s.success += r.success && outputs_agree(r.outputs);
    s.candidates_in_range += r.candidates >= 1 && double(r.candidates) <= cap;
    for (const DebateStats& d : r.debates) {
      if (d.incoming < 2 || 2 * d.non_isolated < d.incoming) continue;
      ++s.qualifying;
      s.progressed += double(d.survivors) <= std::ceil(keep * double(d.incoming));
    }
    if (rounds) rounds->push_back(r.rounds);
  }
}

struct ElectionVerdicts {
  Verdict end_to_end;
  Verdict progress;
};

ElectionVerdicts elections() {
  const auto start = Clock::now();
  bool e2e = true;
  std::string detail;
  RunStats per_model[2];
  for (Model model : {Model::NoCD, Model::Beep}) {
    RunStats& total = per_model[model == Model::Beep];
    for (const char* family : {"path", "cycle", "grid", "random_connected"}) {
      for (std::size_t n : {64, 128, 256}) {
        RunStats s;
        run_family(model, family, n, 100, s);
        const bool good = s.success * 100 >= s.runs * 99 && s.candidates_in_range * 100 >= s.runs * 99;
        e2e = e2e && good;
        if (!good) detail += fmt("%s %s n=%zu: %zu/%zu ok ", to_string(model).c_str(), family, n, s.success, s.runs);
        total.runs += s.runs;
        total.success += s.success;
        total.candidates_in_range += s.candidates_in_range;
        total.qualifying += s.qualifying;
        total.progressed += s.progressed;
      }
    }
    detail += fmt("%s %zu/%zu elected, %zu/%zu candidate counts in range; ", to_string(model).c_str(), total.success,
                  total.runs, total.candidates_in_range, total.runs);
  }
  const double secs = seconds_since(start);
  ElectionVerdicts v;
  v.end_to_end = {e2e && secs < 15 * 60, detail + fmt("(%.0fs)", secs)};
  bool prog = true;
  std::string pd;
  for (int i = 0; i < 2; ++i) {
    const RunStats& s = per_model[i];
    prog = prog && s.qualifying > 0 && s.progressed * 100 >= s.qualifying * 95;
    pd += fmt("%s %zu/%zu debates ", i ? "beep" : "nocd", s.progressed, s.qualifying);
  }
  v.progress = {prog, pd};
  return v;
}

// 9 -------------------------------------------------------------------------

double median(std::vector<std::uint64_t> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  return xs.size() % 2 ? double(xs[h]) : (double(xs[h - 1]) + double(xs[h])) / 2;
}

// Nonnegative least squares on relative error for two terms.
std::pair<double, double> fit_two(const std::vector<std::array<double, 2>>& x, const std::vector<double>& y) {
  auto loss = [&](double a, double b) {
    double s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double r = (a * x[i][0] + b * x[i][1]) / y[i] - 1;
      s += r * r;
    }
    return s;
  };
  double s00 = 0, s01 = 0, s11 = 0, t0 = 0, t1 = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double u = x[i][0] / y[i];
    const double w = x[i][1] / y[i];
    s00 += u * u, s01 += u * w, s11 += w * w, t0 += u, t1 += w;
  }
  std::vector<std::pair<double, double>> options = {{t0 / s00, 0.0}, {0.0, t1 / s11}};
  const double det = s00 * s11 - s01 * s01;
  if (det > 0) {
    const double a = (t0 * s11 - t1 * s01) / det;
    const double b = (t1 * s00 - t0 * s01) / det;
    if (a >= 0 && b >= 0) options.emplace_back(a, b);
  }
  return *std::min_element(options.begin(), options.end(),
                           [&](auto p, auto q) { return loss(p.first, p.second) < loss(q.first, q.second); });
}

Verdict scaling() {
  bool ok = true;
  std::string detail;
  for (Model model : {Model::NoCD, Model::Beep}) {
    for (const char* family : {"path", "grid"}) {
      std::vector<std::array<double, 2>> x;
      std::vector<double> y;
      for (std::size_t n : {64, 128, 256, 512}) {
        RunStats s;
        std::vector<std::uint64_t> rounds;
        run_family(model, family, n, 30, s, &rounds);
        const double D = generate_graph(family, n, RandomSource(0)).diameter();
        const double L = std::log2(double(n));
        const double ll = std::log2(L);
        const double lnd = std::max(1.0, std::log2(double(n) / D));
        const double m = std::min(ll, lnd);
        if (model == Model::NoCD) {
          x.push_back({D * lnd * m, L * L * L * m});
        } else {
          x.push_back({D * m, L * ll * m});
        }
        y.push_back(median(rounds));
      }
      const auto [a, b] = fit_two(x, y);
      double lo = INFINITY, hi = 0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double ratio = y[i] / (a * x[i][0] + b * x[i][1]);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      ok = ok && hi / lo < 2.0;
      detail += fmt("%s %s %.2f ", to_string(model).c_str(), family, hi / lo);
    }
  }
  return {ok, detail};
}

// 10 ------------------------------------------------------------------------

Verdict broadcast_reduction() {
  bool ok = true;
  std::string detail;
  for (const char* family : {"path", "grid"}) {
    const Graph g = generate_graph(family, 16, RandomSource(0));
    int good = 0;
    for (int t = 0; t < 100; ++t) {
      const std::uint64_t message = 0xC0FFEE + t;
      const BroadcastResult r = bc_from_le(g, t % 16, message, Model::NoCD, Constants{}, RandomSource(1000, t));
      bool exact = r.rounds <= 2 * r.le_budget;
      for (const auto& m : r.received) exact = exact && m == message;
      good += exact;
    }
    ok = ok && good >= 99;
    detail += fmt("%s16 %d/100 ", family, good);
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "criteria to run");
  CLI11_PARSE(app, argc, argv);
  auto wanted = [&](int c) { return only.empty() || std::find(only.begin(), only.end(), c) != only.end(); };

  std::vector<std::pair<int, Verdict>> results;
  auto record = [&](int c, Verdict v) {
    std::printf("[%s] criterion %d: %s\n", v.pass ? "PASS" : "FAIL", c, v.detail.c_str());
    std::fflush(stdout);
    results.emplace_back(c, std::move(v));
  };
  const std::vector<std::pair<int, std::function<Verdict()>>> simple = {
      {1, decay_phase_rates}, {2, fast_decay_structure}, {3, elimination_bound},
      {4, si_codes},          {5, approximate_counting}, {6, beep_waves}};
  for (const auto& [c, f] : simple) {
    if (wanted(c)) record(c, f());
  }
  if (wanted(7) || wanted(8)) {
    ElectionVerdicts v = elections();
    if (wanted(7)) record(7, v.end_to_end);
    if (wanted(8)) record(8, v.progress);
  }
  if (wanted(9)) record(9, scaling());
  if (wanted(10)) record(10, broadcast_reduction());

  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.second.pass; });
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
