#include "radiole/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "radiole/beep.hpp"
#include "radiole/channel.hpp"
#include "radiole/nocd.hpp"

namespace radiole {

namespace {

using Edges = std::vector<std::pair<NodeId, NodeId>>;

Edges path_edges(std::size_t n) {
  Edges e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return e;
}

std::size_t grid_rows(std::size_t n) {
  std::size_t rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (rows * rows > n) --rows;
  while (rows > 1 && n % rows != 0) --rows;
  return std::max<std::size_t>(rows, 1);
}

bool connected(std::size_t n, const Edges& edges) {
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t parts = n;
  for (auto [a, b] : edges) {
    const NodeId ra = find(a);
    const NodeId rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --parts;
    }
  }
  return parts == 1;
}

Graph random_connected(std::size_t n, const RandomSource& rng, double p) {
  if (n == 1) return Graph::from_edges(1, {});
  if (p <= 0.0) p = std::min(1.0, 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));
  if (p > 1.0) throw std::invalid_argument("random_connected: p must be in (0, 1]");
  for (std::uint64_t attempt = 0; attempt < 100000; ++attempt) {
    Stream s = rng.stream(purpose::kGraph, n, attempt);
    Edges e;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (s.uniform() < p) e.emplace_back(u, v);
      }
    }
    if (connected(n, e)) return Graph::from_edges(n, e);
  }
  throw std::runtime_error("random_connected: no connected sample, p too small");
}

}  // namespace

bool generator_is_random(const std::string& kind) { return kind == "random_connected"; }

Graph generate_graph(const std::string& kind, std::size_t n, const RandomSource& rng, double p) {
  if (n == 0) throw std::invalid_argument("generate_graph: n must be positive");
  Edges e;
  if (kind == "path") {
    e = path_edges(n);
  } else if (kind == "cycle") {
    e = path_edges(n);
    if (n >= 3) e.emplace_back(static_cast<NodeId>(n - 1), 0);
  } else if (kind == "star") {
    for (NodeId v = 1; v < n; ++v) e.emplace_back(0, v);
  } else if (kind == "complete") {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
    }
  } else if (kind == "grid") {
    const std::size_t rows = grid_rows(n);
    const std::size_t cols = n / rows;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const auto v = static_cast<NodeId>(r * cols + c);
        if (c + 1 < cols) e.emplace_back(v, v + 1);
        if (r + 1 < rows) e.emplace_back(v, static_cast<NodeId>(v + cols));
      }
    }
  } else if (kind == "random_connected") {
    return random_connected(n, rng, p);
  } else if (kind == "two_copies") {
    // n is the size of the base path; the middle node is shared.
    return two_copies(Graph::from_edges(n, path_edges(n)), static_cast<NodeId>((n - 1) / 2));
  } else {
    throw std::invalid_argument("unknown generator: " + kind);
  }
  return Graph::from_edges(n, e);
}

NodeId second_copy(std::size_t n, NodeId pivot, NodeId v) {
  if (v == pivot) return pivot;
  return static_cast<NodeId>(n + (v < pivot ? v : v - 1));
}

Graph two_copies(const Graph& graph, NodeId pivot) {
  const std::size_t n = graph.size();
  if (pivot >= n) throw std::invalid_argument("two_copies: pivot out of range");
  Edges e = graph.edges();
  const std::size_t m = e.size();
  for (std::size_t i = 0; i < m; ++i) {
    e.emplace_back(second_copy(n, pivot, e[i].first), second_copy(n, pivot, e[i].second));
  }
  return Graph::from_edges(2 * n - 1, e);
}

std::uint64_t election_budget(const Graph& graph, Model model, BeepVariant variant, const Constants& k) {
  const std::size_t n = graph.size();
  const std::uint64_t D = graph.diameter();
  std::uint64_t total = 0;
  for (unsigned i = 1; i <= debate_count(n); ++i) {
    const std::uint64_t r = debate_radius(n, D, i);
    total += model == Model::NoCD ? DebatePlan::make(n, D, r, k).debate_rounds() : beep_debate_rounds(n, r, variant, k);
  }
  total += model == Model::NoCD ? nocd_final_rounds(n, D, k) : D + wave_rounds(D, id_bits(n));
  return total;
}

bool outputs_agree(const std::vector<std::optional<std::uint64_t>>& outputs) {
  if (outputs.empty() || !outputs.front()) return false;
  return std::all_of(outputs.begin(), outputs.end(), [&](const auto& o) { return o == outputs.front(); });
}

ElectionResult run_election(const Graph& graph, Model model, BeepVariant variant, const Constants& constants,
                            const RandomSource& rng, std::uint64_t round_limit) {
  return model == Model::NoCD ? elect_leader_nocd(graph, constants, rng, round_limit)
                              : elect_leader_beep(graph, constants, rng, variant, round_limit);
}

Graph trial_graph(const ExperimentConfig& config, std::size_t trial) {
  if (!config.graph_file.empty()) return read_graph_file(config.graph_file);
  const RandomSource rng(config.seed, generator_is_random(config.generator) ? trial : 0);
  return generate_graph(config.generator, config.n, rng, config.p);
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config) {
  if (config.round_limit_mult <= 0) throw std::invalid_argument("round limit multiplier must be positive");
  std::vector<ResultRecord> out;
  std::optional<Graph> fixed;
  if (!config.graph_file.empty() || !generator_is_random(config.generator)) fixed = trial_graph(config, 0);
  for (std::size_t t = 0; t < config.trials; ++t) {
    const Graph graph = fixed ? *fixed : trial_graph(config, t);
    const RandomSource rng(config.seed, t);
    const auto limit = static_cast<std::uint64_t>(
        std::ceil(config.round_limit_mult *
                  static_cast<double>(election_budget(graph, config.model, config.variant, config.constants))));
    ElectionResult res = run_election(graph, config.model, config.variant, config.constants, rng, limit);
    ResultRecord r;
    r.trial = t;
    r.seed = config.seed;
    r.n = graph.size();
    r.D = graph.diameter();
    r.candidates = res.candidates;
    r.survivors_per_debate = res.survivors_per_debate();
    r.rounds = res.rounds;
    // Recomputed here from the outputs rather than trusted.
    r.success = res.success && outputs_agree(res.outputs);
    r.reason = r.success ? "" : (res.reason.empty() ? "outputs disagree" : res.reason);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(xs[i]);
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

std::string format_report(const std::vector<ResultRecord>& records, const std::string& format) {
  if (format == "csv") {
    std::ostringstream o;
    o << "trial,seed,n,D,candidates,debates,survivors_per_debate,rounds,success,reason\n";
    for (const auto& r : records) {
      o << r.trial << ',' << r.seed << ',' << r.n << ',' << r.D << ',' << r.candidates << ','
        << r.survivors_per_debate.size() << ',' << join(r.survivors_per_debate) << ',' << r.rounds << ','
        << (r.success ? 1 : 0) << ',' << csv_field(r.reason) << '\n';
    }
    return o.str();
  }
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
      arr.push_back({{"trial", r.trial},
                     {"seed", r.seed},
                     {"n", r.n},
                     {"D", r.D},
                     {"candidates", r.candidates},
                     {"debates", r.survivors_per_debate.size()},
                     {"survivors_per_debate", r.survivors_per_debate},
                     {"rounds", r.rounds},
                     {"success", r.success},
                     {"reason", r.reason}});
    }
    return arr.dump(2);
  }
  throw std::invalid_argument("unknown report format: " + format);
}

void emit_report(const std::vector<ResultRecord>& records, const std::string& format, const std::string& path) {
  const std::string text = format_report(records, format);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write report: " + path);
  f << text;
}

std::vector<ResultRecord> parse_json_report(const std::string& text) {
  const auto arr = nlohmann::json::parse(text);
  std::vector<ResultRecord> out;
  for (const auto& j : arr) {
    ResultRecord r;
    r.trial = j.at("trial").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.n = j.at("n").get<std::size_t>();
    r.D = j.at("D").get<std::uint64_t>();
    r.candidates = j.at("candidates").get<std::size_t>();
    r.survivors_per_debate = j.at("survivors_per_debate").get<std::vector<std::size_t>>();
    r.rounds = j.at("rounds").get<std::uint64_t>();
    r.success = j.at("success").get<bool>();
    r.reason = j.at("reason").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

bool BroadcastResult::all_informed() const {
  return std::all_of(received.begin(), received.end(), [](const auto& m) { return m.has_value(); });
}

namespace {

class Piggyback : public RoundObserver {
 public:
  explicit Piggyback(std::size_t n, NodeId source) : holds(n, 0) { holds[source] = 1; }
  void on_round(std::uint64_t, std::span<const NodeId>, std::span<const Delivery> deliveries) override {
    for (const Delivery& d : deliveries) {
      if (holds[d.sender]) holds[d.listener] = 1;
    }
  }
  std::vector<std::uint8_t> holds;
};

}  // namespace

BroadcastResult bc_from_le(const Graph& graph, NodeId source, std::uint64_t message, Model model,
                           const Constants& constants, const RandomSource& rng) {
  if (model != Model::NoCD) throw std::invalid_argument("bc_from_le: packets are needed to carry the message");
  const std::size_t n = graph.size();
  if (source >= n) throw std::invalid_argument("bc_from_le: source out of range");
  BroadcastResult out;
  out.received.assign(n, std::nullopt);
  out.received[source] = message;
  if (n == 1) {
    out.election_success = true;
    return out;
  }
  const Graph doubled = two_copies(graph, source);
  Piggyback watch(doubled.size(), source);
  const ElectionResult le = elect_leader_nocd(doubled, constants, rng, 0, &watch);
  out.election_success = le.success;
  out.rounds = 2 * le.rounds;
  out.le_budget = election_budget(doubled, Model::NoCD, BeepVariant::Fast, constants);
  for (NodeId v = 0; v < n; ++v) {
    if (watch.holds[v] || watch.holds[second_copy(n, source, v)]) out.received[v] = message;
  }
  return out;
}

}  // namespace radiole
