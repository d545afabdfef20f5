#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radiole/election.hpp"
#include "radiole/graph.hpp"
#include "radiole/radio.hpp"
#include "radiole/random.hpp"

namespace radiole {

/// Generator families; random_connected redraws until connected.
Graph generate_graph(const std::string& kind, std::size_t n, const RandomSource& rng, double p = 0.0);
/// Two copies of `graph` with the copies of `pivot` identified. Node v of the
/// first copy keeps index v; the second copy of v != pivot becomes n + v',
/// with v' its rank among the non-pivot nodes.
Graph two_copies(const Graph& graph, NodeId pivot);
/// Index of the second copy of v in two_copies(graph, pivot).
NodeId second_copy(std::size_t n, NodeId pivot, NodeId v);
bool generator_is_random(const std::string& kind);

struct ExperimentConfig {
  Model model = Model::NoCD;
  std::string graph_file;
  std::string generator = "path";
  std::size_t n = 16;
  double p = 0.0;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  BeepVariant variant = BeepVariant::Fast;
  double round_limit_mult = 50.0;
  Constants constants;
  std::string out;
  std::string format = "csv";
};

struct ResultRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::uint64_t D = 0;
  std::size_t candidates = 0;
  std::vector<std::size_t> survivors_per_debate;
  std::uint64_t rounds = 0;
  bool success = false;
  std::string reason;

  bool operator==(const ResultRecord&) const = default;
};

/// Rounds an election on `graph` always takes with these constants.
std::uint64_t election_budget(const Graph& graph, Model model, BeepVariant variant, const Constants& constants);

/// True iff every node output the same value.
bool outputs_agree(const std::vector<std::optional<std::uint64_t>>& outputs);

ElectionResult run_election(const Graph& graph, Model model, BeepVariant variant, const Constants& constants,
                            const RandomSource& rng, std::uint64_t round_limit = 0);

/// Graph used by a trial: the file or a deterministic family once, random
/// families redrawn per trial.
Graph trial_graph(const ExperimentConfig& config, std::size_t trial);

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

std::string format_report(const std::vector<ResultRecord>& records, const std::string& format);
void emit_report(const std::vector<ResultRecord>& records, const std::string& format, const std::string& path);
std::vector<ResultRecord> parse_json_report(const std::string& text);

struct BroadcastResult {
  /// Per node of the original graph.
  std::vector<std::optional<std::uint64_t>> received;
  /// Rounds of the original network: two per simulated round.
  std::uint64_t rounds = 0;
  /// Leader-election budget of the doubled instance.
  std::uint64_t le_budget = 0;
  bool election_success = false;

  bool all_informed() const;
};

/// Broadcast of `message` from `source` by running NoCD leader election on the
/// doubled graph and piggy-backing the message on every packet.
BroadcastResult bc_from_le(const Graph& graph, NodeId source, std::uint64_t message, Model model,
                           const Constants& constants, const RandomSource& rng);

}  // namespace radiole
