#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radiole/graph.hpp"
#include "radiole/random.hpp"

namespace radiole {

/// Tunable constants of both election protocols. Keys accepted by set()
/// match the member names.
struct Constants {
  unsigned alpha = 12;
  unsigned long_phase_factor = 24;
  /// Candidate probability is min(1, candidate_factor * log2(n) / n).
  double candidate_factor = 10.0;
  /// Step-2 parts of Fast-Cluster and refinement, in units of log n.
  unsigned boundary_parts = 6;
  /// Intercommunication epochs, in units of log^2 n.
  unsigned intercom_epochs = 8;
  unsigned intercom_phases = 3;
  /// Extra Fast-Cluster epochs on top of 1 + ceil(R delta / log^2 n).
  unsigned cluster_epochs_extra = 0;
  /// Refinement epochs are ceil(refine_factor * log^2 n / delta).
  double refine_factor = 1.0;
  /// Block-length constant of the approximate counting code in beep debates.
  double beep_code_const = 2.0;
  double beep_code_delta = 0.1;
  /// Extra SI strength for the full beep debate: k = ceil(log2 n) + si_slack.
  unsigned si_slack = 4;
  /// Skip simulating debates that have a single candidate; the round count
  /// still includes their budget.
  bool fast_forward = true;

  void set(const std::string& key, const std::string& value);
  std::map<std::string, std::string> describe() const;
};

/// Width of candidate IDs: ceil(4 log2 n) clamped to [8, 62].
unsigned id_bits(std::size_t n);

struct CandidateSet {
  std::vector<NodeId> nodes;
  std::vector<std::uint64_t> ids;  // parallel to nodes

  std::size_t size() const { return nodes.size(); }
};

/// Each node independently with probability min(1, c log2 n / n), fresh IDs.
CandidateSet sample_candidates(std::size_t n, const RandomSource& rng, double factor = 10.0);

/// ceil(log_{20/19}(20 log2 n)), at least 1.
unsigned debate_count(std::size_t n);

/// min{D, floor(4 n 1.05^i / log2 n)}, i starting at 1
std::uint64_t debate_radius(std::size_t n, std::uint64_t diameter, unsigned i);

enum class BeepVariant { Fast, Full };

struct DebateStats {
  std::size_t incoming = 0;
  std::size_t survivors = 0;
  /// Candidates that saw another cluster in this debate.
  std::size_t non_isolated = 0;
  std::uint64_t radius = 0;
  std::uint64_t rounds = 0;
  bool simulated = false;
};

struct ElectionResult {
  std::vector<std::optional<std::uint64_t>> outputs;
  std::size_t candidates = 0;
  std::vector<DebateStats> debates;
  std::uint64_t rounds = 0;
  bool success = false;
  std::string reason;
  std::optional<std::uint64_t> leader;

  std::vector<std::size_t> survivors_per_debate() const;
};

/// Fills success/reason from the outputs and the survivor count.
void judge(ElectionResult& result, const std::vector<std::uint64_t>& survivor_ids);

class RoundLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace radiole
