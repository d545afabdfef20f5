#include "radiole/election.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radiole {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  if (!(in >> out) || !in.eof()) throw std::invalid_argument("bad value for " + key + ": " + value);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on") return true;
  if (value == "0" || value == "false" || value == "off") return false;
  throw std::invalid_argument("bad value for " + key + ": " + value);
}

}  // namespace

void Constants::set(const std::string& key, const std::string& value) {
  auto positive = [&](auto v) {
    if (v <= 0) throw std::invalid_argument(key + " must be positive");
    return v;
  };
  if (key == "alpha") alpha = positive(parse_number<unsigned>(key, value));
  else if (key == "long_phase_factor") long_phase_factor = positive(parse_number<unsigned>(key, value));
  else if (key == "candidate_factor") candidate_factor = positive(parse_number<double>(key, value));
  else if (key == "boundary_parts") boundary_parts = positive(parse_number<unsigned>(key, value));
  else if (key == "intercom_epochs") intercom_epochs = positive(parse_number<unsigned>(key, value));
  else if (key == "intercom_phases") intercom_phases = positive(parse_number<unsigned>(key, value));
  else if (key == "cluster_epochs_extra") cluster_epochs_extra = parse_number<unsigned>(key, value);
  else if (key == "refine_factor") refine_factor = positive(parse_number<double>(key, value));
  else if (key == "beep_code_const" || key == "c_b") beep_code_const = positive(parse_number<double>(key, value));
  else if (key == "beep_code_delta") beep_code_delta = positive(parse_number<double>(key, value));
  else if (key == "si_slack") si_slack = parse_number<unsigned>(key, value);
  else if (key == "fast_forward") fast_forward = parse_bool(key, value);
  else throw std::invalid_argument("unknown constant: " + key);
}

std::map<std::string, std::string> Constants::describe() const {
  auto num = [](double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  return {{"alpha", num(alpha)},
          {"long_phase_factor", num(long_phase_factor)},
          {"candidate_factor", num(candidate_factor)},
          {"boundary_parts", num(boundary_parts)},
          {"intercom_epochs", num(intercom_epochs)},
          {"intercom_phases", num(intercom_phases)},
          {"cluster_epochs_extra", num(cluster_epochs_extra)},
          {"refine_factor", num(refine_factor)},
          {"beep_code_const", num(beep_code_const)},
          {"beep_code_delta", num(beep_code_delta)},
          {"si_slack", num(si_slack)},
          {"fast_forward", fast_forward ? "true" : "false"}};
}

unsigned id_bits(std::size_t n) { return std::clamp(4 * ceil_log2(n), 8U, 62U); }

CandidateSet sample_candidates(std::size_t n, const RandomSource& rng, double factor) {
  CandidateSet c;
  if (n == 0) return c;
  const double p = std::min(1.0, factor * std::log2(static_cast<double>(n)) / static_cast<double>(n));
  const unsigned b = id_bits(n);
  const std::uint64_t mask = (std::uint64_t{1} << b) - 1;
  for (NodeId v = 0; v < n; ++v) {
    if (n == 1 || rng.bernoulli(p, purpose::kCandidate, v, 0)) {
      c.nodes.push_back(v);
      c.ids.push_back(rng.bits(purpose::kIdentifier, v, 0) & mask);
    }
  }
  return c;
}

unsigned debate_count(std::size_t n) {
  const double target = 20.0 * std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  const double count = std::log(target) / std::log(20.0 / 19.0);
  return std::max(1U, static_cast<unsigned>(std::ceil(count - 1e-9)));
}

std::uint64_t debate_radius(std::size_t n, std::uint64_t diameter, unsigned i) {
  const double logn = std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  const double r = std::floor(4.0 * static_cast<double>(n) * std::pow(1.05, i) / logn + 1e-9);
  if (r >= static_cast<double>(diameter)) return diameter;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(r));
}

std::vector<std::size_t> ElectionResult::survivors_per_debate() const {
  std::vector<std::size_t> out;
  out.reserve(debates.size());
  for (const auto& d : debates) out.push_back(d.survivors);
  return out;
}

void judge(ElectionResult& result, const std::vector<std::uint64_t>& survivor_ids) {
  result.success = false;
  result.leader.reset();
  if (survivor_ids.size() != 1) {
    result.reason = survivor_ids.empty() ? "no survivor" : std::to_string(survivor_ids.size()) + " survivors";
    return;
  }
  if (result.outputs.empty() || !result.outputs.front()) {
    result.reason = "missing output";
    return;
  }
  const std::uint64_t first = *result.outputs.front();
  for (const auto& o : result.outputs) {
    if (!o || *o != first) {
      result.reason = "outputs disagree";
      return;
    }
  }
  if (first != survivor_ids.front()) {
    result.reason = "output is not the survivor";
    return;
  }
  result.success = true;
  result.reason.clear();
  result.leader = first;
}

}  // namespace radiole
