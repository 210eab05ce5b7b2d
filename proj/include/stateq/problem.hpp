#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stateq/net.hpp"

namespace stateq {

enum class Mode {
  reach,  // per-place equality against the final marking (default 0)
  cover,  // per-place >= against the listed final counts
};

// A net, an initial marking, a goal and optional side conditions. Immutable
// after construction and safe to share across workers.
struct ReachabilityProblem {
  std::shared_ptr<const PetriNet> net;
  Marking initial;
  Marking final_counts;  // reach: full target (absent place = 0); cover: lower bounds
  Mode mode = Mode::reach;
  std::vector<std::pair<NodeIndex, Int>> required;  // transition must fire >= k times

  bool goal_satisfied(const Marking& m) const {
    if (mode == Mode::reach) return m == final_counts;
    for (const auto& [s, c] : final_counts.entries())
      if (m.at(s) < c) return false;
    return true;
  }
};

struct WitnessCheck {
  enum class Error { none, disabled, final_mismatch, required_unmet };
  Error error = Error::none;
  std::size_t position = 0;    // 1-based, for `disabled`
  NodeIndex transition = 0;    // for `disabled` / `required_unmet`
  bool ok() const { return error == Error::none; }
  std::string describe(const PetriNet& net) const;
};

// Replays sigma from the initial marking and checks the final-marking mode and
// every required side constraint.
WitnessCheck validate_witness(const ReachabilityProblem& problem,
                              std::span<const NodeIndex> sigma);

}  // namespace stateq
