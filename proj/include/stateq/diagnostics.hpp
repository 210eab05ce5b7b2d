#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stateq/problem.hpp"

namespace stateq {

enum class FailureReason {
  no_producer,          // no transition outside the remainder can feed the places
  infeasible_after_add, // the increment constraints made the system infeasible
  pruned_no_progress,   // the forced invariant fired without helping (or not at all)
};

std::string_view to_string(FailureReason reason);

// One failed increment constraint: which starved places needed how many
// unobtainable tokens, which transitions were blocked by them, and the fired
// prefix after which the tokens were missing.
struct FailedConstraintRecord {
  std::vector<NodeIndex> places;                 // S_i (nonempty)
  std::vector<NodeIndex> inner_transitions;      // T_i
  std::vector<NodeIndex> dependent_transitions;  // X_i
  Int tokens_missing;                            // n >= 1
  std::vector<NodeIndex> stuck_prefix;           // sigma
  FailureReason reason = FailureReason::no_producer;
  std::uint64_t count = 1;                       // coalesced duplicates
  std::vector<NodeIndex> remainder_support;      // support of r at failure time
};

// Shared sink for failure records. Appends are coalesced on
// (places, reason, tokens_missing); the engine synchronizes access.
class DiagnosticsCollector {
 public:
  void record(FailedConstraintRecord rec);
  void mark_state_equation_infeasible() { state_equation_infeasible_ = true; }

  const std::vector<FailedConstraintRecord>& records() const { return records_; }
  bool state_equation_infeasible() const { return state_equation_infeasible_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<FailedConstraintRecord> records_;
  bool state_equation_infeasible_ = false;
};

struct DiagnosticsReport {
  std::vector<FailedConstraintRecord> records;
  std::vector<NodeIndex> blocked_places;        // places in any record
  std::vector<NodeIndex> blocked_transitions;   // transitions in any record
  std::vector<NodeIndex> affected_transitions;  // remainder support outside blocked
  bool state_equation_infeasible = false;
  std::string summary;
};

DiagnosticsReport build_report(const ReachabilityProblem& problem,
                               const DiagnosticsCollector& collector);

// Structured-text rendering with stable key names.
std::string render_text(const DiagnosticsReport& report, const PetriNet& net);

// Plain node/edge list with a region attribute per node, for graph viewers.
std::string render_graph(const DiagnosticsReport& report, const PetriNet& net);

}  // namespace stateq
