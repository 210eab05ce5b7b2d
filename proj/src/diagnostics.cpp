#include "stateq/diagnostics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace stateq {

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::no_producer: return "no-producer";
    case FailureReason::infeasible_after_add: return "infeasible-after-add";
    case FailureReason::pruned_no_progress: return "pruned-no-progress";
  }
  return "?";
}

void DiagnosticsCollector::record(FailedConstraintRecord rec) {
  for (FailedConstraintRecord& existing : records_) {
    if (existing.places == rec.places && existing.reason == rec.reason &&
        existing.tokens_missing == rec.tokens_missing) {
      existing.count += rec.count;
      std::vector<NodeIndex> merged = existing.remainder_support;
      merged.insert(merged.end(), rec.remainder_support.begin(),
                    rec.remainder_support.end());
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      existing.remainder_support = std::move(merged);
      return;
    }
  }
  records_.push_back(std::move(rec));
}

DiagnosticsReport build_report(const ReachabilityProblem& problem,
                               const DiagnosticsCollector& collector) {
  DiagnosticsReport report;
  report.records = collector.records();
  report.state_equation_infeasible = collector.state_equation_infeasible();

  std::set<NodeIndex> blocked_p, blocked_t, remainder;
  for (const FailedConstraintRecord& rec : report.records) {
    blocked_p.insert(rec.places.begin(), rec.places.end());
    blocked_t.insert(rec.inner_transitions.begin(), rec.inner_transitions.end());
    blocked_t.insert(rec.dependent_transitions.begin(),
                     rec.dependent_transitions.end());
    remainder.insert(rec.remainder_support.begin(), rec.remainder_support.end());
  }
  report.blocked_places.assign(blocked_p.begin(), blocked_p.end());
  report.blocked_transitions.assign(blocked_t.begin(), blocked_t.end());
  for (NodeIndex t : remainder)
    if (!blocked_t.count(t)) report.affected_transitions.push_back(t);

  const PetriNet& net = *problem.net;
  std::ostringstream os;
  if (report.state_equation_infeasible) {
    os << "state equation infeasible: no transition count vector reaches the "
          "final marking";
  } else if (report.records.empty()) {
    os << "no witness found; every candidate solution of the state equation "
          "was exhausted";
  } else {
    os << "no witness found; " << report.records.size()
       << " failed constraint(s): tokens were needed on {";
    for (std::size_t i = 0; i < report.blocked_places.size(); ++i)
      os << (i ? ", " : "") << net.place_name(report.blocked_places[i]);
    os << "} but could not be generated without violating the state equation";
  }
  report.summary = os.str();
  return report;
}

namespace {

void name_list(std::ostringstream& os, const std::vector<NodeIndex>& ids,
               const PetriNet& net, bool places, char sep = ' ') {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) os << sep;
    os << (places ? net.place_name(ids[i]) : net.transition_name(ids[i]));
  }
}

}  // namespace

std::string render_text(const DiagnosticsReport& report, const PetriNet& net) {
  std::ostringstream os;
  os << "summary: " << report.summary << "\n";
  os << "state_equation_infeasible: "
     << (report.state_equation_infeasible ? "true" : "false") << "\n";
  os << "blocked_places: ";
  name_list(os, report.blocked_places, net, true);
  os << "\nblocked_transitions: ";
  name_list(os, report.blocked_transitions, net, false);
  os << "\naffected_transitions: ";
  name_list(os, report.affected_transitions, net, false);
  os << "\n";
  for (const FailedConstraintRecord& rec : report.records) {
    os << "record: reason=" << to_string(rec.reason)
       << " need=" << rec.tokens_missing << " count=" << rec.count
       << " places=";
    name_list(os, rec.places, net, true, ',');
    os << " transitions=";
    name_list(os, rec.inner_transitions, net, false, ',');
    os << " dependent=";
    name_list(os, rec.dependent_transitions, net, false, ',');
    os << " after=";
    name_list(os, rec.stuck_prefix, net, false, ',');
    os << "\n";
  }
  return os.str();
}

std::string render_graph(const DiagnosticsReport& report, const PetriNet& net) {
  std::set<NodeIndex> blocked_p(report.blocked_places.begin(),
                                report.blocked_places.end());
  std::set<NodeIndex> blocked_t(report.blocked_transitions.begin(),
                                report.blocked_transitions.end());
  std::set<NodeIndex> affected_t(report.affected_transitions.begin(),
                                 report.affected_transitions.end());
  std::ostringstream os;
  for (NodeIndex s = 0; s < net.place_count(); ++s)
    os << "node " << net.place_name(s) << " place region="
       << (blocked_p.count(s) ? "blocked" : "none") << "\n";
  for (NodeIndex t = 0; t < net.transition_count(); ++t)
    os << "node " << net.transition_name(t) << " transition region="
       << (blocked_t.count(t)   ? "blocked"
           : affected_t.count(t) ? "affected"
                                 : "none")
       << "\n";
  for (NodeIndex t = 0; t < net.transition_count(); ++t) {
    for (const auto& [s, w] : net.inputs(t))
      os << "edge " << net.place_name(s) << " " << net.transition_name(t) << " "
         << w << "\n";
    for (const auto& [s, w] : net.outputs(t))
      os << "edge " << net.transition_name(t) << " " << net.place_name(s) << " "
         << w << "\n";
  }
  return os.str();
}

}  // namespace stateq
