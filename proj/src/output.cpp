#include "stateq/output.hpp"

#include <sstream>

#include <json.hpp>

namespace stateq {

namespace {

using nlohmann::json;

json names(const std::vector<NodeIndex>& ids, const PetriNet& net, bool places) {
  json out = json::array();
  for (NodeIndex i : ids)
    out.push_back(places ? net.place_name(i) : net.transition_name(i));
  return out;
}

json stats_json(const EngineStats& s) {
  json j;
  j["ilp_calls"] = s.ilp_calls;
  j["cegar_steps"] = s.cegar_steps;
  j["increment_refinements"] = s.increment_refinements;
  j["jump_children"] = s.jump_children;
  j["partial_solutions"] = s.partial_solutions;
  j["realize_calls"] = s.realize_calls;
  j["search_nodes"] = s.search_nodes;
  j["pruned_leaves"] = s.pruned_leaves;
  j["memo_family_skips"] = s.memo_family_skips;
  j["memo_job_skips"] = s.memo_job_skips;
  j["branching_avg"] = s.branching_avg();
  j["branching_max"] = s.branching_max;
  return j;
}

json diagnostics_json(const DiagnosticsReport& report, const PetriNet& net) {
  json j;
  j["summary"] = report.summary;
  j["state_equation_infeasible"] = report.state_equation_infeasible;
  j["blocked_places"] = names(report.blocked_places, net, true);
  j["blocked_transitions"] = names(report.blocked_transitions, net, false);
  j["affected_transitions"] = names(report.affected_transitions, net, false);
  json records = json::array();
  for (const FailedConstraintRecord& rec : report.records) {
    json r;
    r["places"] = names(rec.places, net, true);
    r["transitions"] = names(rec.inner_transitions, net, false);
    r["dependent"] = names(rec.dependent_transitions, net, false);
    r["tokens_missing"] = rec.tokens_missing.str();
    r["after"] = names(rec.stuck_prefix, net, false);
    r["reason"] = std::string(to_string(rec.reason));
    r["count"] = rec.count;
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  return j;
}

std::string verdict_name(Outcome::Verdict v) {
  switch (v) {
    case Outcome::Verdict::reachable: return "reachable";
    case Outcome::Verdict::unreachable: return "unreachable";
    case Outcome::Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace

std::string structured_output(const Outcome& outcome, const PetriNet& net,
                              std::uint64_t seed) {
  json j;
  j["verdict"] = verdict_name(outcome.verdict);
  j["seed"] = seed;
  if (outcome.verdict == Outcome::Verdict::reachable)
    j["witness"] = names(outcome.witness, net, false);
  if (outcome.verdict != Outcome::Verdict::reachable)
    j["diagnostics"] = diagnostics_json(outcome.diagnostics, net);
  if (outcome.verdict == Outcome::Verdict::inconclusive)
    j["reason"] = outcome.reason;
  j["stats"] = stats_json(outcome.stats);
  return j.dump(2) + "\n";
}

std::string structured_output(const OracleOutcome& outcome, const PetriNet& net) {
  json j;
  switch (outcome.verdict) {
    case OracleOutcome::Verdict::reachable:
      j["verdict"] = "reachable";
      j["witness"] = names(outcome.witness, net, false);
      break;
    case OracleOutcome::Verdict::unreachable:
      j["verdict"] = "unreachable";
      break;
    case OracleOutcome::Verdict::inconclusive:
      j["verdict"] = "inconclusive";
      break;
  }
  j["stats"] = {{"explored", outcome.explored}};
  return j.dump(2) + "\n";
}

std::string stats_text(const EngineStats& s) {
  std::ostringstream os;
  os << "ilp_calls: " << s.ilp_calls << "\n"
     << "cegar_steps: " << s.cegar_steps << "\n"
     << "increment_refinements: " << s.increment_refinements << "\n"
     << "jump_children: " << s.jump_children << "\n"
     << "partial_solutions: " << s.partial_solutions << "\n"
     << "realize_calls: " << s.realize_calls << "\n"
     << "search_nodes: " << s.search_nodes << "\n"
     << "pruned_leaves: " << s.pruned_leaves << "\n"
     << "memo_family_skips: " << s.memo_family_skips << "\n"
     << "memo_job_skips: " << s.memo_job_skips << "\n"
     << "branching_avg: " << s.branching_avg() << "\n"
     << "branching_max: " << s.branching_max << "\n";
  return os.str();
}

}  // namespace stateq
