#include "stateq/problem.hpp"

namespace stateq {

std::string WitnessCheck::describe(const PetriNet& net) const {
  switch (error) {
    case Error::none:
      return "ok";
    case Error::disabled:
      return "disabled at position " + std::to_string(position) + ": " +
             net.transition_name(transition);
    case Error::final_mismatch:
      return "sequence does not reach the final marking";
    case Error::required_unmet:
      return "required transition fired too few times: " +
             net.transition_name(transition);
  }
  return "ok";
}

WitnessCheck validate_witness(const ReachabilityProblem& problem,
                              std::span<const NodeIndex> sigma) {
  WitnessCheck out;
  FireOutcome fired = fire_sequence(*problem.net, problem.initial, sigma);
  if (!fired.ok()) {
    out.error = WitnessCheck::Error::disabled;
    out.position = *fired.failed_at;
    out.transition = fired.failed_transition;
    return out;
  }
  if (!problem.goal_satisfied(fired.marking)) {
    out.error = WitnessCheck::Error::final_mismatch;
    return out;
  }
  TransitionVector counts = parikh(sigma);
  for (const auto& [t, k] : problem.required) {
    if (counts.at(t) < k) {
      out.error = WitnessCheck::Error::required_unmet;
      out.transition = t;
      return out;
    }
  }
  return out;
}

}  // namespace stateq
