#pragma once

#include <optional>
#include <vector>

#include "stateq/constraint.hpp"
#include "stateq/net.hpp"

namespace stateq {

// One source strongly connected component of the remainder dependency graph:
// the starved places, the mutually blocked remainder transitions inside the
// component, and the remainder transitions outside it that depend on it.
struct SccTriple {
  std::vector<NodeIndex> places;                 // S_i
  std::vector<NodeIndex> inner_transitions;      // T_i
  std::vector<NodeIndex> dependent_transitions;  // X_i
};

// Builds the bipartite dependency graph over the remainder support and the
// insufficiently marked places, computes its strongly connected components
// and returns one triple per source component. Every remainder transition
// must be disabled under m_hat (partial-solution maximality); an enabled one
// is a precondition violation.
std::vector<SccTriple> build_dependency_graph(const PetriNet& net,
                                              const Marking& m_hat,
                                              const TransitionVector& r);

// Estimates how many extra tokens the places of the triple need before any
// progress on the remainder is possible. Always returns at least 1.
Int estimate_tokens(const SccTriple& triple, const PetriNet& net,
                    const Marking& m_hat, const TransitionVector& r);

// Builds the increment constraint demanding n fresh tokens on the place set,
// over the transitions outside the remainder that net-produce on it. Returns
// nothing when no such producer exists (the partial solution is a dead end).
std::optional<Constraint> make_increment_constraint(
    const std::vector<NodeIndex>& places, const Int& tokens_needed,
    const TransitionVector& sigma_parikh, const TransitionVector& r,
    const PetriNet& net);

// Lazy enumeration of the nonempty jump-constraint subsets over the
// transitions where a new solution exceeds the old one, by ascending
// cardinality and then index order. Each yielded family is the base family
// plus the subset's jumps.
class JumpFamily {
 public:
  JumpFamily(ConstraintFamily base,
             std::vector<std::pair<NodeIndex, Int>> candidates);

  // Next constraint family, or nothing when exhausted.
  std::optional<ConstraintFamily> next();

  std::size_t candidate_count() const { return candidates_.size(); }

 private:
  ConstraintFamily base_;
  std::vector<std::pair<NodeIndex, Int>> candidates_;  // (t, y(t)), ascending t
  std::size_t cardinality_ = 1;
  std::vector<std::size_t> combo_;  // current index combination
  bool exhausted_ = false;
  bool advance();
};

}  // namespace stateq
