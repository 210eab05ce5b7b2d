#pragma once

#include <vector>

#include "stateq/linear.hpp"
#include "stateq/problem.hpp"

namespace stateq {

struct OracleBudget {
  std::uint64_t max_markings = 100000;  // distinct explored states
  Int max_enumeration_sum = 6;
};

struct OracleOutcome {
  enum class Verdict { reachable, unreachable, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  std::vector<NodeIndex> witness;  // shortest, for reachable
  std::uint64_t explored = 0;
};

// Ground-truth breadth-first search over the full firing relation. Required
// side constraints are tracked with saturating per-path counters capped at
// the required minimum. Unreachable only when the (capped-product) reachable
// set was exhausted within budget.
OracleOutcome bfs_reach(const ReachabilityProblem& problem,
                        const OracleBudget& budget);

// All nonnegative integral vectors with component sum <= sum_bound satisfying
// every row, in Omega order (duplicate-free by construction).
std::vector<TransitionVector> enumerate_solutions(const LinearSystem& sys,
                                                  const Int& sum_bound);

}  // namespace stateq
