#pragma once

#include <string>
#include <vector>

#include "stateq/diagnostics.hpp"
#include "stateq/ilp.hpp"
#include "stateq/problem.hpp"

namespace stateq {

struct EngineConfig {
  SolveBudget ilp_budget;
  std::uint64_t realize_node_budget = 1000000;
  std::uint64_t max_queue = 1000000;
  std::uint64_t max_steps = 1000000;  // processed partial solutions
  unsigned workers = 1;
  bool use_stubborn = true;     // optimization 1
  bool use_subtree_cut = true;  // optimization 2
  bool use_prune = true;        // optimizations 3 and 4
  bool use_memo = true;         // optimization 5
  std::uint64_t seed = 0;       // echoed in structured output; solve is deterministic
  const IlpBackend* backend = nullptr;  // null: built-in solver
};

struct EngineStats {
  std::uint64_t ilp_calls = 0;
  std::uint64_t cegar_steps = 0;             // jobs processed
  std::uint64_t increment_refinements = 0;   // refined systems solved
  std::uint64_t jump_children = 0;
  std::uint64_t partial_solutions = 0;       // jobs enqueued (seed included)
  std::uint64_t realize_calls = 0;
  std::uint64_t search_nodes = 0;
  std::uint64_t pruned_leaves = 0;
  std::uint64_t memo_family_skips = 0;
  std::uint64_t memo_job_skips = 0;
  std::uint64_t branching_total = 0;  // subproblems spawned by processed jobs
  std::uint64_t branching_max = 0;

  // Average subproblems per processed job, fixed three decimals.
  std::string branching_avg() const;
};

struct Outcome {
  enum class Verdict { reachable, unreachable, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  std::vector<NodeIndex> witness;  // replays and meets mode + side constraints
  DiagnosticsReport diagnostics;   // unreachable and inconclusive
  std::string reason;              // inconclusive cause
  EngineStats stats;
};

// The refinement loop: dequeues the partial solution with the smallest
// solution size, transforms jumps, derives increment constraints from the
// stuck remainder, re-solves, registers lazy jump children and runs the
// realization search; surviving leaves become new partial solutions.
Outcome cegar_solve(const ReachabilityProblem& problem,
                    const EngineConfig& config);

}  // namespace stateq
