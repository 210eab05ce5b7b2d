#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "stateq/problem.hpp"

namespace stateq {

enum class Rel { eq, ge, le };

struct LinRow {
  std::map<NodeIndex, Int> coeffs;
  Rel rel = Rel::eq;
  Int rhs;

  bool satisfied_by(const TransitionVector& x) const {
    Int lhs = 0;
    for (const auto& [t, c] : coeffs) lhs += c * x.at(t);
    switch (rel) {
      case Rel::eq: return lhs == rhs;
      case Rel::ge: return lhs >= rhs;
      case Rel::le: return lhs <= rhs;
    }
    return false;
  }
};

// Linear rows over the net's transition variables. Every variable is
// implicitly >= 0 and integral; the objective is always: minimize sum of all
// variables. Strict bounds t < n are stored as t <= n-1.
struct LinearSystem {
  NodeIndex var_count = 0;
  std::vector<LinRow> rows;

  bool satisfied_by(const TransitionVector& x) const {
    for (const auto& row : rows)
      if (!row.satisfied_by(x)) return false;
    return true;
  }
};

// One row per place (equality in reach mode, >= in cover mode) plus one
// row t >= k per required pair.
LinearSystem build_state_equation(const ReachabilityProblem& problem);

// Total order on transition vectors: ascending component sum first, then
// lexicographic in declared transition order (smaller component first).
std::strong_ordering omega_compare(const TransitionVector& x,
                                   const TransitionVector& y);

// Debug rendering in LP-style text; not a stability contract.
std::string render_system(const LinearSystem& sys, const PetriNet& net);

struct SolveBudget {
  std::uint64_t max_nodes = 100000;    // branch-and-bound nodes per solve
  std::uint64_t max_pivots = 1000000;  // simplex pivots per relaxation
};

struct SolveOutcome {
  enum class Kind { solution, infeasible, budget_exceeded };
  Kind kind = Kind::infeasible;
  TransitionVector solution;  // valid when kind == solution

  static SolveOutcome make_solution(TransitionVector v) {
    return {Kind::solution, std::move(v)};
  }
  static SolveOutcome make_infeasible() { return {Kind::infeasible, {}}; }
  static SolveOutcome make_budget() { return {Kind::budget_exceeded, {}}; }
};

}  // namespace stateq
