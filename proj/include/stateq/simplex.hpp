#pragma once

#include <vector>

#include "stateq/linear.hpp"

namespace stateq {

enum class LpStatus { optimal, infeasible, unbounded, pivot_limit };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rat value;            // objective at optimum
  std::vector<Rat> x;   // structural variable values
  std::uint64_t pivots = 0;
};

// Exact rational two-phase primal simplex with Bland's rule over
// minimize c.x subject to the rows and x >= 0. Deterministic.
LpResult lp_minimize(const std::vector<LinRow>& rows, NodeIndex var_count,
                     const std::vector<Rat>& objective,
                     std::uint64_t max_pivots);

}  // namespace stateq
