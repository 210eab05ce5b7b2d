#pragma once

#include <memory>

#include "stateq/linear.hpp"

namespace stateq {

enum class GcdVerdict { refuted, unknown };

// Integer Gaussian elimination over the equality rows; refutes when an
// eliminated row's coefficient gcd does not divide its right-hand side.
// A refutation proves the system has no integral solution.
GcdVerdict gcd_feasibility_check(const LinearSystem& sys);

// Returns the Omega-smallest nonnegative integral solution: phase 1 minimizes
// the component sum by branch-and-bound over an exact rational simplex,
// phase 2 fixes the sum and lexicographically minimizes each variable in
// declared order. Infeasible only when integer infeasibility is proven.
SolveOutcome solve_omega_min(const LinearSystem& sys, const SolveBudget& budget);

// Seam for substituting an external integer-programming solver. The built-in
// implementation is the reference; tests rely only on it.
class IlpBackend {
 public:
  virtual ~IlpBackend() = default;
  virtual SolveOutcome solve_omega_min(const LinearSystem& sys,
                                       const SolveBudget& budget) const = 0;
};

class BuiltinIlpBackend final : public IlpBackend {
 public:
  SolveOutcome solve_omega_min(const LinearSystem& sys,
                               const SolveBudget& budget) const override {
    return stateq::solve_omega_min(sys, budget);
  }
};

const IlpBackend& builtin_ilp_backend();

}  // namespace stateq
