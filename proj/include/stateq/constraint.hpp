#pragma once

#include <map>
#include <vector>

#include "stateq/linear.hpp"

namespace stateq {

// A linear restriction added on top of the state equation: either a jump
// t < n (steers the solver to an incomparable minimal solution) or an
// increment sum(coeffs.t) >= n (forces extra token production).
struct Constraint {
  enum class Kind { jump, increment };
  Kind kind = Kind::increment;
  NodeIndex jump_transition = 0;
  Int jump_bound;                  // t < jump_bound, jump_bound >= 1
  std::map<NodeIndex, Int> coeffs; // increment left-hand side
  Int min_total;                   // increment right-hand side, >= 0

  static Constraint jump(NodeIndex t, Int bound);
  static Constraint increment(std::map<NodeIndex, Int> coeffs, Int min_total);

  bool is_jump() const { return kind == Kind::jump; }

  // Jump t < n is stored as t <= n-1 (lossless by integrality).
  LinRow to_row() const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
  bool operator<(const Constraint& o) const;
};

// Canonical ordered, duplicate-free constraint family.
using ConstraintFamily = std::vector<Constraint>;

ConstraintFamily canonical_family(ConstraintFamily family);
bool family_contains(const ConstraintFamily& family, const Constraint& c);
ConstraintFamily family_union(const ConstraintFamily& a,
                              const ConstraintFamily& b);
bool family_has_jumps(const ConstraintFamily& family);

// Appends every family constraint as a row of `rows`.
void append_rows(std::vector<LinRow>& rows, const ConstraintFamily& family);

// Keeps the increment constraints and replaces the jumps with per-transition
// lower bounds t >= z(t) for z(t) > 0, where z is the Omega-minimal solution
// of the state equation plus the family. Above z the transformed family
// admits exactly the solutions the increments admit, and nothing below z
// satisfies it, so growing a solution by increments no longer conflicts with
// stale jump cuts.
ConstraintFamily transform_jumps(const ConstraintFamily& family,
                                 const TransitionVector& z);

}  // namespace stateq
