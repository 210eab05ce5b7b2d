#include "stateq/constraint.hpp"

#include <algorithm>
#include <stdexcept>

namespace stateq {

Constraint Constraint::jump(NodeIndex t, Int bound) {
  if (bound < 1) throw std::invalid_argument("jump bound must be at least 1");
  Constraint c;
  c.kind = Kind::jump;
  c.jump_transition = t;
  c.jump_bound = std::move(bound);
  return c;
}

Constraint Constraint::increment(std::map<NodeIndex, Int> coeffs, Int min_total) {
  if (min_total < 0)
    throw std::invalid_argument("increment bound must be nonnegative");
  Constraint c;
  c.kind = Kind::increment;
  c.coeffs = std::move(coeffs);
  c.min_total = std::move(min_total);
  return c;
}

LinRow Constraint::to_row() const {
  LinRow row;
  if (kind == Kind::jump) {
    row.coeffs[jump_transition] = 1;
    row.rel = Rel::le;
    row.rhs = jump_bound - 1;
  } else {
    row.coeffs = coeffs;
    row.rel = Rel::ge;
    row.rhs = min_total;
  }
  return row;
}

bool Constraint::operator<(const Constraint& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (kind == Kind::jump)
    return std::tie(jump_transition, jump_bound) <
           std::tie(o.jump_transition, o.jump_bound);
  return std::tie(coeffs, min_total) < std::tie(o.coeffs, o.min_total);
}

ConstraintFamily canonical_family(ConstraintFamily family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

bool family_contains(const ConstraintFamily& family, const Constraint& c) {
  return std::binary_search(family.begin(), family.end(), c);
}

ConstraintFamily family_union(const ConstraintFamily& a,
                              const ConstraintFamily& b) {
  ConstraintFamily out = a;
  out.insert(out.end(), b.begin(), b.end());
  return canonical_family(std::move(out));
}

bool family_has_jumps(const ConstraintFamily& family) {
  return std::any_of(family.begin(), family.end(),
                     [](const Constraint& c) { return c.is_jump(); });
}

void append_rows(std::vector<LinRow>& rows, const ConstraintFamily& family) {
  for (const Constraint& c : family) rows.push_back(c.to_row());
}

ConstraintFamily transform_jumps(const ConstraintFamily& family,
                                 const TransitionVector& z) {
  ConstraintFamily out;
  for (const Constraint& c : family)
    if (!c.is_jump()) out.push_back(c);
  for (const auto& [t, v] : z.entries())
    out.push_back(Constraint::increment({{t, Int(1)}}, v));
  return canonical_family(std::move(out));
}

}  // namespace stateq
