#include "stateq/ilp.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <set>

#include "stateq/simplex.hpp"

namespace stateq {

namespace {

struct DenseRow {
  std::vector<Int> coeffs;
  Int rhs;
};

// Returns false when the row was refuted; true otherwise. All-zero rows with
// zero rhs become empty (dropped by the caller).
bool normalize(DenseRow& row) {
  Int g = 0;
  for (const Int& c : row.coeffs) g = int_gcd(g, c);
  if (g == 0) return row.rhs == 0;
  if (row.rhs % g != 0) return false;
  if (g > 1) {
    for (Int& c : row.coeffs) c /= g;
    row.rhs /= g;
  }
  return true;
}

bool all_zero(const DenseRow& row) {
  for (const Int& c : row.coeffs)
    if (c != 0) return false;
  return true;
}

}  // namespace

GcdVerdict gcd_feasibility_check(const LinearSystem& sys) {
  std::vector<DenseRow> rows;
  for (const LinRow& r : sys.rows) {
    if (r.rel != Rel::eq) continue;
    DenseRow d;
    d.coeffs.assign(sys.var_count, Int(0));
    for (const auto& [j, c] : r.coeffs) d.coeffs[j] = c;
    d.rhs = r.rhs;
    if (!normalize(d)) return GcdVerdict::refuted;
    if (!all_zero(d)) rows.push_back(std::move(d));
  }
  std::vector<bool> used(rows.size(), false);
  for (NodeIndex col = 0; col < sys.var_count; ++col) {
    // pivot: unused row with the smallest nonzero |coeff| in this column
    std::size_t pivot = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || rows[i].coeffs[col] == 0) continue;
      if (pivot == rows.size() ||
          abs(rows[i].coeffs[col]) < abs(rows[pivot].coeffs[col]))
        pivot = i;
    }
    if (pivot == rows.size()) continue;
    const Int a = rows[pivot].coeffs[col];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pivot || used[i] || rows[i].coeffs[col] == 0) continue;
      const Int b = rows[i].coeffs[col];
      for (NodeIndex j = 0; j < sys.var_count; ++j)
        rows[i].coeffs[j] = rows[i].coeffs[j] * a - rows[pivot].coeffs[j] * b;
      rows[i].rhs = rows[i].rhs * a - rows[pivot].rhs * b;
      if (!normalize(rows[i])) return GcdVerdict::refuted;
    }
    used[pivot] = true;
  }
  return GcdVerdict::unknown;
}

namespace {

struct IlpResult {
  enum class Status { optimal, infeasible, budget };
  Status status = Status::infeasible;
  Int value;
  std::vector<Int> x;
};

// Best-bound-first branch and bound minimizing `objective . x` over the
// integral points of the rows (x >= 0). Branches on the fractional variable
// with the largest fractional part, ties by variable index. `nodes` is shared
// across the phases of one solve. Branching bounds are kept per variable, so
// a node contributes at most one lower- and one upper-bound row per variable
// to its relaxation no matter how deep it sits.
IlpResult ilp_minimize(const std::vector<LinRow>& rows, NodeIndex var_count,
                       const std::vector<Int>& objective,
                       const SolveBudget& budget, std::uint64_t& nodes) {
  struct Node {
    Rat bound;
    std::uint64_t seq;
    std::vector<Rat> relax;           // LP solution at this node
    std::vector<Int> lower;           // tightened lower bounds (0 = none)
    std::vector<std::optional<Int>> upper;
    bool operator<(const Node& o) const {
      if (bound != o.bound) return bound > o.bound;  // min-heap by bound
      return seq > o.seq;
    }
  };

  std::vector<Rat> c(var_count);
  for (NodeIndex j = 0; j < var_count; ++j) c[j] = Rat(objective[j]);

  IlpResult out;
  std::uint64_t seq = 0;
  std::vector<Node> heap;
  bool budget_hit = false;
  auto push_node = [&](std::vector<Int> lower,
                       std::vector<std::optional<Int>> upper) {
    for (NodeIndex j = 0; j < var_count; ++j)
      if (upper[j] && *upper[j] < lower[j]) return;  // empty box
    if (++nodes > budget.max_nodes) {
      budget_hit = true;
      return;
    }
    std::vector<LinRow> all = rows;
    for (NodeIndex j = 0; j < var_count; ++j) {
      if (lower[j] > 0) {
        LinRow row;
        row.coeffs[j] = 1;
        row.rel = Rel::ge;
        row.rhs = lower[j];
        all.push_back(std::move(row));
      }
      if (upper[j]) {
        LinRow row;
        row.coeffs[j] = 1;
        row.rel = Rel::le;
        row.rhs = *upper[j];
        all.push_back(std::move(row));
      }
    }
    LpResult lp = lp_minimize(all, var_count, c, budget.max_pivots);
    if (lp.status == LpStatus::pivot_limit) {
      budget_hit = true;
      return;
    }
    if (lp.status == LpStatus::infeasible) return;  // discard
    if (lp.status == LpStatus::unbounded)
      throw std::logic_error("unbounded relaxation with nonnegative objective");
    Node n;
    n.bound = lp.value;
    n.seq = seq++;
    n.relax = std::move(lp.x);
    n.lower = std::move(lower);
    n.upper = std::move(upper);
    heap.push_back(std::move(n));
    std::push_heap(heap.begin(), heap.end());
  };

  push_node(std::vector<Int>(var_count, Int(0)),
            std::vector<std::optional<Int>>(var_count));
  if (budget_hit) {
    out.status = IlpResult::Status::budget;
    return out;
  }
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end());
    Node node = std::move(heap.back());
    heap.pop_back();

    // fractional variable with the largest fractional part
    NodeIndex branch_var = var_count;
    Rat best_frac(0);
    for (NodeIndex j = 0; j < var_count; ++j) {
      if (is_integral(node.relax[j])) continue;
      Rat frac = node.relax[j] - Rat(rat_floor(node.relax[j]));
      if (frac > best_frac) {
        best_frac = frac;
        branch_var = j;
      }
    }
    if (branch_var == var_count) {
      // Integral; best-bound order makes the first integral node optimal.
      out.status = IlpResult::Status::optimal;
      out.x.resize(var_count);
      out.value = 0;
      for (NodeIndex j = 0; j < var_count; ++j) {
        out.x[j] = boost::multiprecision::numerator(node.relax[j]);
        out.value += objective[j] * out.x[j];
      }
      return out;
    }
    Int floor_v = rat_floor(node.relax[branch_var]);
    {
      std::vector<std::optional<Int>> upper = node.upper;
      if (!upper[branch_var] || *upper[branch_var] > floor_v)
        upper[branch_var] = floor_v;
      push_node(node.lower, std::move(upper));
    }
    if (!budget_hit) {
      std::vector<Int> lower = node.lower;
      if (lower[branch_var] < floor_v + 1) lower[branch_var] = floor_v + 1;
      push_node(std::move(lower), node.upper);
    }
    if (budget_hit) {
      out.status = IlpResult::Status::budget;
      return out;
    }
  }
  out.status = IlpResult::Status::infeasible;
  return out;
}

}  // namespace

SolveOutcome solve_omega_min(const LinearSystem& sys, const SolveBudget& budget) {
  if (gcd_feasibility_check(sys) == GcdVerdict::refuted)
    return SolveOutcome::make_infeasible();

  std::uint64_t nodes = 0;
  std::vector<LinRow> rows = sys.rows;
  std::vector<Int> sum_objective(sys.var_count, Int(1));
  IlpResult phase1 = ilp_minimize(rows, sys.var_count, sum_objective, budget, nodes);
  if (phase1.status == IlpResult::Status::budget)
    return SolveOutcome::make_budget();
  if (phase1.status == IlpResult::Status::infeasible)
    return SolveOutcome::make_infeasible();

  // Fix the component sum, then lexicographically minimize each variable.
  LinRow sum_row;
  for (NodeIndex j = 0; j < sys.var_count; ++j) sum_row.coeffs[j] = 1;
  sum_row.rel = Rel::eq;
  sum_row.rhs = phase1.value;
  rows.push_back(std::move(sum_row));

  TransitionVector result;
  for (NodeIndex j = 0; j < sys.var_count; ++j) {
    std::vector<Int> unit(sys.var_count, Int(0));
    unit[j] = 1;
    IlpResult step = ilp_minimize(rows, sys.var_count, unit, budget, nodes);
    if (step.status == IlpResult::Status::budget)
      return SolveOutcome::make_budget();
    if (step.status == IlpResult::Status::infeasible)
      throw std::logic_error("lexicographic step lost feasibility");
    LinRow fix;
    fix.coeffs[j] = 1;
    fix.rel = Rel::eq;
    fix.rhs = step.value;
    rows.push_back(std::move(fix));
    result.set(j, step.value);
  }
  if (!sys.satisfied_by(result))
    throw std::logic_error("solver produced an invalid solution");
  return SolveOutcome::make_solution(std::move(result));
}

const IlpBackend& builtin_ilp_backend() {
  static const BuiltinIlpBackend backend;
  return backend;
}

}  // namespace stateq
