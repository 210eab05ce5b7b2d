#include <doctest.h>

#include "fixtures.hpp"
#include "stateq/ilp.hpp"
#include "stateq/oracle.hpp"
#include "stateq/simplex.hpp"
#include "stateq/testgen.hpp"

using namespace stateq;

namespace {

LinRow row(std::map<NodeIndex, Int> coeffs, Rel rel, Int rhs) {
  return LinRow{std::move(coeffs), rel, std::move(rhs)};
}

}  // namespace

TEST_CASE("simplex solves a small relaxation exactly") {
  // min x0+x1 s.t. x0+x1 >= 3, x0-x1 = 1  ->  x = (2,1)
  std::vector<LinRow> rows{row({{0, 1}, {1, 1}}, Rel::ge, 3),
                           row({{0, 1}, {1, -1}}, Rel::eq, 1)};
  LpResult r = lp_minimize(rows, 2, {Rat(1), Rat(1)}, 10000);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.value == 3);
  CHECK(r.x == std::vector<Rat>{Rat(2), Rat(1)});
}

TEST_CASE("simplex detects infeasibility") {
  std::vector<LinRow> rows{row({{0, 1}}, Rel::ge, 2), row({{0, 1}}, Rel::le, 1)};
  CHECK(lp_minimize(rows, 1, {Rat(1)}, 10000).status == LpStatus::infeasible);
}

TEST_CASE("gcd feasibility check") {
  LinearSystem sys;
  sys.var_count = 2;
  sys.rows = {row({{0, 2}, {1, -2}}, Rel::eq, 1)};
  CHECK(gcd_feasibility_check(sys) == GcdVerdict::refuted);

  sys.rows = {row({{0, 2}, {1, -2}}, Rel::eq, 4)};
  CHECK(gcd_feasibility_check(sys) == GcdVerdict::unknown);

  auto nf = fixtures::net_a();
  auto p = fixtures::problem(nf, {{"s3", 1}}, {{"t", 1}});
  CHECK(gcd_feasibility_check(build_state_equation(p)) == GcdVerdict::unknown);

  // elimination exposes a refutation that no single row shows
  sys.rows = {row({{0, 1}, {1, 2}}, Rel::eq, 0), row({{0, 1}, {1, 4}}, Rel::eq, 1)};
  CHECK(gcd_feasibility_check(sys) == GcdVerdict::refuted);
}

TEST_CASE("omega-minimal solution of the token-lending net") {
  auto nf = fixtures::net_a();
  auto p = fixtures::problem(nf, {{"s3", 1}}, {{"t", 1}});
  SolveOutcome out = solve_omega_min(build_state_equation(p), {});
  REQUIRE(out.kind == SolveOutcome::Kind::solution);
  CHECK(out.solution == fixtures::tvec(nf, {{"t", 1}, {"t'", 1}}));
}

TEST_CASE("homogeneous system yields the zero vector") {
  auto nf = fixtures::net_a();
  auto p = fixtures::problem(nf, {{"s3", 1}});
  SolveOutcome out = solve_omega_min(build_state_equation(p), {});
  REQUIRE(out.kind == SolveOutcome::Kind::solution);
  CHECK(out.solution.empty());
}

TEST_CASE("parity-infeasible row is refuted") {
  LinearSystem sys;
  sys.var_count = 1;
  sys.rows = {row({{0, 2}}, Rel::eq, 1)};
  CHECK(solve_omega_min(sys, {}).kind == SolveOutcome::Kind::infeasible);
}

TEST_CASE("integer infeasibility proven by branching") {
  // 1 <= 2x <= 1 has no integer point and no equality row for the gcd check
  LinearSystem sys;
  sys.var_count = 1;
  sys.rows = {row({{0, 2}}, Rel::ge, 1), row({{0, 2}}, Rel::le, 1)};
  CHECK(solve_omega_min(sys, {}).kind == SolveOutcome::Kind::infeasible);
}

TEST_CASE("budget exhaustion is an outcome") {
  auto nf = fixtures::net_a();
  auto p = fixtures::problem(nf, {{"s3", 1}}, {{"t", 1}});
  SolveBudget tiny;
  tiny.max_nodes = 0;
  CHECK(solve_omega_min(build_state_equation(p), tiny).kind ==
        SolveOutcome::Kind::budget_exceeded);
}

TEST_CASE("omega minimality against brute-force enumeration") {
  TestRng rng(424242);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    LinearSystem sys = random_system(rng);
    SolveOutcome out = solve_omega_min(sys, {});
    std::vector<TransitionVector> all = enumerate_solutions(sys, 6);
    if (out.kind == SolveOutcome::Kind::solution) {
      CHECK(sys.satisfied_by(out.solution));
      if (!all.empty() && out.solution.sum() <= 6) {
        CHECK(out.solution == all.front());
        ++checked;
      }
      if (all.empty()) CHECK(out.solution.sum() > 6);
    } else if (out.kind == SolveOutcome::Kind::infeasible) {
      CHECK(all.empty());
    }
  }
  CHECK(checked > 20);  // the generator must exercise the interesting case
}

TEST_CASE("solutions only grow under extra rows") {
  TestRng rng(9090);
  for (int i = 0; i < 60; ++i) {
    LinearSystem sys = random_system(rng);
    SolveOutcome before = solve_omega_min(sys, {});
    LinearSystem bigger = sys;
    RandomSystemOptions opts;
    opts.min_vars = sys.var_count;
    opts.max_vars = sys.var_count;
    bigger.rows.push_back(random_system(rng, opts).rows.front());
    SolveOutcome after = solve_omega_min(bigger, {});
    if (before.kind == SolveOutcome::Kind::solution &&
        after.kind == SolveOutcome::Kind::solution)
      CHECK(omega_compare(before.solution, after.solution) !=
            std::strong_ordering::greater);
  }
}

TEST_CASE("identical inputs give identical outcomes") {
  TestRng rng(5150);
  for (int i = 0; i < 20; ++i) {
    LinearSystem sys = random_system(rng);
    SolveOutcome a = solve_omega_min(sys, {});
    SolveOutcome b = solve_omega_min(sys, {});
    CHECK(a.kind == b.kind);
    if (a.kind == SolveOutcome::Kind::solution) CHECK(a.solution == b.solution);
  }
}

TEST_CASE("backend seam exposes the reference solver") {
  const IlpBackend& backend = builtin_ilp_backend();
  LinearSystem sys;
  sys.var_count = 1;
  sys.rows = {row({{0, 1}}, Rel::ge, 2)};
  SolveOutcome out = backend.solve_omega_min(sys, {});
  REQUIRE(out.kind == SolveOutcome::Kind::solution);
  CHECK(out.solution.at(0) == 2);
}
