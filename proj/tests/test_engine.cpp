#include <doctest.h>

#include "fixtures.hpp"
#include "stateq/engine.hpp"
#include "stateq/oracle.hpp"
#include "stateq/output.hpp"
#include "stateq/testgen.hpp"

using namespace stateq;

TEST_CASE("token-lending net: witness found after one increment refinement") {
  auto nf = fixtures::net_a();
  auto p = fixtures::problem(nf, {{"s3", 1}}, {{"t", 1}});
  Outcome out = cegar_solve(p, {});
  REQUIRE(out.verdict == Outcome::Verdict::reachable);
  CHECK(out.witness.size() == 4);
  CHECK(parikh(out.witness) ==
        fixtures::tvec(nf, {{"t", 1}, {"t'", 1}, {"u", 1}, {"u'", 1}}));
  CHECK(validate_witness(p, out.witness).ok());
  CHECK(out.stats.ilp_calls >= 2);
  CHECK(out.stats.increment_refinements == 1);
}

TEST_CASE("interleaved invariants realize together") {
  auto nf = fixtures::net_b();
  auto p = fixtures::problem(nf, {{"s1", 1}, {"s4", 1}}, {{"t", 1}, {"u", 1}});
  Outcome out = cegar_solve(p, {});
  REQUIRE(out.verdict == Outcome::Verdict::reachable);
  CHECK(out.witness.size() == 4);
  CHECK(parikh(out.witness) ==
        fixtures::tvec(nf, {{"t", 1}, {"t'", 1}, {"u", 1}, {"u'", 1}}));
  CHECK(validate_witness(p, out.witness).ok());
}

TEST_CASE("business process: the only witness is d x1") {
  auto nf = fixtures::net_c();
  auto p = fixtures::problem(nf, {{"o", 1}});
  Outcome out = cegar_solve(p, {});
  REQUIRE(out.verdict == Outcome::Verdict::reachable);
  CHECK(fixtures::names(*nf.net, out.witness) ==
        std::vector<std::string>{"d", "x1"});
}

TEST_CASE("business process with x2 required is unreachable with diagnostics") {
  auto nf = fixtures::net_c();
  auto p = fixtures::problem(nf, {{"o", 1}}, {{"x2", 1}});
  Outcome out = cegar_solve(p, {});
  REQUIRE(out.verdict == Outcome::Verdict::unreachable);
  REQUIRE_FALSE(out.diagnostics.records.empty());
  auto blocked_p = fixtures::names(*nf.net, out.diagnostics.blocked_places, true);
  CHECK(blocked_p == std::vector<std::string>{"c1", "c2"});
  auto blocked_t = fixtures::names(*nf.net, out.diagnostics.blocked_transitions);
  CHECK(blocked_t == std::vector<std::string>{"k1", "k2"});
  auto affected = fixtures::names(*nf.net, out.diagnostics.affected_transitions);
  CHECK(affected == std::vector<std::string>{"x2"});
}

TEST_CASE("jump constraints steer past an unrealizable minimal solution") {
  // The sum-1 solution {a:1} needs a token on q that nothing can produce;
  // only the jump a < 1 reaches the incomparable fireable solution {b:1,c:1}.
  auto nf = parse_net(R"(
PLACE p, q, h, g;
MARKING p;
TRANSITION a CONSUME p, q; PRODUCE q, g;
TRANSITION b CONSUME p;    PRODUCE h;
TRANSITION c CONSUME h;    PRODUCE g;
)");
  auto prob = fixtures::problem(nf, {{"g", 1}});
  Outcome out = cegar_solve(prob, {});
  REQUIRE(out.verdict == Outcome::Verdict::reachable);
  CHECK(fixtures::names(*nf.net, out.witness) ==
        std::vector<std::string>{"b", "c"});
  CHECK(out.stats.jump_children >= 1);
  CHECK(validate_witness(prob, out.witness).ok());
}

TEST_CASE("nested jumps stay navigable") {
  // The minimal solution uses t2 twice but t2's input can never hold two
  // tokens; the realizable solution needs t2 excluded entirely, which takes a
  // second jump below the first jump's own minimal solution. An eager jump
  // transformation would lock that door.
  auto nf = parse_net(R"(
PLACE p0, p1, p2, p3, p4, p5;
MARKING p2, p5;
TRANSITION t0 CONSUME p2; PRODUCE p0:3, p4:2;
TRANSITION t1 CONSUME p0:3, p1:3, p3, p4; PRODUCE p0:2, p1, p5:3;
TRANSITION t2 CONSUME p5:2; PRODUCE p0:3, p4:2, p5:2;
TRANSITION t3 CONSUME p1:2, p3:2, p5; PRODUCE p4:2;
TRANSITION t4 CONSUME p2; PRODUCE p0:2, p2:3;
TRANSITION t5 CONSUME p0:3; PRODUCE p0:3, p2:3, p4:2;
)");
  auto prob = fixtures::problem(
      nf, {{"p0", 8}, {"p2", 7}, {"p4", 8}, {"p5", 1}}, {{"t5", 1}}, Mode::cover);
  Outcome out = cegar_solve(prob, {});
  REQUIRE(out.verdict == Outcome::Verdict::reachable);
  CHECK(validate_witness(prob, out.witness).ok());
  CHECK(parikh(out.witness).at(fixtures::trans(nf, "t2")) == 0);
}

TEST_CASE("a remainder no transition can feed yields a no-producer record") {
  auto nf = parse_net(R"(
PLACE p, q, g;
MARKING p;
TRANSITION a CONSUME p, q; PRODUCE q, g;
)");
  auto prob = fixtures::problem(nf, {{"g", 1}});
  Outcome out = cegar_solve(prob, {});
  REQUIRE(out.verdict == Outcome::Verdict::unreachable);
  REQUIRE(out.diagnostics.records.size() == 1);
  const FailedConstraintRecord& rec = out.diagnostics.records[0];
  CHECK(rec.reason == FailureReason::no_producer);
  CHECK(fixtures::names(*nf.net, rec.places, true) ==
        std::vector<std::string>{"q"});
  CHECK(fixtures::names(*nf.net, rec.dependent_transitions) ==
        std::vector<std::string>{"a"});
  CHECK(rec.tokens_missing == 1);
}

TEST_CASE("trivially reachable problem returns the empty witness") {
  auto nf = fixtures::net_a();
  auto p = fixtures::problem(nf, {{"s3", 1}});
  Outcome out = cegar_solve(p, {});
  REQUIRE(out.verdict == Outcome::Verdict::reachable);
  CHECK(out.witness.empty());
}

TEST_CASE("infeasible state equation is reported as such") {
  auto nf = fixtures::net_a();
  auto p = fixtures::problem(nf, {{"s3", 2}});  // token count cannot grow
  Outcome out = cegar_solve(p, {});
  REQUIRE(out.verdict == Outcome::Verdict::unreachable);
  CHECK(out.diagnostics.state_equation_infeasible);
  CHECK(out.diagnostics.records.empty());
}

TEST_CASE("cover mode accepts any larger marking") {
  auto nf = fixtures::net_a();
  auto p = fixtures::problem(nf, {{"s2", 1}}, {}, Mode::cover);
  Outcome out = cegar_solve(p, {});
  REQUIRE(out.verdict == Outcome::Verdict::reachable);
  CHECK(fixtures::names(*nf.net, out.witness) == std::vector<std::string>{"u"});
  CHECK(validate_witness(p, out.witness).ok());
}

TEST_CASE("step budget turns the verdict inconclusive") {
  auto nf = fixtures::net_c();
  auto p = fixtures::problem(nf, {{"o", 1}}, {{"x2", 1}});
  EngineConfig config;
  config.max_steps = 1;
  Outcome out = cegar_solve(p, config);
  CHECK(out.verdict == Outcome::Verdict::inconclusive);
  CHECK_FALSE(out.reason.empty());
}

TEST_CASE("token counts beyond machine words stay exact") {
  auto nf = parse_net(R"(
PLACE p, q;
MARKING p:2000000000000000000000000000001;
TRANSITION t CONSUME p:1000000000000000000000000000000; PRODUCE q;
)");
  ReachabilityProblem p;
  p.net = nf.net;
  p.initial = nf.initial;
  p.final_counts.add(fixtures::place(nf, "p"), 1);
  p.final_counts.add(fixtures::place(nf, "q"), 2);
  Outcome out = cegar_solve(p, {});
  REQUIRE(out.verdict == Outcome::Verdict::reachable);
  CHECK(fixtures::names(*nf.net, out.witness) ==
        std::vector<std::string>{"t", "t"});
  CHECK(validate_witness(p, out.witness).ok());

  // one token short of a third firing
  p.final_counts = Marking{};
  p.final_counts.add(fixtures::place(nf, "q"), 3);
  CHECK(cegar_solve(p, {}).verdict == Outcome::Verdict::unreachable);
}

TEST_CASE("queue and solver budgets poison the verdict, never falsify it") {
  auto nf = fixtures::net_c();
  auto p = fixtures::problem(nf, {{"o", 1}}, {{"x2", 1}});

  EngineConfig tiny_queue;
  tiny_queue.max_queue = 1;
  Outcome q = cegar_solve(p, tiny_queue);
  CHECK(q.verdict == Outcome::Verdict::inconclusive);
  CHECK(q.reason == "queue limit");

  EngineConfig tiny_ilp;
  tiny_ilp.ilp_budget.max_pivots = 1;
  Outcome s = cegar_solve(p, tiny_ilp);
  CHECK(s.verdict == Outcome::Verdict::inconclusive);
  CHECK(s.reason == "ilp budget");
}

TEST_CASE("deterministic runs produce identical outcomes and statistics") {
  auto nf = fixtures::net_a();
  auto p = fixtures::problem(nf, {{"s3", 1}}, {{"t", 1}});
  Outcome a = cegar_solve(p, {});
  Outcome b = cegar_solve(p, {});
  CHECK(structured_output(a, *nf.net, 0) == structured_output(b, *nf.net, 0));
}

TEST_CASE("multiple workers keep the verdict") {
  EngineConfig two;
  two.workers = 2;
  auto nf_a = fixtures::net_a();
  auto reach = fixtures::problem(nf_a, {{"s3", 1}}, {{"t", 1}});
  Outcome out = cegar_solve(reach, two);
  REQUIRE(out.verdict == Outcome::Verdict::reachable);
  CHECK(validate_witness(reach, out.witness).ok());

  auto nf_c = fixtures::net_c();
  auto unreach = fixtures::problem(nf_c, {{"o", 1}}, {{"x2", 1}});
  CHECK(cegar_solve(unreach, two).verdict == Outcome::Verdict::unreachable);
}

TEST_CASE("engine agrees with the breadth-first oracle on random nets") {
  TestRng rng(1234);
  EngineConfig config;
  config.max_steps = 3000;
  config.realize_node_budget = 200000;
  OracleBudget oracle_budget;
  oracle_budget.max_markings = 30000;
  int conclusive_pairs = 0;
  for (int i = 0; i < 60; ++i) {
    NetFile nf = random_net(rng);
    ReachabilityProblem p = random_problem(rng, nf, rng.chance_percent(50));
    Outcome engine = cegar_solve(p, config);
    OracleOutcome oracle = bfs_reach(p, oracle_budget);
    if (engine.verdict == Outcome::Verdict::reachable)
      CHECK(validate_witness(p, engine.witness).ok());
    if (engine.verdict != Outcome::Verdict::inconclusive &&
        oracle.verdict != OracleOutcome::Verdict::inconclusive) {
      ++conclusive_pairs;
      CHECK((engine.verdict == Outcome::Verdict::reachable) ==
            (oracle.verdict == OracleOutcome::Verdict::reachable));
    }
  }
  CHECK(conclusive_pairs >= 40);
}

TEST_CASE("engine agrees with the oracle in cover mode") {
  TestRng rng(321321);
  EngineConfig config;
  config.max_steps = 2000;
  OracleBudget oracle_budget;
  oracle_budget.max_markings = 20000;
  int pairs = 0;
  for (int i = 0; i < 40; ++i) {
    NetFile nf = random_net(rng);
    ReachabilityProblem p = random_problem(rng, nf, rng.chance_percent(50));
    p.mode = Mode::cover;
    Outcome engine = cegar_solve(p, config);
    OracleOutcome oracle = bfs_reach(p, oracle_budget);
    if (engine.verdict == Outcome::Verdict::reachable)
      CHECK(validate_witness(p, engine.witness).ok());
    if (engine.verdict != Outcome::Verdict::inconclusive &&
        oracle.verdict != OracleOutcome::Verdict::inconclusive) {
      ++pairs;
      CHECK((engine.verdict == Outcome::Verdict::reachable) ==
            (oracle.verdict == OracleOutcome::Verdict::reachable));
    }
  }
  CHECK(pairs >= 25);
}

TEST_CASE("engine agrees with the oracle under side constraints") {
  TestRng rng(646464);
  EngineConfig config;
  config.max_steps = 2000;
  OracleBudget oracle_budget;
  oracle_budget.max_markings = 20000;
  int pairs = 0;
  for (int i = 0; i < 40; ++i) {
    NetFile nf = random_net(rng);
    ReachabilityProblem p = random_problem(rng, nf, rng.chance_percent(60));
    NodeIndex t = static_cast<NodeIndex>(rng.below(nf.net->transition_count()));
    p.required.emplace_back(t, Int(rng.range(1, 2)));
    Outcome engine = cegar_solve(p, config);
    OracleOutcome oracle = bfs_reach(p, oracle_budget);
    if (engine.verdict == Outcome::Verdict::reachable)
      CHECK(validate_witness(p, engine.witness).ok());
    if (engine.verdict != Outcome::Verdict::inconclusive &&
        oracle.verdict != OracleOutcome::Verdict::inconclusive) {
      ++pairs;
      CHECK((engine.verdict == Outcome::Verdict::reachable) ==
            (oracle.verdict == OracleOutcome::Verdict::reachable));
    }
  }
  CHECK(pairs >= 20);
}

TEST_CASE("memoization never changes the verdict, only the effort") {
  TestRng rng(777);
  EngineConfig with_memo, without_memo;
  without_memo.use_memo = false;
  without_memo.max_steps = with_memo.max_steps = 2000;
  for (int i = 0; i < 25; ++i) {
    NetFile nf = random_net(rng);
    ReachabilityProblem p = random_problem(rng, nf, rng.chance_percent(50));
    Outcome a = cegar_solve(p, with_memo);
    Outcome b = cegar_solve(p, without_memo);
    if (a.verdict != Outcome::Verdict::inconclusive &&
        b.verdict != Outcome::Verdict::inconclusive)
      CHECK(a.verdict == b.verdict);
  }
}
