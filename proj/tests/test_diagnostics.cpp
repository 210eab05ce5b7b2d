#include <doctest.h>

#include "fixtures.hpp"
#include "stateq/diagnostics.hpp"

using namespace stateq;

namespace {

FailedConstraintRecord sample_record(const stateq::NetFile& nf, Int need,
                                     FailureReason reason) {
  FailedConstraintRecord rec;
  rec.places = {fixtures::place(nf, "c1"), fixtures::place(nf, "c2")};
  rec.inner_transitions = {fixtures::trans(nf, "k1"), fixtures::trans(nf, "k2")};
  rec.tokens_missing = std::move(need);
  rec.stuck_prefix = fixtures::seq(nf, {"d"});
  rec.reason = reason;
  rec.remainder_support = {fixtures::trans(nf, "k1"), fixtures::trans(nf, "k2"),
                           fixtures::trans(nf, "x2")};
  return rec;
}

}  // namespace

TEST_CASE("records coalesce on place set, reason and token count") {
  auto nf = fixtures::net_c();
  DiagnosticsCollector collector;
  collector.record(sample_record(nf, 1, FailureReason::infeasible_after_add));
  CHECK(collector.size() == 1);
  collector.record(sample_record(nf, 1, FailureReason::infeasible_after_add));
  CHECK(collector.size() == 1);
  CHECK(collector.records()[0].count == 2);
  collector.record(sample_record(nf, 2, FailureReason::infeasible_after_add));
  CHECK(collector.size() == 2);
  collector.record(sample_record(nf, 1, FailureReason::no_producer));
  CHECK(collector.size() == 3);
}

TEST_CASE("report splits blocked and affected regions") {
  auto nf = fixtures::net_c();
  auto p = fixtures::problem(nf, {{"o", 1}}, {{"x2", 1}});
  DiagnosticsCollector collector;
  collector.record(sample_record(nf, 1, FailureReason::infeasible_after_add));
  DiagnosticsReport report = build_report(p, collector);
  CHECK(fixtures::names(*nf.net, report.blocked_places, true) ==
        std::vector<std::string>{"c1", "c2"});
  CHECK(fixtures::names(*nf.net, report.blocked_transitions) ==
        std::vector<std::string>{"k1", "k2"});
  CHECK(fixtures::names(*nf.net, report.affected_transitions) ==
        std::vector<std::string>{"x2"});
  CHECK(report.summary.find("c1") != std::string::npos);

  std::string text = render_text(report, *nf.net);
  CHECK(text.find("summary: ") != std::string::npos);
  CHECK(text.find("blocked_places: c1 c2") != std::string::npos);
  CHECK(text.find("affected_transitions: x2") != std::string::npos);
  CHECK(text.find("reason=infeasible-after-add") != std::string::npos);
}

TEST_CASE("empty collector with infeasible state equation") {
  auto nf = fixtures::net_c();
  auto p = fixtures::problem(nf, {{"o", 2}});
  DiagnosticsCollector collector;
  collector.mark_state_equation_infeasible();
  DiagnosticsReport report = build_report(p, collector);
  CHECK(report.records.empty());
  CHECK(report.state_equation_infeasible);
  CHECK(report.summary.find("state equation infeasible") != std::string::npos);
}

TEST_CASE("graph export tags every node with a region") {
  auto nf = fixtures::net_c();
  auto p = fixtures::problem(nf, {{"o", 1}}, {{"x2", 1}});
  DiagnosticsCollector collector;
  collector.record(sample_record(nf, 1, FailureReason::infeasible_after_add));
  std::string graph = render_graph(build_report(p, collector), *nf.net);
  CHECK(graph.find("node c1 place region=blocked") != std::string::npos);
  CHECK(graph.find("node k1 transition region=blocked") != std::string::npos);
  CHECK(graph.find("node x2 transition region=affected") != std::string::npos);
  CHECK(graph.find("node i place region=none") != std::string::npos);
  CHECK(graph.find("edge i u 1") != std::string::npos);
  CHECK(graph.find("edge u c1 1") != std::string::npos);
}
