#include "stateq/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace stateq {

namespace {

using CounterVec = std::vector<Int>;
using State = std::pair<Marking, CounterVec>;

}  // namespace

OracleOutcome bfs_reach(const ReachabilityProblem& problem,
                        const OracleBudget& budget) {
  const PetriNet& net = *problem.net;
  OracleOutcome out;

  const auto& required = problem.required;
  auto goal = [&](const State& st) {
    if (!problem.goal_satisfied(st.first)) return false;
    for (std::size_t i = 0; i < required.size(); ++i)
      if (st.second[i] < required[i].second) return false;
    return true;
  };

  State start{problem.initial, CounterVec(required.size(), Int(0))};
  // parent map doubles as the visited set
  std::map<State, std::pair<State, NodeIndex>> parent;
  parent.emplace(start, std::make_pair(start, NodeIndex{0}));
  std::deque<const State*> frontier;

  auto reconstruct = [&](State st) {
    std::vector<NodeIndex> seq;
    while (!(st == start)) {
      auto& [prev, t] = parent.at(st);
      seq.push_back(t);
      st = prev;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  };

  if (goal(start)) {
    out.verdict = OracleOutcome::Verdict::reachable;
    out.explored = 1;
    return out;
  }
  frontier.push_back(&parent.begin()->first);
  while (!frontier.empty()) {
    const State cur = *frontier.front();
    frontier.pop_front();
    for (NodeIndex t = 0; t < net.transition_count(); ++t) {
      if (!enabled(net, cur.first, t)) continue;
      State next{fire(net, cur.first, t), cur.second};
      for (std::size_t i = 0; i < required.size(); ++i)
        if (required[i].first == t && next.second[i] < required[i].second)
          next.second[i] += 1;
      auto [it, inserted] = parent.emplace(next, std::make_pair(cur, t));
      if (!inserted) continue;
      if (goal(next)) {
        out.verdict = OracleOutcome::Verdict::reachable;
        out.witness = reconstruct(next);
        out.explored = parent.size();
        return out;
      }
      if (parent.size() > budget.max_markings) {
        out.verdict = OracleOutcome::Verdict::inconclusive;
        out.explored = parent.size();
        return out;
      }
      frontier.push_back(&it->first);
    }
  }
  out.verdict = OracleOutcome::Verdict::unreachable;
  out.explored = parent.size();
  return out;
}

namespace {

void enumerate_rec(const LinearSystem& sys, NodeIndex pos, const Int& left,
                   TransitionVector& current,
                   std::vector<TransitionVector>& out) {
  if (pos + 1 == sys.var_count) {
    current.set(pos, left);
    if (sys.satisfied_by(current)) out.push_back(current);
    current.set(pos, 0);
    return;
  }
  for (Int v = 0; v <= left; ++v) {
    current.set(pos, v);
    enumerate_rec(sys, pos + 1, left - v, current, out);
  }
  current.set(pos, 0);
}

}  // namespace

std::vector<TransitionVector> enumerate_solutions(const LinearSystem& sys,
                                                  const Int& sum_bound) {
  std::vector<TransitionVector> out;
  if (sys.var_count == 0) return out;
  TransitionVector current;
  for (Int total = 0; total <= sum_bound; ++total)
    enumerate_rec(sys, 0, total, current, out);
  return out;
}

}  // namespace stateq
