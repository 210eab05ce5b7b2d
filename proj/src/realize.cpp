#include "stateq/realize.hpp"

#include <algorithm>
#include <set>

namespace stateq {

namespace {

std::vector<NodeIndex> closure_from(const PetriNet& net, const Marking& m_hat,
                                    const TransitionVector& remaining,
                                    NodeIndex seed) {
  std::set<NodeIndex> in_set;
  std::vector<NodeIndex> work{seed};
  in_set.insert(seed);
  auto add = [&](NodeIndex t) {
    if (remaining.at(t) > 0 && in_set.insert(t).second) work.push_back(t);
  };
  while (!work.empty()) {
    NodeIndex t = work.back();
    work.pop_back();
    if (enabled(net, m_hat, t)) {
      // conflict rule: remainder transitions sharing an input place
      for (const auto& [s, w] : net.inputs(t))
        for (const auto& [t2, w2] : net.consumers_of(s)) add(t2);
    } else {
      // scapegoat: lowest insufficiently marked input place
      NodeIndex scapegoat = 0;
      bool found = false;
      for (const auto& [s, w] : net.inputs(t)) {
        if (m_hat.at(s) < w) {
          scapegoat = s;
          found = true;
          break;  // inputs are sorted by place index
        }
      }
      if (!found) continue;
      // producer rule: remainder transitions that net-produce on the scapegoat
      for (const auto& [t2, w2] : net.producers_of(scapegoat))
        if (w2 > net.consumes(scapegoat, t2)) add(t2);
    }
  }
  return {in_set.begin(), in_set.end()};
}

bool has_enabled(const PetriNet& net, const Marking& m_hat,
                 const std::vector<NodeIndex>& set) {
  return std::any_of(set.begin(), set.end(),
                     [&](NodeIndex t) { return enabled(net, m_hat, t); });
}

}  // namespace

std::vector<NodeIndex> stubborn_set(const PetriNet& net, const Marking& m_hat,
                                    const TransitionVector& remaining) {
  std::vector<NodeIndex> support = remaining.support();
  if (support.empty()) return {};
  std::vector<NodeIndex> closure =
      closure_from(net, m_hat, remaining, support.front());
  if (!has_enabled(net, m_hat, closure)) {
    for (NodeIndex t : support) {
      if (enabled(net, m_hat, t)) {
        closure = closure_from(net, m_hat, remaining, t);
        break;
      }
    }
  }
  return closure;
}

RealizeResult realize(const PetriNet& net, const Marking& root_marking,
                      const std::vector<NodeIndex>& prefix,
                      const TransitionVector& remaining,
                      const RealizeOptions& options) {
  RealizeResult result;
  std::vector<NodeIndex> path = prefix;

  if (remaining.empty()) {
    result.full = path;
    result.nodes = 1;
    return result;
  }

  struct Frame {
    Marking marking;
    TransitionVector remaining;
    std::vector<NodeIndex> expand;  // enabled candidates, ascending
    std::size_t next = 0;
  };

  std::set<std::pair<Marking, TransitionVector>> visited;
  auto candidates = [&](const Marking& m, const TransitionVector& rem) {
    std::vector<NodeIndex> out;
    if (options.use_stubborn) {
      for (NodeIndex t : stubborn_set(net, m, rem))
        if (enabled(net, m, t)) out.push_back(t);
    } else {
      for (NodeIndex t : rem.support())
        if (enabled(net, m, t)) out.push_back(t);
    }
    return out;
  };

  std::vector<Frame> stack;
  auto push_node = [&](Marking m, TransitionVector rem) -> bool {
    // returns false when the node is skipped (already visited or budget)
    if (++result.nodes > options.node_budget) {
      result.truncated = true;
      return false;
    }
    if (options.use_subtree_cut && !visited.emplace(m, rem).second) return false;
    Frame f;
    f.expand = candidates(m, rem);
    f.marking = std::move(m);
    f.remaining = std::move(rem);
    stack.push_back(std::move(f));
    return true;
  };

  push_node(root_marking, remaining);
  if (stack.empty()) return result;  // root duplicate cannot happen; budget 1

  while (!stack.empty() && !result.truncated) {
    Frame& top = stack.back();
    if (top.next < top.expand.size()) {
      NodeIndex t = top.expand[top.next++];
      Marking m2 = fire(net, top.marking, t);
      TransitionVector rem2 = top.remaining;
      rem2.add(t, -1);
      if (rem2.empty()) {
        path.push_back(t);
        result.full = path;
        return result;
      }
      // push_node may reallocate the stack; `top` is not used afterwards
      if (push_node(std::move(m2), std::move(rem2))) path.push_back(t);
    } else {
      if (top.expand.empty()) {
        // no expandable child: a genuine leaf (remainder fully disabled)
        result.leaves.push_back({path, top.remaining, top.marking});
      }
      stack.pop_back();
      if (!stack.empty()) path.pop_back();
    }
  }
  return result;
}

ProgressProfile progress_profile(const PetriNet& net, const Marking& m,
                                 std::span<const NodeIndex> sigma,
                                 const TransitionVector& r) {
  ProgressProfile profile;
  std::vector<NodeIndex> support = r.support();
  auto measure = [&](const Marking& cur) {
    for (NodeIndex t : support) {
      Int missing = 0;
      for (const auto& [s, w] : net.inputs(t)) {
        Int gap = w - cur.at(s);
        if (gap > 0) missing += gap;
      }
      auto it = profile.find(t);
      if (it == profile.end())
        profile.emplace(t, missing);
      else if (missing < it->second)
        it->second = missing;
    }
  };
  Marking cur = m;
  measure(cur);
  for (NodeIndex t : sigma) {
    cur = fire(net, cur, t);
    measure(cur);
  }
  return profile;
}

PruneVerdict check_prune(const PetriNet& net, const Marking& initial,
                         std::span<const NodeIndex> parent_sigma,
                         const TransitionVector& parent_r,
                         const TransitionVector& y_invariant,
                         const RealizeLeaf& leaf) {
  if (leaf.fired.size() == parent_sigma.size())
    return PruneVerdict::prune_nothing_new;
  // Optimization 4 applies when exactly the added invariant fired (the
  // remainder is unchanged) without lowering any missing-token measure.
  if (leaf.remaining == parent_r) {
    std::span<const NodeIndex> tau(leaf.fired.data() + parent_sigma.size(),
                                   leaf.fired.size() - parent_sigma.size());
    if (parikh(tau) == y_invariant) {
      ProgressProfile before = progress_profile(net, initial, parent_sigma, parent_r);
      ProgressProfile after =
          progress_profile(net, initial, leaf.fired, leaf.remaining);
      for (const auto& [t, entry] : after)
        if (entry < before.at(t)) return PruneVerdict::keep;
      return PruneVerdict::prune_no_progress;
    }
  }
  return PruneVerdict::keep;
}

}  // namespace stateq
