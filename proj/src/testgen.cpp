#include "stateq/testgen.hpp"

#include <algorithm>

namespace stateq {

NetFile random_net(TestRng& rng, const RandomNetOptions& options) {
  const std::uint64_t n_places = rng.range(1, options.max_places);
  const std::uint64_t n_trans = rng.range(1, options.max_transitions);
  std::vector<std::string> places, transitions;
  for (std::uint64_t i = 0; i < n_places; ++i)
    places.push_back("p" + std::to_string(i));
  for (std::uint64_t i = 0; i < n_trans; ++i)
    transitions.push_back("t" + std::to_string(i));

  std::vector<Arc> arcs;
  if (!options.acyclic) {
    for (NodeIndex s = 0; s < n_places; ++s)
      for (NodeIndex t = 0; t < n_trans; ++t) {
        if (rng.chance_percent(options.density_percent))
          arcs.push_back({true, s, t, Int(rng.range(1, options.max_weight))});
        if (rng.chance_percent(options.density_percent))
          arcs.push_back({false, s, t, Int(rng.range(1, options.max_weight))});
      }
  } else {
    // Random interleaving of places and transitions; arcs point only forward,
    // so the flow relation's transitive closure is irreflexive. Every
    // transition gets at least one input from an earlier place, which keeps
    // the reachable set finite.
    std::vector<std::pair<bool, NodeIndex>> order;  // (is_place, index)
    for (NodeIndex s = 0; s < n_places; ++s) order.push_back({true, s});
    for (NodeIndex t = 0; t < n_trans; ++t) order.push_back({false, t});
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.below(i)]);
    // a place must come first so every transition has a possible input
    for (std::size_t i = 0; i < order.size(); ++i)
      if (order[i].first) {
        std::rotate(order.begin(), order.begin() + i, order.begin() + i + 1);
        break;
      }
    std::vector<NodeIndex> places_before;
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto [is_place, idx] = order[i];
      if (is_place) {
        places_before.push_back(idx);
        continue;
      }
      // guaranteed input
      NodeIndex forced = places_before[rng.below(places_before.size())];
      arcs.push_back({true, forced, idx, Int(rng.range(1, options.max_weight))});
      for (NodeIndex s : places_before)
        if (s != forced && rng.chance_percent(options.density_percent))
          arcs.push_back({true, s, idx, Int(rng.range(1, options.max_weight))});
      // outputs to later places
      for (std::size_t j = i + 1; j < order.size(); ++j)
        if (order[j].first && rng.chance_percent(options.density_percent))
          arcs.push_back(
              {false, order[j].second, idx, Int(rng.range(1, options.max_weight))});
    }
  }

  NetFile out;
  out.net = std::make_shared<PetriNet>(std::move(places), std::move(transitions),
                                       arcs);
  const std::uint64_t tokens = rng.below(options.max_tokens + 1);
  for (std::uint64_t i = 0; i < tokens; ++i)
    out.initial.add(static_cast<NodeIndex>(rng.below(n_places)), 1);
  return out;
}

ReachabilityProblem random_problem(TestRng& rng, const NetFile& netfile,
                                   bool from_fired_sequence) {
  ReachabilityProblem problem;
  problem.net = netfile.net;
  problem.initial = netfile.initial;
  problem.mode = Mode::reach;
  const PetriNet& net = *netfile.net;
  if (from_fired_sequence) {
    Marking m = netfile.initial;
    const std::uint64_t steps = rng.below(7);
    for (std::uint64_t i = 0; i < steps; ++i) {
      std::vector<NodeIndex> enabled_list;
      for (NodeIndex t = 0; t < net.transition_count(); ++t)
        if (enabled(net, m, t)) enabled_list.push_back(t);
      if (enabled_list.empty()) break;
      m = fire(net, m, enabled_list[rng.below(enabled_list.size())]);
    }
    problem.final_counts = m;
  } else {
    const std::uint64_t tokens = rng.below(4);
    for (std::uint64_t i = 0; i < tokens; ++i)
      problem.final_counts.add(
          static_cast<NodeIndex>(rng.below(net.place_count())), 1);
  }
  return problem;
}

LinearSystem random_system(TestRng& rng, const RandomSystemOptions& options) {
  LinearSystem sys;
  sys.var_count =
      static_cast<NodeIndex>(rng.range(options.min_vars, options.max_vars));
  const std::uint64_t rows = rng.range(1, options.max_rows);
  for (std::uint64_t i = 0; i < rows; ++i) {
    LinRow row;
    bool nonzero = false;
    for (NodeIndex j = 0; j < sys.var_count; ++j) {
      if (!rng.chance_percent(60)) continue;
      std::int64_t c = static_cast<std::int64_t>(rng.range(1, options.max_abs_coeff));
      if (rng.chance_percent(50)) c = -c;
      row.coeffs[j] = c;
      nonzero = true;
    }
    if (!nonzero) {
      NodeIndex j = static_cast<NodeIndex>(rng.below(sys.var_count));
      row.coeffs[j] = 1;
    }
    std::uint64_t pick = rng.below(4);
    row.rel = pick < 2 ? Rel::eq : pick == 2 ? Rel::ge : Rel::le;
    std::int64_t rhs = static_cast<std::int64_t>(rng.below(options.max_abs_rhs + 1));
    if (rng.chance_percent(40)) rhs = -rhs;
    row.rhs = rhs;
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

}  // namespace stateq
