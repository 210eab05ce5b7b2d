#include "stateq/refine.hpp"

#include <algorithm>
#include <map>

namespace stateq {

namespace {

// Iterative Tarjan over a small adjacency-list graph.
std::vector<std::size_t> tarjan_scc(
    const std::vector<std::vector<std::size_t>>& adj, std::size_t& scc_count) {
  const std::size_t n = adj.size();
  const std::size_t undef = ~std::size_t{0};
  std::vector<std::size_t> index(n, undef), low(n, 0), scc(n, undef);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  scc_count = 0;

  struct Frame {
    std::size_t v;
    std::size_t child = 0;
  };
  for (std::size_t start = 0; start < n; ++start) {
    if (index[start] != undef) continue;
    std::vector<Frame> call;
    call.push_back({start});
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.child++];
        if (index[w] == undef) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          for (;;) {
            std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            scc[w] = scc_count;
            if (w == f.v) break;
          }
          ++scc_count;
        }
        std::size_t v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return scc;
}

}  // namespace

std::vector<SccTriple> build_dependency_graph(const PetriNet& net,
                                              const Marking& m_hat,
                                              const TransitionVector& r) {
  std::vector<SccTriple> out;
  std::vector<NodeIndex> t0 = r.support();
  if (t0.empty()) return out;

  // S0: places insufficiently marked for some remainder transition.
  std::map<NodeIndex, std::size_t> place_node;
  std::vector<NodeIndex> s0;
  for (NodeIndex t : t0) {
    bool blocked = false;
    for (const auto& [s, w] : net.inputs(t)) {
      if (m_hat.at(s) < w) {
        blocked = true;
        if (place_node.emplace(s, 0).second) s0.push_back(s);
      }
    }
    if (!blocked)
      throw NetError("remainder transition enabled: " + net.transition_name(t));
  }
  std::sort(s0.begin(), s0.end());
  for (std::size_t i = 0; i < s0.size(); ++i) place_node[s0[i]] = i;

  // Nodes: places of S0 first, then the remainder transitions.
  const std::size_t n_nodes = s0.size() + t0.size();
  std::map<NodeIndex, std::size_t> trans_node;
  for (std::size_t i = 0; i < t0.size(); ++i) trans_node[t0[i]] = s0.size() + i;

  std::vector<std::vector<std::size_t>> adj(n_nodes);
  for (NodeIndex t : t0) {
    std::size_t tn = trans_node[t];
    for (const auto& [s, w] : net.inputs(t))
      if (m_hat.at(s) < w) adj[place_node[s]].push_back(tn);  // s -> t: starved
    for (const auto& [s, w] : net.outputs(t)) {
      auto it = place_node.find(s);
      if (it == place_node.end()) continue;
      if (w > net.consumes(s, t)) adj[tn].push_back(it->second);  // t -> s: feeds
    }
  }

  std::size_t scc_count = 0;
  std::vector<std::size_t> scc = tarjan_scc(adj, scc_count);

  std::vector<bool> has_incoming(scc_count, false);
  for (std::size_t v = 0; v < n_nodes; ++v)
    for (std::size_t w : adj[v])
      if (scc[v] != scc[w]) has_incoming[scc[w]] = true;

  std::map<std::size_t, SccTriple> triples;  // keyed by scc id
  for (std::size_t i = 0; i < s0.size(); ++i)
    if (!has_incoming[scc[i]]) triples[scc[i]].places.push_back(s0[i]);
  for (std::size_t i = 0; i < t0.size(); ++i) {
    std::size_t v = s0.size() + i;
    if (!has_incoming[scc[v]]) triples[scc[v]].inner_transitions.push_back(t0[i]);
  }
  // Dependent transitions: outside the component, starved by one of its places.
  for (auto& [id, triple] : triples) {
    if (triple.places.empty()) continue;  // cannot happen; defensive skip below
    for (NodeIndex s : triple.places)
      for (std::size_t w : adj[place_node[s]]) {
        if (scc[w] == id) continue;
        NodeIndex t = t0[w - s0.size()];
        triple.dependent_transitions.push_back(t);
      }
    std::sort(triple.dependent_transitions.begin(),
              triple.dependent_transitions.end());
    triple.dependent_transitions.erase(
        std::unique(triple.dependent_transitions.begin(),
                    triple.dependent_transitions.end()),
        triple.dependent_transitions.end());
  }
  for (auto& [id, triple] : triples)
    if (!triple.places.empty()) out.push_back(std::move(triple));
  std::sort(out.begin(), out.end(), [](const SccTriple& a, const SccTriple& b) {
    return a.places.front() < b.places.front();
  });
  return out;
}

Int estimate_tokens(const SccTriple& triple, const PetriNet& net,
                    const Marking& m_hat, const TransitionVector& r) {
  Int n = 0;
  if (!triple.inner_transitions.empty()) {
    bool first = true;
    for (NodeIndex t : triple.inner_transitions) {
      Int missing = 0;
      for (NodeIndex s : triple.places) {
        Int gap = net.consumes(s, t) - m_hat.at(s);
        if (gap > 0) missing += gap;
      }
      if (first || missing < n) n = missing;
      first = false;
    }
  } else {
    // Single starved place; total the needs of the dependent transitions,
    // firing the groups with the highest give-back last-to-first.
    NodeIndex s = triple.places.front();
    std::map<Int, std::vector<NodeIndex>> groups;  // j = F(t,s) -> transitions
    for (NodeIndex t : triple.dependent_transitions)
      groups[net.produces(t, s)].push_back(t);
    Int c = 0;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
      const Int& j = it->first;
      c += j;
      for (NodeIndex t : it->second) c += r.at(t) * (net.consumes(s, t) - j);
      if (c > 0) n += c;
      c = -j;
    }
  }
  // The estimate must stay in [1, true need]; 1 is always sound.
  if (n < 1) n = 1;
  return n;
}

std::optional<Constraint> make_increment_constraint(
    const std::vector<NodeIndex>& places, const Int& tokens_needed,
    const TransitionVector& sigma_parikh, const TransitionVector& r,
    const PetriNet& net) {
  // Producers outside the remainder with positive net effect on the place set.
  std::map<NodeIndex, Int> net_effect;
  for (NodeIndex s : places) {
    for (const auto& [t, w] : net.producers_of(s)) net_effect[t] += w;
    for (const auto& [t, w] : net.consumers_of(s)) net_effect[t] -= w;
  }
  std::map<NodeIndex, Int> coeffs;
  for (const auto& [t, e] : net_effect)
    if (e > 0 && r.at(t) == 0) coeffs[t] = e;
  if (coeffs.empty()) return std::nullopt;
  Int rhs = tokens_needed;
  for (const auto& [t, e] : coeffs) rhs += e * sigma_parikh.at(t);
  return Constraint::increment(std::move(coeffs), std::move(rhs));
}

JumpFamily::JumpFamily(ConstraintFamily base,
                       std::vector<std::pair<NodeIndex, Int>> candidates)
    : base_(std::move(base)), candidates_(std::move(candidates)) {
  std::sort(candidates_.begin(), candidates_.end());
  if (candidates_.empty()) {
    exhausted_ = true;
  } else {
    combo_ = {0};
  }
}

bool JumpFamily::advance() {
  // next m-combination of {0..k-1} in lexicographic order
  const std::size_t k = candidates_.size();
  const std::size_t m = combo_.size();
  std::size_t i = m;
  while (i > 0 && combo_[i - 1] == k - m + (i - 1)) --i;
  if (i > 0) {
    ++combo_[i - 1];
    for (std::size_t j = i; j < m; ++j) combo_[j] = combo_[j - 1] + 1;
    return true;
  }
  ++cardinality_;
  if (cardinality_ > k) return false;
  combo_.resize(cardinality_);
  for (std::size_t j = 0; j < cardinality_; ++j) combo_[j] = j;
  return true;
}

std::optional<ConstraintFamily> JumpFamily::next() {
  if (exhausted_) return std::nullopt;
  ConstraintFamily family = base_;
  for (std::size_t idx : combo_) {
    const auto& [t, bound] = candidates_[idx];
    family.push_back(Constraint::jump(t, bound));
  }
  if (!advance()) exhausted_ = true;
  return canonical_family(std::move(family));
}

}  // namespace stateq
