#include "stateq/net.hpp"

#include <algorithm>

namespace stateq {

namespace {

const Int k_zero{0};

const Int& lookup(const std::vector<std::pair<NodeIndex, Int>>& list,
                  NodeIndex key) {
  auto it = std::lower_bound(
      list.begin(), list.end(), key,
      [](const auto& e, NodeIndex k) { return e.first < k; });
  if (it != list.end() && it->first == key) return it->second;
  return k_zero;
}

void accumulate(std::vector<std::map<NodeIndex, Int>>& side, NodeIndex a,
                NodeIndex b, const Int& w) {
  side[a][b] += w;
}

std::vector<std::vector<std::pair<NodeIndex, Int>>> freeze(
    std::vector<std::map<NodeIndex, Int>>& side) {
  std::vector<std::vector<std::pair<NodeIndex, Int>>> out(side.size());
  for (std::size_t i = 0; i < side.size(); ++i)
    out[i].assign(side[i].begin(), side[i].end());
  return out;
}

}  // namespace

PetriNet::PetriNet(std::vector<std::string> places,
                   std::vector<std::string> transitions,
                   const std::vector<Arc>& arcs)
    : places_(std::move(places)), transitions_(std::move(transitions)) {
  if (places_.empty() || transitions_.empty())
    throw NetError("a net needs at least one place and one transition");
  for (NodeIndex i = 0; i < places_.size(); ++i)
    if (!place_index_.emplace(places_[i], i).second)
      throw NetError("duplicate place name: " + places_[i]);
  for (NodeIndex i = 0; i < transitions_.size(); ++i) {
    if (place_index_.count(transitions_[i]))
      throw NetError("node name used as both place and transition: " +
                     transitions_[i]);
    if (!transition_index_.emplace(transitions_[i], i).second)
      throw NetError("duplicate transition name: " + transitions_[i]);
  }

  std::vector<std::map<NodeIndex, Int>> in(transitions_.size()),
      out(transitions_.size()), prod(places_.size()), cons(places_.size());
  for (const Arc& a : arcs) {
    if (a.weight < 1) throw NetError("arc weight must be at least 1");
    if (a.place >= places_.size() || a.transition >= transitions_.size())
      throw NetError("arc endpoint out of range");
    if (a.place_to_transition) {
      accumulate(in, a.transition, a.place, a.weight);
      accumulate(cons, a.place, a.transition, a.weight);
    } else {
      accumulate(out, a.transition, a.place, a.weight);
      accumulate(prod, a.place, a.transition, a.weight);
    }
  }
  inputs_ = freeze(in);
  outputs_ = freeze(out);
  producers_ = freeze(prod);
  consumers_ = freeze(cons);
}

std::optional<NodeIndex> PetriNet::find_place(std::string_view name) const {
  auto it = place_index_.find(std::string(name));
  if (it == place_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeIndex> PetriNet::find_transition(std::string_view name) const {
  auto it = transition_index_.find(std::string(name));
  if (it == transition_index_.end()) return std::nullopt;
  return it->second;
}

const Int& PetriNet::consumes(NodeIndex s, NodeIndex t) const {
  return lookup(inputs_.at(t), s);
}

const Int& PetriNet::produces(NodeIndex t, NodeIndex s) const {
  return lookup(outputs_.at(t), s);
}

IncidenceMatrix::IncidenceMatrix(const PetriNet& net)
    : rows_(net.place_count()), cols_(net.transition_count()) {
  columns_.resize(cols_);
  for (NodeIndex t = 0; t < cols_; ++t) {
    std::map<NodeIndex, Int> col;
    for (const auto& [s, w] : net.outputs(t)) col[s] += w;
    for (const auto& [s, w] : net.inputs(t)) col[s] -= w;
    for (auto it = col.begin(); it != col.end();) {
      if (it->second == 0)
        it = col.erase(it);
      else
        ++it;
    }
    columns_[t].assign(col.begin(), col.end());
  }
  if (std::size_t(rows_) * cols_ < 10000) {
    dense_.assign(std::size_t(rows_) * cols_, Int(0));
    for (NodeIndex t = 0; t < cols_; ++t)
      for (const auto& [s, d] : columns_[t])
        dense_[std::size_t(s) * cols_ + t] = d;
  }
}

const Int& IncidenceMatrix::entry(NodeIndex s, NodeIndex t) const {
  if (s >= rows_ || t >= cols_) throw NetError("incidence index out of range");
  if (!dense_.empty()) return dense_[std::size_t(s) * cols_ + t];
  return lookup(columns_[t], s);
}

bool enabled(const PetriNet& net, const Marking& m, NodeIndex t) {
  if (t >= net.transition_count()) throw NetError("unknown transition index");
  for (const auto& [s, w] : net.inputs(t))
    if (m.at(s) < w) return false;
  return true;
}

Marking fire(const PetriNet& net, const Marking& m, NodeIndex t) {
  if (!enabled(net, m, t))
    throw NetError("transition disabled: " + net.transition_name(t));
  Marking out = m;
  for (const auto& [s, w] : net.inputs(t)) out.add(s, -w);
  for (const auto& [s, w] : net.outputs(t)) out.add(s, w);
  return out;
}

FireOutcome fire_sequence(const PetriNet& net, const Marking& m,
                          std::span<const NodeIndex> sigma) {
  FireOutcome out;
  out.marking = m;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    NodeIndex t = sigma[i];
    if (!enabled(net, out.marking, t)) {
      out.failed_at = i + 1;
      out.failed_transition = t;
      return out;
    }
    out.marking = fire(net, out.marking, t);
  }
  return out;
}

TransitionVector parikh(std::span<const NodeIndex> sigma) {
  TransitionVector v;
  for (NodeIndex t : sigma) v.add(t, 1);
  return v;
}

IncidenceMatrix incidence(const PetriNet& net) { return IncidenceMatrix(net); }

}  // namespace stateq
