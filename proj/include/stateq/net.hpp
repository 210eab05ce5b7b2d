#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stateq/numeric.hpp"

namespace stateq {

using NodeIndex = std::uint32_t;

struct NetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sparse nonnegative counter vector indexed by place or transition index.
// Absent index means zero; stored entries are always > 0.
template <class Tag>
class Counts {
 public:
  using Map = std::map<NodeIndex, Int>;

  Counts() = default;

  const Int& at(NodeIndex i) const {
    auto it = map_.find(i);
    return it == map_.end() ? zero_ : it->second;
  }

  void set(NodeIndex i, Int v) {
    if (v == 0) {
      map_.erase(i);
      return;
    }
    if (v < 0) throw NetError("negative count");
    map_[i] = std::move(v);
  }

  // Adds d (may be negative); the result must stay nonnegative.
  void add(NodeIndex i, const Int& d) {
    auto it = map_.find(i);
    Int v = (it == map_.end() ? Int(0) : it->second) + d;
    if (v < 0) throw NetError("count underflow");
    if (v == 0) {
      if (it != map_.end()) map_.erase(it);
    } else if (it == map_.end()) {
      map_.emplace(i, std::move(v));
    } else {
      it->second = std::move(v);
    }
  }

  bool empty() const { return map_.empty(); }

  Int sum() const {
    Int s = 0;
    for (const auto& [i, v] : map_) s += v;
    return s;
  }

  std::vector<NodeIndex> support() const {
    std::vector<NodeIndex> out;
    out.reserve(map_.size());
    for (const auto& [i, v] : map_) out.push_back(i);
    return out;
  }

  bool leq(const Counts& other) const {
    for (const auto& [i, v] : map_)
      if (v > other.at(i)) return false;
    return true;
  }

  Counts plus(const Counts& other) const {
    Counts out = *this;
    for (const auto& [i, v] : other.map_) out.add(i, v);
    return out;
  }

  // Componentwise subtraction; throws when any component would go negative.
  Counts minus(const Counts& other) const {
    Counts out = *this;
    for (const auto& [i, v] : other.map_) out.add(i, -v);
    return out;
  }

  bool operator==(const Counts& other) const { return map_ == other.map_; }
  bool operator<(const Counts& other) const { return map_ < other.map_; }

  const Map& entries() const { return map_; }

 private:
  static inline const Int zero_{0};
  Map map_;
};

struct PlaceTag {};
struct TransitionTag {};
using Marking = Counts<PlaceTag>;
using TransitionVector = Counts<TransitionTag>;

// One weighted arc of the net; exactly one of place->transition or
// transition->place.
struct Arc {
  bool place_to_transition;
  NodeIndex place;
  NodeIndex transition;
  Int weight;
};

// Immutable place/transition net. Place and transition declaration order is
// fixed at construction: it defines incidence row/column indices and all
// deterministic tie-breaking. Duplicate arcs for the same pair sum.
class PetriNet {
 public:
  PetriNet(std::vector<std::string> places, std::vector<std::string> transitions,
           const std::vector<Arc>& arcs);

  NodeIndex place_count() const { return static_cast<NodeIndex>(places_.size()); }
  NodeIndex transition_count() const {
    return static_cast<NodeIndex>(transitions_.size());
  }

  const std::string& place_name(NodeIndex s) const { return places_.at(s); }
  const std::string& transition_name(NodeIndex t) const {
    return transitions_.at(t);
  }

  std::optional<NodeIndex> find_place(std::string_view name) const;
  std::optional<NodeIndex> find_transition(std::string_view name) const;

  // F(s,t) and F(t,s).
  const Int& consumes(NodeIndex s, NodeIndex t) const;
  const Int& produces(NodeIndex t, NodeIndex s) const;

  // Per-transition arc lists, sorted by place index.
  std::span<const std::pair<NodeIndex, Int>> inputs(NodeIndex t) const {
    return inputs_.at(t);
  }
  std::span<const std::pair<NodeIndex, Int>> outputs(NodeIndex t) const {
    return outputs_.at(t);
  }

  // Per-place arc lists, sorted by transition index.
  std::span<const std::pair<NodeIndex, Int>> producers_of(NodeIndex s) const {
    return producers_.at(s);
  }
  std::span<const std::pair<NodeIndex, Int>> consumers_of(NodeIndex s) const {
    return consumers_.at(s);
  }

 private:
  std::vector<std::string> places_;
  std::vector<std::string> transitions_;
  std::unordered_map<std::string, NodeIndex> place_index_;
  std::unordered_map<std::string, NodeIndex> transition_index_;
  std::vector<std::vector<std::pair<NodeIndex, Int>>> inputs_;    // by transition
  std::vector<std::vector<std::pair<NodeIndex, Int>>> outputs_;   // by transition
  std::vector<std::vector<std::pair<NodeIndex, Int>>> producers_; // by place
  std::vector<std::vector<std::pair<NodeIndex, Int>>> consumers_; // by place
};

// Incidence matrix entry(s,t) = F(t,s) - F(s,t). Dense storage below 10,000
// entries, per-column sparse above.
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(const PetriNet& net);

  NodeIndex rows() const { return rows_; }
  NodeIndex cols() const { return cols_; }

  const Int& entry(NodeIndex s, NodeIndex t) const;

  // Nonzero (place, delta) entries of a transition column, sorted by place.
  std::span<const std::pair<NodeIndex, Int>> column(NodeIndex t) const {
    return columns_.at(t);
  }

  bool dense() const { return !dense_.empty(); }

 private:
  NodeIndex rows_ = 0, cols_ = 0;
  std::vector<Int> dense_;  // row-major when in dense mode
  std::vector<std::vector<std::pair<NodeIndex, Int>>> columns_;
};

bool enabled(const PetriNet& net, const Marking& m, NodeIndex t);
Marking fire(const PetriNet& net, const Marking& m, NodeIndex t);

struct FireOutcome {
  Marking marking;                    // marking after the longest fired prefix
  std::optional<std::size_t> failed_at;  // 1-based position of first disabled step
  NodeIndex failed_transition = 0;
  bool ok() const { return !failed_at.has_value(); }
};

FireOutcome fire_sequence(const PetriNet& net, const Marking& m,
                          std::span<const NodeIndex> sigma);

TransitionVector parikh(std::span<const NodeIndex> sigma);

IncidenceMatrix incidence(const PetriNet& net);

}  // namespace stateq
