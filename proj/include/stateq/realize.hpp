#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stateq/net.hpp"

namespace stateq {

// Attractor-style stubborn set restricted to the remainder support: seeded at
// the lowest-indexed remainder transition; a disabled member pulls in the
// remainder producers of its lowest insufficiently marked place (scapegoat),
// an enabled member pulls in the remainder transitions sharing an input
// place. If the closure ends up with no enabled member while some remainder
// transition is enabled, the closure is re-seeded at the lowest enabled one,
// so a node without expandable children has a fully disabled remainder.
std::vector<NodeIndex> stubborn_set(const PetriNet& net, const Marking& m_hat,
                                    const TransitionVector& remaining);

struct RealizeOptions {
  bool use_stubborn = true;      // optimization 1
  bool use_subtree_cut = true;   // optimization 2: (marking, remaining) store
  std::uint64_t node_budget = 1000000;
};

struct RealizeLeaf {
  std::vector<NodeIndex> fired;  // full sequence from the problem's initial marking
  TransitionVector remaining;
  Marking marking;
};

struct RealizeResult {
  std::optional<std::vector<NodeIndex>> full;  // complete realization, if found
  std::vector<RealizeLeaf> leaves;             // discovery order
  std::uint64_t nodes = 0;
  bool truncated = false;  // node budget hit; leaf list incomplete
};

// Depth-first search for firing sequences extending `prefix` with Parikh
// image bounded by prefix+remaining; expands only enabled stubborn-set
// members and skips (marking, remaining) pairs already visited in this tree.
// Returns the first complete realization immediately, otherwise all leaves.
RealizeResult realize(const PetriNet& net, const Marking& root_marking,
                      const std::vector<NodeIndex>& prefix,
                      const TransitionVector& remaining,
                      const RealizeOptions& options);

// Per remainder transition: the minimum over all markings along the fired
// prefix of the missing-token measure sum_s max(0, F(s,t) - m(s)). An entry
// of 0 means the transition was enabled at some visited marking.
using ProgressProfile = std::map<NodeIndex, Int>;

ProgressProfile progress_profile(const PetriNet& net, const Marking& m,
                                 std::span<const NodeIndex> sigma,
                                 const TransitionVector& r);

enum class PruneVerdict {
  keep,
  prune_nothing_new,  // optimization 3: the leaf fired nothing beyond the parent
  prune_no_progress,  // optimization 4: the invariant fired but helped nothing
};

// Applies optimizations 3 and 4 to a leaf derived from a partial solution
// (sigma, r) by increment constraints with added invariant portion
// y_invariant = y - x (componentwise nonnegative).
PruneVerdict check_prune(const PetriNet& net, const Marking& initial,
                         std::span<const NodeIndex> parent_sigma,
                         const TransitionVector& parent_r,
                         const TransitionVector& y_invariant,
                         const RealizeLeaf& leaf);

}  // namespace stateq
