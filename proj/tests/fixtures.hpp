#pragma once

#include <string>
#include <vector>

#include "stateq/parse.hpp"

namespace fixtures {

// Two cycles sharing s2; the u/u' circle can lend a token so t t' becomes
// fireable as u t t' u'.
inline constexpr const char* kNetA = R"(
{ token-lending cycle pair }
PLACE s1, s2, s3;
MARKING s3;
TRANSITION t   CONSUME s2; PRODUCE s1;
TRANSITION t'  CONSUME s1; PRODUCE s2;
TRANSITION u   CONSUME s3; PRODUCE s2;
TRANSITION u'  CONSUME s2; PRODUCE s3;
)";

// Two invariants that are only realizable interleaved (t u t' u').
inline constexpr const char* kNetB = R"(
PLACE s1, s2, s3, s4;
MARKING s1, s4;
TRANSITION t   CONSUME s1;     PRODUCE s2;
TRANSITION t'  CONSUME s2, s3; PRODUCE s1, s3;
TRANSITION u   CONSUME s2, s4; PRODUCE s2, s3;
TRANSITION u'  CONSUME s3;     PRODUCE s4;
)";

// Condensed flawed business process: one token should flow from i to o with
// all other places finally empty; the c1-k1-c2-k2 cycle cannot be emptied
// without pushing two tokens through a2.
inline constexpr const char* kNetC = R"(
PLACE i, c1, c2, a1, a2, o;
MARKING i;
TRANSITION u   CONSUME i;      PRODUCE c1, a1;
TRANSITION d   CONSUME i;      PRODUCE a1;
TRANSITION k1  CONSUME c1;     PRODUCE c2, a2;
TRANSITION k2  CONSUME c2;     PRODUCE c1;
TRANSITION l   CONSUME c2;     PRODUCE a2;
TRANSITION x1  CONSUME a1;     PRODUCE o;
TRANSITION x2  CONSUME a1, a2; PRODUCE o;
)";

inline stateq::NetFile net_a() { return stateq::parse_net(kNetA); }
inline stateq::NetFile net_b() { return stateq::parse_net(kNetB); }
inline stateq::NetFile net_c() { return stateq::parse_net(kNetC); }

inline stateq::NodeIndex place(const stateq::NetFile& nf, const char* name) {
  return *nf.net->find_place(name);
}
inline stateq::NodeIndex trans(const stateq::NetFile& nf, const char* name) {
  return *nf.net->find_transition(name);
}

inline std::vector<stateq::NodeIndex> seq(const stateq::NetFile& nf,
                                          std::initializer_list<const char*> names) {
  std::vector<stateq::NodeIndex> out;
  for (const char* n : names) out.push_back(trans(nf, n));
  return out;
}

inline stateq::Marking marking(const stateq::NetFile& nf,
                               std::initializer_list<std::pair<const char*, int>> items) {
  stateq::Marking m;
  for (const auto& [name, count] : items) m.add(place(nf, name), count);
  return m;
}

inline stateq::TransitionVector tvec(
    const stateq::NetFile& nf,
    std::initializer_list<std::pair<const char*, int>> items) {
  stateq::TransitionVector v;
  for (const auto& [name, count] : items) v.add(trans(nf, name), count);
  return v;
}

inline stateq::ReachabilityProblem problem(
    const stateq::NetFile& nf,
    std::initializer_list<std::pair<const char*, int>> final_items,
    std::initializer_list<std::pair<const char*, int>> require_items = {},
    stateq::Mode mode = stateq::Mode::reach) {
  stateq::ReachabilityProblem p;
  p.net = nf.net;
  p.initial = nf.initial;
  p.mode = mode;
  for (const auto& [name, count] : final_items)
    p.final_counts.add(place(nf, name), count);
  for (const auto& [name, count] : require_items)
    p.required.emplace_back(trans(nf, name), count);
  return p;
}

inline std::vector<std::string> names(const stateq::PetriNet& net,
                                      const std::vector<stateq::NodeIndex>& ids,
                                      bool places = false) {
  std::vector<std::string> out;
  for (auto i : ids)
    out.push_back(places ? net.place_name(i) : net.transition_name(i));
  return out;
}

}  // namespace fixtures
