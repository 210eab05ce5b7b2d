#include "stateq/linear.hpp"

#include <sstream>

namespace stateq {

LinearSystem build_state_equation(const ReachabilityProblem& problem) {
  const PetriNet& net = *problem.net;
  IncidenceMatrix inc(net);
  LinearSystem sys;
  sys.var_count = net.transition_count();
  sys.rows.reserve(net.place_count() + problem.required.size());
  for (NodeIndex s = 0; s < net.place_count(); ++s) {
    LinRow row;
    row.rel = problem.mode == Mode::reach ? Rel::eq : Rel::ge;
    row.rhs = problem.final_counts.at(s) - problem.initial.at(s);
    for (NodeIndex t = 0; t < net.transition_count(); ++t) {
      const Int& d = inc.entry(s, t);
      if (d != 0) row.coeffs[t] = d;
    }
    sys.rows.push_back(std::move(row));
  }
  for (const auto& [t, k] : problem.required) {
    LinRow row;
    row.rel = Rel::ge;
    row.rhs = k;
    row.coeffs[t] = 1;
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

std::strong_ordering omega_compare(const TransitionVector& x,
                                   const TransitionVector& y) {
  Int sx = x.sum(), sy = y.sum();
  if (sx != sy) return sx < sy ? std::strong_ordering::less
                               : std::strong_ordering::greater;
  auto ix = x.entries().begin(), ex = x.entries().end();
  auto iy = y.entries().begin(), ey = y.entries().end();
  while (ix != ex || iy != ey) {
    NodeIndex tx = ix == ex ? ~NodeIndex{0} : ix->first;
    NodeIndex ty = iy == ey ? ~NodeIndex{0} : iy->first;
    if (tx < ty) return std::strong_ordering::greater;  // x positive, y zero here
    if (ty < tx) return std::strong_ordering::less;
    if (ix->second != iy->second)
      return ix->second < iy->second ? std::strong_ordering::less
                                     : std::strong_ordering::greater;
    ++ix;
    ++iy;
  }
  return std::strong_ordering::equal;
}

std::string render_system(const LinearSystem& sys, const PetriNet& net) {
  std::ostringstream os;
  os << "min:";
  for (NodeIndex t = 0; t < sys.var_count; ++t)
    os << (t ? " + " : " ") << net.transition_name(t);
  os << ";\n";
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const LinRow& row = sys.rows[i];
    // the state-equation rows come first, one per place
    if (i < net.place_count())
      os << net.place_name(static_cast<NodeIndex>(i)) << ": ";
    else
      os << "c" << i - net.place_count() << ": ";
    bool first = true;
    for (const auto& [t, c] : row.coeffs) {
      if (c >= 0 && !first) os << " + ";
      if (c < 0) os << (first ? "-" : " - ");
      Int a = c < 0 ? Int(-c) : c;
      if (a != 1) os << a << " ";
      os << net.transition_name(t);
      first = false;
    }
    if (first) os << "0";
    os << (row.rel == Rel::eq ? " = " : row.rel == Rel::ge ? " >= " : " <= ")
       << row.rhs << ";\n";
  }
  return os.str();
}

}  // namespace stateq
