#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace stateq {

// Exact arithmetic everywhere: token counts, arc weights and solver state are
// arbitrary-precision. Floating point is not used in any solver path.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int int_lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  Int g = int_gcd(a, b);
  Int r = (a / g) * b;
  return r < 0 ? -r : r;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int rat_floor(const Rat& r) {
  return floor_div(boost::multiprecision::numerator(r),
                   boost::multiprecision::denominator(r));
}

inline bool is_integral(const Rat& r) {
  return boost::multiprecision::denominator(r) == 1;
}

}  // namespace stateq
