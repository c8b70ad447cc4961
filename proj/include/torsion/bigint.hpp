// Arbitrary-precision integer type used throughout.
//
// Normal-form and lattice computations produce coefficient blowup that
// overflows any fixed-width type on innocuous inputs, so every integer that
// participates in matrix arithmetic is an Int.

#ifndef TORSION_BIGINT_HPP
#define TORSION_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace torsion {

using Int = boost::multiprecision::cpp_int;

using Vec = std::vector<Int>;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Floor division and the matching nonnegative remainder.
inline Int fdiv(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int fmod_int(const Int& a, const Int& b) { return a - fdiv(a, b) * b; }

// Quotient rounded to nearest; ties toward zero.  Used by normal-form
// elimination so remainders shrink as fast as possible.
inline Int nearest_div(const Int& a, const Int& b) {
  Int q = fdiv(a, b);
  Int r = a - q * b;
  if (2 * r > abs_int(b)) ++q;
  return q;
}

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int pow_int(const Int& base, unsigned long exp) {
  Int r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

inline std::string to_string(const Int& x) { return x.str(); }

} // namespace torsion

#endif
