// Finite abelian groups in invariant-factor coordinates, with the duality
// pairing into Q/Z.
//
// A group is a list of moduli d1 | d2 | ... | dk (each >= 2); elements are
// integer tuples reduced mod the moduli.  The dual group is modeled on the
// same moduli via characters into (1/exp(G))Z/Z, so dualizing is the
// identity on invariants while the pairing and dual homomorphisms carry the
// actual content.  Pairing values are exact rationals in [0, 1).

#ifndef TORSION_FIN_AB_HPP
#define TORSION_FIN_AB_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/int_matrix.hpp"
#include "torsion/invariants.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

namespace torsion::ab {

using Rat = boost::multiprecision::cpp_rational;

class FinAbGroup {
public:
  FinAbGroup() = default; // trivial group

  explicit FinAbGroup(Vec moduli) : moduli_(std::move(moduli)) {
    FinAbInvariants(0, moduli_).validate();
  }

  static FinAbGroup from_invariants(const FinAbInvariants& inv) {
    if (inv.rank != 0)
      throw ValidationError("finite abelian group requires rank 0");
    return FinAbGroup(inv.torsion);
  }

  FinAbInvariants invariants() const { return FinAbInvariants(0, moduli_); }

  const Vec& moduli() const { return moduli_; }
  std::size_t k() const { return moduli_.size(); }

  Int order() const {
    Int o = 1;
    for (const auto& d : moduli_) o *= d;
    return o;
  }

  Int exponent() const { return moduli_.empty() ? Int(1) : moduli_.back(); }

  Vec zero() const { return Vec(k(), Int(0)); }

  Vec normalize(Vec a) const {
    check(a);
    for (std::size_t i = 0; i < k(); ++i) a[i] = fmod_int(a[i], moduli_[i]);
    return a;
  }

  Vec add(const Vec& a, const Vec& b) const {
    check(a);
    check(b);
    Vec r(k());
    for (std::size_t i = 0; i < k(); ++i)
      r[i] = fmod_int(a[i] + b[i], moduli_[i]);
    return r;
  }

  Vec neg(const Vec& a) const {
    check(a);
    Vec r(k());
    for (std::size_t i = 0; i < k(); ++i) r[i] = fmod_int(-a[i], moduli_[i]);
    return r;
  }

  Vec smul(const Int& s, const Vec& a) const {
    check(a);
    Vec r(k());
    for (std::size_t i = 0; i < k(); ++i) r[i] = fmod_int(s * a[i], moduli_[i]);
    return r;
  }

  bool is_zero(const Vec& a) const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }

  Int element_order(const Vec& a) const {
    check(a);
    Int o = 1;
    for (std::size_t i = 0; i < k(); ++i) {
      Int oi = moduli_[i] / gcd_int(a[i], moduli_[i]);
      o = o / gcd_int(o, oi) * oi;
    }
    return o;
  }

  // All elements in counter order (last coordinate fastest).
  std::vector<Vec> elements(const Int& limit = Int(1) << 20) const {
    if (order() > limit)
      throw BudgetExceeded("element enumeration too large",
                           "order " + to_string(order()));
    std::vector<Vec> out;
    Vec cur = zero();
    for (;;) {
      out.push_back(cur);
      std::size_t i = k();
      while (i > 0) {
        --i;
        if (++cur[i] < moduli_[i]) break;
        cur[i] = 0;
        if (i == 0) return out;
      }
      if (k() == 0) return out;
    }
  }

  bool operator==(const FinAbGroup& o) const { return moduli_ == o.moduli_; }

private:
  void check(const Vec& a) const {
    if (a.size() != k())
      throw ValidationError("element has wrong number of coordinates");
  }

  Vec moduli_;
};

// The dual has the same invariants; its element y pairs with x as below.
inline FinAbGroup dual_group(const FinAbGroup& g) { return g; }

// <x, y> = sum x_i y_i / d_i as an exact rational in [0, 1).
inline Rat pairing(const FinAbGroup& g, const Vec& x, const Vec& y) {
  Rat s = 0;
  for (std::size_t i = 0; i < g.k(); ++i)
    s += Rat(x[i] * y[i], g.moduli()[i]);
  Rat f = s - Rat(boost::multiprecision::numerator(s) /
                  boost::multiprecision::denominator(s));
  if (f < 0) f += 1;
  return f;
}

// Homomorphism f: src -> dst, coordinates f(x)_j = sum_i m(j,i) x_i mod e_j.
struct FinAbHom {
  FinAbGroup src, dst;
  IntMatrix m; // dst.k x src.k

  FinAbHom(FinAbGroup s, FinAbGroup d, IntMatrix mat)
      : src(std::move(s)), dst(std::move(d)), m(std::move(mat)) {
    if (m.rows() != dst.k() || m.cols() != src.k())
      throw ValidationError("homomorphism matrix has wrong shape");
    // Well-definedness: d_i * f(e_i) = 0 in dst.
    for (std::size_t i = 0; i < src.k(); ++i)
      for (std::size_t j = 0; j < dst.k(); ++j)
        if (fmod_int(m(j, i) * src.moduli()[i], dst.moduli()[j]) != 0)
          throw ValidationError("matrix does not define a homomorphism");
  }

  Vec apply(const Vec& x) const { return dst.normalize(m.apply(x)); }
};

// Dual homomorphism dual(f): dual(dst) -> dual(src), determined by
// <x, dual(f)(y)>_src = <f(x), y>_dst.  Entry (i, j) is d_i m(j, i) / e_j,
// integral exactly because f is well defined.
inline FinAbHom dual_hom(const FinAbHom& f) {
  IntMatrix g(f.src.k(), f.dst.k());
  for (std::size_t i = 0; i < f.src.k(); ++i)
    for (std::size_t j = 0; j < f.dst.k(); ++j) {
      Int num = f.src.moduli()[i] * f.m(j, i);
      g(i, j) = fmod_int(num / f.dst.moduli()[j], f.src.moduli()[i]);
    }
  return FinAbHom(dual_group(f.dst), dual_group(f.src), std::move(g));
}

} // namespace torsion::ab

#endif
