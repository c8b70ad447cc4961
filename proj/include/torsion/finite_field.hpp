// Finite fields F_{p^d} as polynomial quotients.
//
// The modulus is the first monic irreducible of degree d in the ascending
// enumeration of coefficient tuples (constant coefficient varying fastest),
// which pins every derived constant without external tables.  Elements are
// coefficient vectors of length d with entries in [0, p); the element of
// enumeration index i has coefficients given by the base-p digits of i.
// Field axioms are spot-verified at construction.

#ifndef TORSION_FINITE_FIELD_HPP
#define TORSION_FINITE_FIELD_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/prof_ab.hpp"

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace torsion::gf {

class FiniteField {
public:
  using Elt = std::vector<Int>;

  FiniteField(const Int& p, std::size_t d) : p_(p), d_(d) {
    if (!ab::is_prime(p)) throw ValidationError("characteristic must be prime");
    if (d == 0) throw ValidationError("field degree must be positive");
    q_ = pow_int(p_, static_cast<unsigned long>(d));
    find_modulus();
    spot_check();
  }

  const Int& characteristic() const { return p_; }
  std::size_t degree() const { return d_; }
  const Int& order() const { return q_; }
  const std::vector<Int>& modulus() const { return modulus_; }

  Elt zero() const { return Elt(d_, Int(0)); }
  Elt one() const { return from_base(Int(1)); }

  Elt from_base(const Int& c) const {
    Elt e(d_, Int(0));
    e[0] = fmod_int(c, p_);
    return e;
  }

  bool is_zero(const Elt& a) const {
    for (const auto& c : a)
      if (c != 0) return false;
    return true;
  }

  Elt add(const Elt& a, const Elt& b) const {
    Elt r(d_);
    for (std::size_t i = 0; i < d_; ++i) r[i] = fmod_int(a[i] + b[i], p_);
    return r;
  }

  Elt sub(const Elt& a, const Elt& b) const {
    Elt r(d_);
    for (std::size_t i = 0; i < d_; ++i) r[i] = fmod_int(a[i] - b[i], p_);
    return r;
  }

  Elt neg(const Elt& a) const { return sub(zero(), a); }

  Elt mul(const Elt& a, const Elt& b) const {
    std::vector<Int> prod(2 * d_ - 1, Int(0));
    for (std::size_t i = 0; i < d_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < d_; ++j)
        prod[i + j] = fmod_int(prod[i + j] + a[i] * b[j], p_);
    }
    // Reduce x^k for k >= d via the monic modulus.
    for (std::size_t k = prod.size(); k-- > d_;) {
      Int c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (std::size_t i = 0; i < d_; ++i)
        prod[k - d_ + i] = fmod_int(prod[k - d_ + i] - c * modulus_[i], p_);
    }
    Elt r(d_);
    for (std::size_t i = 0; i < d_; ++i) r[i] = prod[i];
    return r;
  }

  Elt pow(const Elt& a, Int e) const {
    if (e < 0) throw ValidationError("negative field exponent");
    Elt r = one(), base = a;
    while (e > 0) {
      if (fmod_int(e, Int(2)) == 1) r = mul(r, base);
      base = mul(base, base);
      e = fdiv(e, Int(2));
    }
    return r;
  }

  Elt inverse(const Elt& a) const {
    if (is_zero(a)) throw ValidationError("zero has no inverse");
    return pow(a, q_ - 2);
  }

  std::size_t index_of(const Elt& a) const {
    Int idx(0), scale(1);
    for (std::size_t i = 0; i < d_; ++i) {
      idx += a[i] * scale;
      scale *= p_;
    }
    return idx.convert_to<std::size_t>();
  }

  Elt element(std::size_t idx) const {
    Elt a(d_);
    Int v(idx);
    for (std::size_t i = 0; i < d_; ++i) {
      a[i] = fmod_int(v, p_);
      v = fdiv(v, p_);
    }
    if (v != 0) throw ValidationError("field element index out of range");
    return a;
  }

  Int multiplicative_order(const Elt& a) const {
    if (is_zero(a)) throw ValidationError("zero has no multiplicative order");
    Elt x = a;
    Int k(1);
    while (!(x == one())) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  // Least nonzero element (in enumeration order) generating the
  // multiplicative group.
  Elt least_primitive_root() const {
    for (std::size_t i = 1;; ++i) {
      Elt a = element(i);
      if (multiplicative_order(a) == q_ - 1) return a;
    }
  }

  bool operator==(const FiniteField& o) const {
    return p_ == o.p_ && d_ == o.d_ && modulus_ == o.modulus_;
  }

private:
  // Remainder of a monic-candidate polynomial by a monic divisor, over F_p;
  // both in ascending-coefficient form with explicit leading 1.
  bool divides(const std::vector<Int>& div, std::vector<Int> num) const {
    std::size_t dd = div.size() - 1;
    for (std::size_t k = num.size(); k-- > dd;) {
      Int c = num[k];
      if (c == 0) continue;
      for (std::size_t i = 0; i <= dd; ++i)
        num[k - dd + i] = fmod_int(num[k - dd + i] - c * div[i], p_);
    }
    for (std::size_t i = 0; i < dd; ++i)
      if (num[i] != 0) return false;
    return true;
  }

  void find_modulus() {
    // Candidates x^d + sum c_i x^i, enumerated ascending with c_0 fastest.
    Int total = pow_int(p_, static_cast<unsigned long>(d_));
    for (Int idx(0); idx < total; ++idx) {
      std::vector<Int> cand(d_ + 1, Int(0));
      Int v = idx;
      for (std::size_t i = 0; i < d_; ++i) {
        cand[i] = fmod_int(v, p_);
        v = fdiv(v, p_);
      }
      cand[d_] = 1;
      bool irred = true;
      // Trial division by every monic polynomial of degree 1..d/2.
      for (std::size_t k = 1; irred && 2 * k <= d_; ++k) {
        Int divisors = pow_int(p_, static_cast<unsigned long>(k));
        for (Int di(0); irred && di < divisors; ++di) {
          std::vector<Int> div(k + 1, Int(0));
          Int w = di;
          for (std::size_t i = 0; i < k; ++i) {
            div[i] = fmod_int(w, p_);
            w = fdiv(w, p_);
          }
          div[k] = 1;
          if (divides(div, cand)) irred = false;
        }
      }
      if (irred) {
        modulus_.assign(cand.begin(), cand.begin() + d_);
        return;
      }
    }
    throw ValidationError("no irreducible modulus found");
  }

  void spot_check() const {
    std::mt19937 rng(0xf1e1d);
    std::size_t q = q_ < 4096 ? q_.convert_to<std::size_t>() : 4096;
    std::uniform_int_distribution<std::size_t> pick(0, q - 1);
    for (int t = 0; t < 100; ++t) {
      Elt a = element(pick(rng)), b = element(pick(rng)), c = element(pick(rng));
      if (!(mul(mul(a, b), c) == mul(a, mul(b, c))))
        throw ValidationError("field multiplication is not associative");
      if (!(mul(a, add(b, c)) == add(mul(a, b), mul(a, c))))
        throw ValidationError("field arithmetic is not distributive");
      if (!(mul(a, b) == mul(b, a)))
        throw ValidationError("field multiplication is not commutative");
      if (!is_zero(a) && !(mul(a, inverse(a)) == one()))
        throw ValidationError("field inverse failed");
    }
  }

  Int p_;
  std::size_t d_;
  Int q_;
  std::vector<Int> modulus_; // coefficients of degrees 0..d-1; leading 1 implicit
};

} // namespace torsion::gf

#endif
