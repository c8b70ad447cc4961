// Truncated Witt vectors over finite fields.
//
// The addition and multiplication laws are the universal Witt polynomials,
// computed once per (p, n) over exact integers from the ghost components
// w_k = sum_i p^i X_i^{p^{k-i}} and cached; every division by p^k in the
// recursion is asserted exact, and the defining ghost identities are
// re-verified symbolically before the polynomials are released.  Ring
// elements evaluate those polynomials componentwise over F_q.
//
// On top of the ring: Frobenius, Verschiebung, the additive map
// pi = F - id, and the quotient W_n(F_q)/pi(W_n(F_q)) computed by exhaustive
// enumeration with least-index coset representatives.  Quotient invariants
// come from element-order counting (the conjugate-partition argument), not
// from structure theory, so they double as an oracle for the matrix-based
// abelian-invariant code elsewhere in the library.

#ifndef TORSION_WITT_HPP
#define TORSION_WITT_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/finite_field.hpp"
#include "torsion/invariants.hpp"
#include "torsion/prof_ab.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace torsion::witt {

namespace detail {

// Sparse multivariate polynomial with exact integer coefficients over a
// fixed variable arity.  Monomials are dense exponent vectors.
class Poly {
public:
  using Mono = std::vector<unsigned>;

  explicit Poly(std::size_t arity) : arity_(arity) {}

  static Poly var(std::size_t arity, std::size_t i) {
    Poly r(arity);
    Mono m(arity, 0);
    m[i] = 1;
    r.terms_[m] = 1;
    return r;
  }

  static Poly constant(std::size_t arity, const Int& c) {
    Poly r(arity);
    if (c != 0) r.terms_[Mono(arity, 0)] = c;
    return r;
  }

  std::size_t arity() const { return arity_; }
  const std::map<Mono, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) {
      Int& t = r.terms_[m];
      t += c;
      if (t == 0) r.terms_.erase(m);
    }
    return r;
  }

  Poly operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) {
      Int& t = r.terms_[m];
      t -= c;
      if (t == 0) r.terms_.erase(m);
    }
    return r;
  }

  Poly operator*(const Poly& o) const {
    Poly r(arity_);
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) {
        Mono m(arity_);
        for (std::size_t i = 0; i < arity_; ++i) m[i] = m1[i] + m2[i];
        Int& t = r.terms_[m];
        t += c1 * c2;
        if (t == 0) r.terms_.erase(m);
      }
    return r;
  }

  Poly operator*(const Int& c) const {
    Poly r(arity_);
    if (c == 0) return r;
    for (const auto& [m, t] : terms_) r.terms_[m] = t * c;
    return r;
  }

  Poly pow(unsigned long e) const {
    Poly r = constant(arity_, Int(1));
    Poly base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  Poly divided_exact(const Int& d) const {
    Poly r(arity_);
    for (const auto& [m, c] : terms_) {
      if (fmod_int(c, d) != 0)
        throw ValidationError("internal: witt recursion produced a non-integral coefficient");
      r.terms_[m] = fdiv(c, d);
    }
    return r;
  }

  bool operator==(const Poly& o) const {
    return arity_ == o.arity_ && terms_ == o.terms_;
  }

  gf::FiniteField::Elt eval(const gf::FiniteField& f,
                            const std::vector<gf::FiniteField::Elt>& vals) const {
    if (vals.size() != arity_) throw ValidationError("wrong number of evaluation points");
    gf::FiniteField::Elt acc = f.zero();
    for (const auto& [m, c] : terms_) {
      gf::FiniteField::Elt t = f.from_base(c);
      for (std::size_t i = 0; i < arity_; ++i)
        if (m[i] > 0) t = f.mul(t, f.pow(vals[i], Int(m[i])));
      acc = f.add(acc, t);
    }
    return acc;
  }

private:
  std::size_t arity_;
  std::map<Mono, Int> terms_;
};

} // namespace detail

// Universal addition (s) and multiplication (pr) polynomials for level-n
// Witt vectors at the prime p, in 2n variables: x_i = variable i,
// y_i = variable n + i.
struct WittPolys {
  Int p;
  std::size_t n;
  std::vector<detail::Poly> s;
  std::vector<detail::Poly> pr;
};

namespace detail {

inline WittPolys compute_witt_polys(const Int& p, std::size_t n) {
  const std::size_t arity = 2 * n;
  std::vector<Poly> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(Poly::var(arity, i));
    ys.push_back(Poly::var(arity, n + i));
  }
  // p^i * z^{p^{k-i}}, the i-th ghost summand at level k.
  auto ghost_term = [&](const Poly& z, std::size_t i, std::size_t k) {
    Int scale = pow_int(p, static_cast<unsigned long>(i));
    unsigned long e =
        pow_int(p, static_cast<unsigned long>(k - i)).convert_to<unsigned long>();
    return z.pow(e) * scale;
  };

  std::vector<Poly> S, P;
  for (std::size_t k = 0; k < n; ++k) {
    Poly wx(arity), wy(arity);
    for (std::size_t i = 0; i <= k; ++i) {
      wx = wx + ghost_term(xs[i], i, k);
      wy = wy + ghost_term(ys[i], i, k);
    }
    Poly ts = wx + wy;
    Poly tp = wx * wy;
    for (std::size_t i = 0; i < k; ++i) {
      ts = ts - ghost_term(S[i], i, k);
      tp = tp - ghost_term(P[i], i, k);
    }
    Int pk = pow_int(p, static_cast<unsigned long>(k));
    S.push_back(ts.divided_exact(pk));
    P.push_back(tp.divided_exact(pk));
  }

  // Re-verify the ghost identities w_k(S) = w_k(x) + w_k(y) and
  // w_k(P) = w_k(x) * w_k(y) symbolically.
  for (std::size_t k = 0; k < n; ++k) {
    Poly wx(arity), wy(arity), ws(arity), wp(arity);
    for (std::size_t i = 0; i <= k; ++i) {
      wx = wx + ghost_term(xs[i], i, k);
      wy = wy + ghost_term(ys[i], i, k);
      ws = ws + ghost_term(S[i], i, k);
      wp = wp + ghost_term(P[i], i, k);
    }
    if (!(ws == wx + wy))
      throw ValidationError("internal: additive ghost identity violated at level " +
                            std::to_string(k));
    if (!(wp == wx * wy))
      throw ValidationError("internal: multiplicative ghost identity violated at level " +
                            std::to_string(k));
  }
  return WittPolys{p, n, std::move(S), std::move(P)};
}

} // namespace detail

// Cached accessor.  The cache is the only shared state in this header:
// guarded by a mutex, populated once per key, entries immutable afterward.
inline const WittPolys& witt_polys(const Int& p, std::size_t n,
                                   std::size_t level_guard = 6) {
  if (!ab::is_prime(p)) throw ValidationError("witt characteristic must be prime");
  if (n == 0) throw ValidationError("witt level must be positive");
  if (n > level_guard)
    throw BudgetExceeded("witt level exceeds the guard",
                         "requested level " + std::to_string(n) + ", guard " +
                             std::to_string(level_guard));
  static std::map<std::pair<Int, std::size_t>, std::unique_ptr<const WittPolys>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<const WittPolys>(
                                detail::compute_witt_polys(p, n)))
             .first;
  return *it->second;
}

// W_n(F_q): vectors of n field elements with polynomial arithmetic.
class WittRing {
public:
  using WV = std::vector<gf::FiniteField::Elt>;

  WittRing(gf::FiniteField f, std::size_t n, std::size_t level_guard = 6)
      : field_(std::move(f)), n_(n),
        polys_(&witt_polys(field_.characteristic(), n, level_guard)) {
    size_ = pow_int(field_.order(), static_cast<unsigned long>(n));
  }

  const gf::FiniteField& field() const { return field_; }
  std::size_t level() const { return n_; }
  const Int& size() const { return size_; }

  WV zero() const { return WV(n_, field_.zero()); }

  WV one() const {
    WV a = zero();
    a[0] = field_.one();
    return a;
  }

  WV add(const WV& a, const WV& b) const {
    auto vals = joined(a, b);
    WV r(n_);
    for (std::size_t k = 0; k < n_; ++k) r[k] = polys_->s[k].eval(field_, vals);
    return r;
  }

  WV mul(const WV& a, const WV& b) const {
    auto vals = joined(a, b);
    WV r(n_);
    for (std::size_t k = 0; k < n_; ++k) r[k] = polys_->pr[k].eval(field_, vals);
    return r;
  }

  // k-fold sum by double-and-add; k >= 0.
  WV smul(Int k, const WV& a) const {
    check(a);
    if (k < 0) throw ValidationError("negative witt multiplicity");
    WV r = zero(), base = a;
    while (k > 0) {
      if (fmod_int(k, Int(2)) == 1) r = add(r, base);
      base = add(base, base);
      k = fdiv(k, Int(2));
    }
    return r;
  }

  // The additive group has exponent p^n, so -a = (p^n - 1) a.
  WV neg(const WV& a) const {
    Int e = pow_int(field_.characteristic(), static_cast<unsigned long>(n_));
    return smul(e - 1, a);
  }

  WV sub(const WV& a, const WV& b) const { return add(a, neg(b)); }

  WV frobenius(const WV& a) const {
    check(a);
    WV r(n_);
    for (std::size_t k = 0; k < n_; ++k)
      r[k] = field_.pow(a[k], field_.characteristic());
    return r;
  }

  // Within the fixed truncation the shift drops the last component.
  WV verschiebung(const WV& a) const {
    check(a);
    WV r = zero();
    for (std::size_t k = 0; k + 1 < n_; ++k) r[k + 1] = a[k];
    return r;
  }

  WV pi(const WV& a) const { return sub(frobenius(a), a); }

  bool is_zero(const WV& a) const {
    for (const auto& c : a)
      if (!field_.is_zero(c)) return false;
    return true;
  }

  std::size_t index_of(const WV& a) const {
    check(a);
    Int idx(0), scale(1);
    for (std::size_t k = 0; k < n_; ++k) {
      idx += Int(field_.index_of(a[k])) * scale;
      scale *= field_.order();
    }
    return idx.convert_to<std::size_t>();
  }

  WV element(std::size_t idx) const {
    WV a(n_);
    Int v(idx);
    for (std::size_t k = 0; k < n_; ++k) {
      a[k] = field_.element(fmod_int(v, field_.order()).convert_to<std::size_t>());
      v = fdiv(v, field_.order());
    }
    if (v != 0) throw ValidationError("witt vector index out of range");
    return a;
  }

private:
  void check(const WV& a) const {
    if (a.size() != n_)
      throw ValidationError("witt vector has the wrong level for this ring");
    for (const auto& c : a)
      if (c.size() != field_.degree())
        throw ValidationError("witt vector component is not in this ring's field");
  }

  std::vector<gf::FiniteField::Elt> joined(const WV& a, const WV& b) const {
    check(a);
    check(b);
    std::vector<gf::FiniteField::Elt> vals(2 * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      vals[i] = a[i];
      vals[n_ + i] = b[i];
    }
    return vals;
  }

  gf::FiniteField field_;
  std::size_t n_;
  const WittPolys* polys_;
  Int size_;
};

// One Artin-Schreier quotient W_n(F_q)/pi(W_n(F_q)): coset labels for every
// ring element, least-index representatives, and abelian invariants from
// order counting.
struct CokernelStage {
  std::size_t level = 0;
  std::size_t total = 0;                // |W_n(F_q)|
  std::vector<std::size_t> coset_of;    // element index -> coset id
  std::vector<std::size_t> reps;        // coset id -> least member's element index
  std::vector<Int> coset_orders;        // coset id -> additive order in the quotient
  ab::FinAbInvariants invariants;
};

namespace detail {

// Invariant factors of a finite abelian p-group from its element orders:
// counting elements killed by p^j gives the conjugate partition of the
// exponent partition.
inline ab::FinAbInvariants invariants_from_orders(const std::vector<Int>& orders,
                                                  const Int& p) {
  std::vector<std::size_t> c; // c[j] = log_p #{x : p^j x = 0}
  for (std::size_t j = 0;; ++j) {
    Int pj = pow_int(p, static_cast<unsigned long>(j));
    std::size_t cnt = 0;
    for (const auto& o : orders)
      if (fmod_int(pj, o) == 0) ++cnt;
    Int logv(0), acc(1);
    while (acc < Int(cnt)) {
      acc *= p;
      ++logv;
    }
    if (acc != Int(cnt))
      throw ValidationError("internal: quotient order count is not a power of p");
    c.push_back(logv.convert_to<std::size_t>());
    if (cnt == orders.size()) break;
  }
  std::size_t jmax = c.size() - 1;
  std::vector<std::size_t> m(jmax + 1, 0); // m[j] = #factors with exponent >= j
  for (std::size_t j = 1; j <= jmax; ++j) m[j] = c[j] - c[j - 1];
  std::size_t factors = jmax >= 1 ? m[1] : 0;
  Vec torsion;
  for (std::size_t i = factors; i >= 1; --i) {
    std::size_t e = 0;
    for (std::size_t j = 1; j <= jmax; ++j)
      if (m[j] >= i) e = j;
    torsion.push_back(pow_int(p, static_cast<unsigned long>(e)));
  }
  return ab::FinAbInvariants(0, std::move(torsion));
}

} // namespace detail

inline CokernelStage cokernel_stage(const WittRing& ring) {
  if (ring.size() > 1 << 16)
    throw BudgetExceeded("witt quotient enumeration is too large",
                         "|W_n(F_q)| = " + to_string(ring.size()));
  const std::size_t N = ring.size().convert_to<std::size_t>();

  std::vector<bool> in_image(N, false);
  for (std::size_t idx = 0; idx < N; ++idx)
    in_image[ring.index_of(ring.pi(ring.element(idx)))] = true;
  std::vector<std::size_t> image;
  for (std::size_t i = 0; i < N; ++i)
    if (in_image[i]) image.push_back(i);

  CokernelStage st;
  st.level = ring.level();
  st.total = N;
  st.coset_of.assign(N, static_cast<std::size_t>(-1));
  for (std::size_t idx = 0; idx < N; ++idx) {
    if (st.coset_of[idx] != static_cast<std::size_t>(-1)) continue;
    std::size_t id = st.reps.size();
    st.reps.push_back(idx);
    auto x = ring.element(idx);
    for (std::size_t i : image)
      st.coset_of[ring.index_of(ring.add(x, ring.element(i)))] = id;
    if (st.coset_of[idx] != id)
      throw ValidationError("internal: pi image is not a subgroup");
  }

  // Coset of zero is id 0 (element index 0 is assigned first).
  for (std::size_t id = 0; id < st.reps.size(); ++id) {
    auto x = ring.element(st.reps[id]);
    auto y = x;
    Int o(1);
    while (st.coset_of[ring.index_of(y)] != 0) {
      y = ring.add(y, x);
      ++o;
    }
    st.coset_orders.push_back(o);
  }
  st.invariants =
      detail::invariants_from_orders(st.coset_orders, ring.field().characteristic());

  Int prod(1);
  for (const auto& t : st.invariants.torsion) prod *= t;
  if (prod != Int(st.reps.size()))
    throw ValidationError("internal: quotient invariants do not match the coset count");
  return st;
}

// Quotients at levels n and n+1 together with the map between them induced
// by the shift V (well-definedness is checked on every element).
struct ArtinSchreierResult {
  CokernelStage stage;
  CokernelStage next;
  std::vector<std::size_t> transition; // stage coset id -> next coset id
};

inline ArtinSchreierResult artin_schreier_cokernel(const Int& p, std::size_t deg,
                                                   std::size_t n,
                                                   std::size_t level_guard = 6) {
  if (n + 1 > level_guard)
    throw BudgetExceeded("witt level exceeds the guard",
                         "the transition needs level " + std::to_string(n + 1));
  gf::FiniteField f(p, deg);
  WittRing rn(f, n, level_guard);
  WittRing rn1(f, n + 1, level_guard);

  ArtinSchreierResult res;
  res.stage = cokernel_stage(rn);
  res.next = cokernel_stage(rn1);

  // V into the next truncation keeps every component: (a_0..a_{n-1}) maps to
  // (0, a_0, .., a_{n-1}).
  auto lift_shift = [&](const WittRing::WV& a) {
    WittRing::WV r = rn1.zero();
    for (std::size_t k = 0; k < n; ++k) r[k + 1] = a[k];
    return r;
  };

  res.transition.assign(res.stage.reps.size(), 0);
  for (std::size_t id = 0; id < res.stage.reps.size(); ++id)
    res.transition[id] =
        res.next.coset_of[rn1.index_of(lift_shift(rn.element(res.stage.reps[id])))];
  for (std::size_t idx = 0; idx < res.stage.total; ++idx) {
    std::size_t got = res.next.coset_of[rn1.index_of(lift_shift(rn.element(idx)))];
    if (got != res.transition[res.stage.coset_of[idx]])
      throw ValidationError("internal: the shift does not descend to the quotients");
  }
  return res;
}

// Does V(x) = V(F(x)) hold modulo pi(W_{n+1}) for every x in W_n?
inline bool check_ftilde_equals_ftildeV(const Int& p, std::size_t deg, std::size_t n,
                                        std::size_t level_guard = 6) {
  if (n + 1 > level_guard)
    throw BudgetExceeded("witt level exceeds the guard",
                         "the check needs level " + std::to_string(n + 1));
  gf::FiniteField f(p, deg);
  WittRing rn(f, n, level_guard);
  WittRing rn1(f, n + 1, level_guard);
  CokernelStage next = cokernel_stage(rn1);
  auto lift_shift = [&](const WittRing::WV& a) {
    WittRing::WV r = rn1.zero();
    for (std::size_t k = 0; k < n; ++k) r[k + 1] = a[k];
    return r;
  };
  const std::size_t N = rn.size().convert_to<std::size_t>();
  for (std::size_t idx = 0; idx < N; ++idx) {
    auto x = rn.element(idx);
    if (next.coset_of[rn1.index_of(lift_shift(x))] !=
        next.coset_of[rn1.index_of(lift_shift(rn.frobenius(x)))])
      return false;
  }
  return true;
}

// Does the image of the transition map land in p * (W_{n+1}/pi)?
inline bool p_divisibility_stage(const Int& p, std::size_t deg, std::size_t n,
                                 std::size_t level_guard = 6) {
  ArtinSchreierResult res = artin_schreier_cokernel(p, deg, n, level_guard);
  gf::FiniteField f(p, deg);
  WittRing rn1(f, n + 1, level_guard);
  std::set<std::size_t> p_cosets;
  const std::size_t N1 = rn1.size().convert_to<std::size_t>();
  for (std::size_t idx = 0; idx < N1; ++idx)
    p_cosets.insert(res.next.coset_of[rn1.index_of(rn1.smul(p, rn1.element(idx)))]);
  for (std::size_t id = 0; id < res.transition.size(); ++id)
    if (!p_cosets.count(res.transition[id])) return false;
  return true;
}

} // namespace torsion::witt

#endif
