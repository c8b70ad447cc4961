// Monomial symmetries of Laurent stages over finite fields.
//
// A stage is the Laurent ring F_q[t_1^{\pm 1/s}, .., t_n^{\pm 1/s}] for an
// s dividing q - 1.  Elements are finite sums of monomials; exponents are
// stored as integer vectors with the denominator s implicit, so t_i^{e/s}
// is the vector with e in slot i and everything is exact.  The group acting
// is the wreath-like group of letter permutations and twists by powers of a
// fixed primitive s-th root of unity theta (the least primitive root of
// F_q^* raised to (q-1)/s, so every constant is pinned).
//
// On top of the action: fixed-ring and free-basis checks for the degree-s
// Kummer-like extension, decomposition and inertia groups at unit rational
// points, and a criterion that sweeps every unit point and either certifies
// trivial inertia everywhere or returns the least witness.

#ifndef TORSION_GALOIS_HPP
#define TORSION_GALOIS_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/finite_field.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace torsion::galois {

// Permutation-with-twist: perm is 0-based one-line (perm[i] = image of
// letter i), twist entries live in Z/s.  Composition is
// (p1, w1)(p2, w2) = (p1 p2, w1 + p1.w2) where (p.w)_{p(i)} = w_i.
struct StageGroupElement {
  std::vector<std::size_t> perm;
  Vec twist;

  bool operator==(const StageGroupElement& o) const {
    return perm == o.perm && twist == o.twist;
  }
  bool operator<(const StageGroupElement& o) const {
    if (perm != o.perm) return perm < o.perm;
    return twist < o.twist;
  }
  bool is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != i) return false;
    for (const auto& w : twist)
      if (w != 0) return false;
    return true;
  }
};

class LaurentStage {
public:
  using Coeff = gf::FiniteField::Elt;
  using Elem = std::map<Vec, Coeff>; // exponent vector -> nonzero coefficient

  LaurentStage(const Int& q, std::size_t n, const Int& s)
      : field_(factor_base(q), factor_degree(q)), n_(n), s_(s) {
    if (n_ == 0) throw ValidationError("a stage needs at least one variable");
    if (s_ < 1) throw ValidationError("the root denominator must be positive");
    if (fmod_int(field_.order() - 1, s_) != 0)
      throw ValidationError("the needed roots of unity are absent: " + to_string(s_) +
                            " does not divide " + to_string(field_.order() - 1));
    Coeff g = field_.least_primitive_root();
    theta_ = field_.pow(g, fdiv(field_.order() - 1, s_));
    if (field_.multiplicative_order(theta_) != s_)
      throw ValidationError("internal: theta does not have order s");
  }

  const gf::FiniteField& field() const { return field_; }
  std::size_t vars() const { return n_; }
  const Int& denominator() const { return s_; }
  const Coeff& theta() const { return theta_; }

  Elem zero_elem() const { return {}; }

  Elem monomial(const Vec& e, const Coeff& c) const {
    if (e.size() != n_) throw ValidationError("exponent vector has the wrong arity");
    Elem f;
    if (!field_.is_zero(c)) f[e] = c;
    return f;
  }

  bool is_zero(const Elem& f) const { return f.empty(); }

  Elem add(Elem a, const Elem& b) const {
    for (const auto& [e, c] : b) {
      auto it = a.find(e);
      if (it == a.end()) {
        a[e] = c;
      } else {
        it->second = field_.add(it->second, c);
        if (field_.is_zero(it->second)) a.erase(it);
      }
    }
    return a;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    Elem r;
    for (const auto& [e1, c1] : a)
      for (const auto& [e2, c2] : b) {
        Vec e(n_);
        for (std::size_t i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
        Coeff c = field_.mul(c1, c2);
        auto it = r.find(e);
        if (it == r.end()) {
          if (!field_.is_zero(c)) r[e] = c;
        } else {
          it->second = field_.add(it->second, c);
          if (field_.is_zero(it->second)) r.erase(it);
        }
      }
    return r;
  }

  // Evaluation at a unit rational point (every coordinate nonzero), using
  // a_i^e = a_i^{e mod (q-1)}.
  Coeff eval(const Elem& f, const std::vector<Coeff>& point) const {
    check_point(point);
    Coeff acc = field_.zero();
    for (const auto& [e, c] : f) {
      Coeff t = c;
      for (std::size_t i = 0; i < n_; ++i)
        t = field_.mul(t, field_.pow(point[i], fmod_int(e[i], field_.order() - 1)));
      acc = field_.add(acc, t);
    }
    return acc;
  }

  StageGroupElement identity_element() const {
    StageGroupElement g;
    g.perm.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) g.perm[i] = i;
    g.twist = Vec(n_, Int(0));
    return g;
  }

  // Validates shape and reduces the twist mod s.
  StageGroupElement canonical(StageGroupElement g) const {
    if (g.perm.size() != n_ || g.twist.size() != n_)
      throw ValidationError("stage group element has the wrong arity");
    std::vector<bool> seen(n_, false);
    for (std::size_t i : g.perm) {
      if (i >= n_ || seen[i])
        throw ValidationError("stage group element permutation is not a bijection");
      seen[i] = true;
    }
    for (auto& w : g.twist) w = fmod_int(w, s_);
    return g;
  }

  StageGroupElement compose(const StageGroupElement& g1,
                            const StageGroupElement& g2) const {
    StageGroupElement r;
    r.perm.resize(n_);
    r.twist = Vec(n_, Int(0));
    for (std::size_t i = 0; i < n_; ++i) r.perm[i] = g1.perm[g2.perm[i]];
    for (std::size_t i = 0; i < n_; ++i)
      r.twist[g1.perm[i]] = fmod_int(g1.twist[g1.perm[i]] + g2.twist[i], s_);
    return r;
  }

  StageGroupElement inverse(const StageGroupElement& g) const {
    StageGroupElement r;
    r.perm.resize(n_);
    r.twist = Vec(n_, Int(0));
    for (std::size_t i = 0; i < n_; ++i) r.perm[g.perm[i]] = i;
    for (std::size_t i = 0; i < n_; ++i)
      r.twist[i] = fmod_int(-g.twist[g.perm[i]], s_);
    return r;
  }

  // Monomial action: t^{e/s} maps to theta^{<w, p(e)>} t^{p(e)/s} where
  // (p(e))_{p(i)} = e_i, extended linearly.
  Elem act(const StageGroupElement& g, const Elem& f) const {
    Elem r;
    for (const auto& [e, c] : f) {
      Vec pe(n_);
      for (std::size_t i = 0; i < n_; ++i) pe[g.perm[i]] = e[i];
      Int pw(0);
      for (std::size_t j = 0; j < n_; ++j) pw += g.twist[j] * pe[j];
      Coeff cc = field_.mul(c, field_.pow(theta_, fmod_int(pw, s_)));
      auto it = r.find(pe);
      if (it == r.end()) {
        if (!field_.is_zero(cc)) r[pe] = cc;
      } else {
        it->second = field_.add(it->second, cc);
        if (field_.is_zero(it->second)) r.erase(it);
      }
    }
    return r;
  }

  // Induced action on unit rational points: the maximal ideal at a moves to
  // the one at b with b_j = theta^{-w_j} a_{p^{-1}(j)}.
  std::vector<Coeff> point_image(const StageGroupElement& g,
                                 const std::vector<Coeff>& a) const {
    check_point(a);
    std::vector<std::size_t> invp(n_);
    for (std::size_t i = 0; i < n_; ++i) invp[g.perm[i]] = i;
    std::vector<Coeff> b(n_);
    for (std::size_t j = 0; j < n_; ++j)
      b[j] = field_.mul(field_.pow(theta_, fmod_int(-g.twist[j], s_)), a[invp[j]]);
    return b;
  }

  void check_point(const std::vector<Coeff>& a) const {
    if (a.size() != n_) throw ValidationError("point has the wrong arity");
    for (const auto& c : a) {
      if (c.size() != field_.degree())
        throw ValidationError("point coordinate is not a field element");
      if (field_.is_zero(c))
        throw ValidationError("points must have unit coordinates");
    }
  }

private:
  static Int factor_base(const Int& q) {
    if (q < 2) throw ValidationError("the field order must be a prime power");
    Int p = q;
    for (Int d(2); d * d <= q; ++d)
      if (fmod_int(q, d) == 0) {
        p = d;
        break;
      }
    return p;
  }

  static std::size_t factor_degree(const Int& q) {
    Int p = factor_base(q);
    Int v = q;
    std::size_t d = 0;
    while (fmod_int(v, p) == 0) {
      v = fdiv(v, p);
      ++d;
    }
    if (v != 1) throw ValidationError("the field order must be a prime power");
    return d;
  }

  gf::FiniteField field_;
  std::size_t n_;
  Int s_;
  Coeff theta_;
};

inline LaurentStage make_stage(const Int& q, std::size_t n, const Int& s) {
  return LaurentStage(q, n, s);
}

// BFS closure of the generated subgroup, identity first, the rest in the
// canonical (perm, twist) order.
inline std::vector<StageGroupElement>
generate_subgroup(const LaurentStage& st, const std::vector<StageGroupElement>& gens,
                  std::size_t budget = 100000) {
  std::set<StageGroupElement> seen;
  seen.insert(st.identity_element());
  std::vector<StageGroupElement> frontier(seen.begin(), seen.end());
  std::vector<StageGroupElement> canon;
  for (const auto& g : gens) canon.push_back(st.canonical(g));
  while (!frontier.empty()) {
    std::vector<StageGroupElement> next;
    for (const auto& x : frontier)
      for (const auto& g : canon) {
        StageGroupElement y = st.compose(x, g);
        if (seen.insert(y).second) {
          next.push_back(y);
          if (seen.size() > budget)
            throw BudgetExceeded("stage subgroup closure is too large",
                                 std::to_string(seen.size()) + " elements reached");
        }
      }
    frontier = std::move(next);
  }
  // Set order is (perm, twist) lex, which places the identity first.
  return std::vector<StageGroupElement>(seen.begin(), seen.end());
}

struct InertiaReport {
  std::vector<StageGroupElement> decomposition;
  std::vector<StageGroupElement> inertia;
};

namespace detail {

inline InertiaReport inertia_of_closure(const LaurentStage& st,
                                        const std::vector<StageGroupElement>& closure,
                                        const std::vector<LaurentStage::Coeff>& point) {
  st.check_point(point);
  InertiaReport rep;
  for (const auto& g : closure) {
    if (!(st.point_image(g, point) == point)) continue;
    rep.decomposition.push_back(g);
    // Residue action at a rational point is evaluation of each coordinate
    // function; computed through the ring action, not the point formula.
    bool trivial = true;
    for (std::size_t i = 0; i < st.vars() && trivial; ++i) {
      Vec e(st.vars(), Int(0));
      e[i] = 1;
      auto ui = st.monomial(e, st.field().one());
      if (!(st.eval(st.act(g, ui), point) == point[i])) trivial = false;
    }
    if (trivial) rep.inertia.push_back(g);
  }
  return rep;
}

} // namespace detail

inline InertiaReport inertia_at_point(const LaurentStage& st,
                                      const std::vector<StageGroupElement>& gens,
                                      const std::vector<LaurentStage::Coeff>& point) {
  return detail::inertia_of_closure(st, generate_subgroup(st, gens), point);
}

struct GaloisCertificate {
  bool galois = false;
  std::size_t points_checked = 0;
  std::vector<gf::FiniteField::Elt> witness_point; // empty when certified
  StageGroupElement witness;                       // identity when certified
};

// Sweep every unit rational point in lexicographic order (first coordinate
// most significant, coordinates ordered by field element index).  Certify
// trivial inertia everywhere, or report the least point with a nontrivial
// inertia element and the least such element.
inline GaloisCertificate galois_criterion(const LaurentStage& st,
                                          const std::vector<StageGroupElement>& gens) {
  auto closure = generate_subgroup(st, gens);
  const std::size_t n = st.vars();
  const std::size_t units = (st.field().order() - 1).convert_to<std::size_t>();
  GaloisCertificate cert;
  cert.witness = st.identity_element();

  std::vector<std::size_t> odo(n, 1);
  for (;;) {
    std::vector<LaurentStage::Coeff> point(n);
    for (std::size_t i = 0; i < n; ++i) point[i] = st.field().element(odo[i]);
    InertiaReport rep = detail::inertia_of_closure(st, closure, point);
    ++cert.points_checked;
    for (const auto& g : rep.inertia)
      if (!g.is_identity()) {
        cert.galois = false;
        cert.witness_point = point;
        cert.witness = g;
        return cert;
      }
    // Odometer: last coordinate fastest.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (odo[i] < units) {
        ++odo[i];
        break;
      }
      odo[i] = 1;
      if (i == 0) {
        cert.galois = true;
        return cert;
      }
    }
  }
}

// Is a degree-bounded monomial fixed by every pure twist exactly when all
// its exponents are divisible by s?
inline bool fixed_ring_check(const LaurentStage& st, long degree_bound = 0) {
  const std::size_t n = st.vars();
  const Int& s = st.denominator();
  long bound = degree_bound > 0 ? degree_bound
                                : 2 * s.convert_to<long>() + 1;
  Int twists = pow_int(s, static_cast<unsigned long>(n));
  if (twists > 1 << 16)
    throw BudgetExceeded("twist sweep is too large", to_string(twists) + " twists");

  // All pure twists, by odometer over [0, s)^n.
  std::vector<StageGroupElement> pure;
  Vec w(n, Int(0));
  for (;;) {
    StageGroupElement g = st.identity_element();
    g.twist = w;
    pure.push_back(g);
    std::size_t i = n;
    bool done = true;
    while (i > 0) {
      --i;
      if (w[i] + 1 < s) {
        ++w[i];
        done = false;
        break;
      }
      w[i] = 0;
    }
    if (done) break;
  }

  std::vector<long> e(n, -bound);
  for (;;) {
    Vec ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = Int(e[i]);
    auto mono = st.monomial(ev, st.field().one());
    bool fixed = true;
    for (const auto& g : pure)
      if (!(st.act(g, mono) == mono)) {
        fixed = false;
        break;
      }
    bool divisible = true;
    for (std::size_t i = 0; i < n; ++i)
      if (fmod_int(ev[i], s) != 0) divisible = false;
    if (fixed != divisible) return false;
    std::size_t i = n;
    bool done = true;
    while (i > 0) {
      --i;
      if (e[i] < bound) {
        ++e[i];
        done = false;
        break;
      }
      e[i] = -bound;
    }
    if (done) break;
  }
  return true;
}

struct SeparabilityReport {
  bool ok = false;
  Vec basis; // exponents j of the module basis t^{j/s}, j = 0..s-1
};

// For one variable: {t^{j/s}}_{0 <= j < s} is a free module basis over the
// integral-exponent subring.  Spanning is the residue decomposition of every
// bounded monomial; freeness is nonvanishing of sampled nontrivial
// combinations (monomials in distinct residue classes cannot collide).
inline SeparabilityReport separability_basis_check(const LaurentStage& st,
                                                   long degree_bound = 0,
                                                   std::uint64_t seed = 0xba515) {
  if (st.vars() != 1)
    throw UsageError("the basis check is defined for one-variable stages");
  const Int& s = st.denominator();
  long sl = s.convert_to<long>();
  long bound = degree_bound > 0 ? degree_bound : 3 * sl;

  SeparabilityReport rep;
  for (long j = 0; j < sl; ++j) rep.basis.push_back(Int(j));

  // Spanning: u^m = t^{(m-r)/s} * u^r with r = m mod s, verified through
  // the ring multiplication.
  for (long m = -bound; m <= bound; ++m) {
    Int r = fmod_int(Int(m), s);
    Int k = Int(m) - r;
    if (fmod_int(k, s) != 0) return rep;
    auto whole = st.monomial(Vec{Int(m)}, st.field().one());
    auto split = st.mul(st.monomial(Vec{k}, st.field().one()),
                        st.monomial(Vec{r}, st.field().one()));
    if (!(whole == split)) return rep;
  }

  // Freeness: random not-all-zero coefficient tuples over the subring.
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  std::uniform_int_distribution<long> kpick(-2, 2);
  std::uniform_int_distribution<std::size_t> cpick(
      0, st.field().order().convert_to<std::size_t>() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    LaurentStage::Elem sum = st.zero_elem();
    bool nonzero = false;
    for (long j = 0; j < sl; ++j) {
      LaurentStage::Elem cj = st.zero_elem();
      for (int t = 0; t < 2; ++t) {
        auto c = st.field().element(cpick(rng));
        cj = st.add(cj, st.monomial(Vec{Int(kpick(rng)) * s}, c));
      }
      if (!st.is_zero(cj)) nonzero = true;
      sum = st.add(sum, st.mul(cj, st.monomial(Vec{Int(j)}, st.field().one())));
    }
    if (nonzero && st.is_zero(sum)) return rep;
  }
  rep.ok = true;
  return rep;
}

} // namespace torsion::galois

#endif
