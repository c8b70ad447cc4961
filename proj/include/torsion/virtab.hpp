// Virtually abelian groups as explicit extensions of a finite group by a
// lattice.
//
// A group element is a pair (q, v) with q in a finite group Q and v an
// integer vector of fixed rank n; multiplication is
//   (q1, v1) (q2, v2) = (q1 q2, v1 + M_{q1} v2 + c(q1, q2))
// where M is an action of Q by unimodular integer matrices and c is a
// normalized 2-cocycle with values in the lattice.  Construction validates
// the action (homomorphism, unimodularity), normalizes the cocycle by the
// standard coboundary shift, and checks the cocycle identity on all triples,
// reporting the offending pair or triple on failure.
//
// Throughout, the profinite completion of the lattice is modeled by the
// integer lattice itself: all certificates are exact integer data.
//
// Torsion detection reduces to linear algebra: (q, v)^m, for m the order of
// q, translates by N_q v + d_q with N_q = sum of powers of M_q, so a torsion
// element over q exists exactly when N_q v = -d_q is solvable.  Subgroup
// closures are computed by a transversal construction: the kernel lattice is
// spanned by Schreier generator translations and saturated under the point
// group action to a Hermite-basis fixpoint.

#ifndef TORSION_VIRTAB_HPP
#define TORSION_VIRTAB_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/finite_group.hpp"
#include "torsion/int_matrix.hpp"
#include "torsion/smith.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torsion::vab {

struct VAElement {
  std::size_t q = 0;
  Vec v;

  bool operator==(const VAElement& o) const { return q == o.q && v == o.v; }
  bool operator<(const VAElement& o) const {
    if (q != o.q) return q < o.q;
    return v < o.v;
  }
};

using CocycleMap = std::map<std::pair<std::size_t, std::size_t>, Vec>;

class VirtAbGroup {
public:
  // Builds the extension from a point group, lattice rank, action matrices
  // (one per point group element, indexed accordingly) and a cocycle given
  // as a sparse map (missing pairs are zero).  The cocycle is normalized at
  // ingestion; validation failures name the offending elements.
  VirtAbGroup(FiniteGroup point, std::size_t rank,
              std::vector<IntMatrix> action, const CocycleMap& cocycle = {})
      : point_(std::move(point)), n_(rank), action_(std::move(action)) {
    std::size_t q = point_.order();
    if (action_.size() != q)
      throw ValidationError("need one action matrix per point group element");
    for (std::size_t i = 0; i < q; ++i) {
      if (action_[i].rows() != n_ || action_[i].cols() != n_)
        throw ValidationError("action matrix for '" + point_.label(i) +
                              "' is not " + std::to_string(n_) + "x" +
                              std::to_string(n_));
      if (!is_unimodular(action_[i]))
        throw ValidationError("action matrix for '" + point_.label(i) +
                              "' is not unimodular");
    }
    if (!action_[0].is_identity())
      throw ValidationError("action of the identity is not the identity");
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b)
        if (!(action_[a] * action_[b] == action_[point_.mult(a, b)]))
          throw ValidationError("action is not a homomorphism at pair ('" +
                                point_.label(a) + "', '" + point_.label(b) +
                                "')");
    cocycle_.assign(q * q, Vec(n_, Int(0)));
    for (const auto& [key, val] : cocycle) {
      auto [a, b] = key;
      if (a >= q || b >= q)
        throw ValidationError("cocycle entry indexes a missing element");
      if (val.size() != n_)
        throw ValidationError("cocycle value at ('" + point_.label(a) +
                              "', '" + point_.label(b) +
                              "') has the wrong rank");
      cocycle_[a * q + b] = val;
    }
    bool all_zero = true;
    for (const auto& row : cocycle_)
      for (const auto& x : row) all_zero = all_zero && x == 0;
    if (all_zero) return;
    // Normalize: shift by the coboundary of the constant c(e, e), which
    // zeroes c(e, -) and c(-, e) without changing the extension.
    Vec shift = cocycle_[0];
    bool nonzero = false;
    for (const auto& x : shift) nonzero = nonzero || x != 0;
    if (nonzero) {
      for (std::size_t a = 0; a < q; ++a) {
        Vec ms = action_[a].apply(shift);
        for (std::size_t b = 0; b < q; ++b)
          for (std::size_t i = 0; i < n_; ++i)
            cocycle_[a * q + b][i] -= ms[i];
      }
    }
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (cocycle_[0 * q + a][i] != 0 || cocycle_[a * q + 0][i] != 0)
          throw ValidationError("cocycle cannot be normalized at '" +
                                point_.label(a) + "'");
      }
    }
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b)
        for (std::size_t c = 0; c < q; ++c) {
          // M_a c(b,c) - c(ab,c) + c(a,bc) - c(a,b) = 0
          Vec lhs = action_[a].apply(cocycle_at(b, c));
          const Vec& t1 = cocycle_at(point_.mult(a, b), c);
          const Vec& t2 = cocycle_at(a, point_.mult(b, c));
          const Vec& t3 = cocycle_at(a, b);
          for (std::size_t i = 0; i < n_; ++i)
            if (lhs[i] - t1[i] + t2[i] - t3[i] != 0)
              throw ValidationError(
                  "cocycle identity fails at triple ('" + point_.label(a) +
                  "', '" + point_.label(b) + "', '" + point_.label(c) + "')");
        }
  }

  const FiniteGroup& point_group() const { return point_; }
  std::size_t rank() const { return n_; }
  const IntMatrix& action(std::size_t a) const { return action_[a]; }
  const Vec& cocycle_at(std::size_t a, std::size_t b) const {
    return cocycle_[a * point_.order() + b];
  }

  VAElement identity() const { return VAElement{0, Vec(n_, Int(0))}; }

  void check(const VAElement& x) const {
    if (x.q >= point_.order())
      throw ValidationError("element point part out of range");
    if (x.v.size() != n_)
      throw ValidationError("element translation has the wrong rank");
  }

  VAElement mult(const VAElement& x, const VAElement& y) const {
    check(x);
    check(y);
    VAElement r;
    r.q = point_.mult(x.q, y.q);
    r.v = action_[x.q].apply(y.v);
    const Vec& c = cocycle_at(x.q, y.q);
    for (std::size_t i = 0; i < n_; ++i) r.v[i] += x.v[i] + c[i];
    return r;
  }

  VAElement inverse(const VAElement& x) const {
    check(x);
    std::size_t qi = point_.inverse(x.q);
    Vec w = action_[qi].apply(x.v);
    const Vec& c = cocycle_at(qi, x.q);
    VAElement r;
    r.q = qi;
    r.v.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) r.v[i] = -w[i] - c[i];
    return r;
  }

  VAElement pow(const VAElement& x, const Int& k) const {
    VAElement base = k < 0 ? inverse(x) : x;
    Int m = abs_int(k);
    VAElement r = identity();
    for (Int i = 0; i < m; ++i) r = mult(r, base);
    return r;
  }

  bool is_identity(const VAElement& x) const {
    if (x.q != 0) return false;
    for (const auto& c : x.v)
      if (c != 0) return false;
    return true;
  }

  // Order of x, or nullopt for infinite order.  x^s for s the point part
  // order is a pure translation; it vanishes exactly for torsion elements.
  std::optional<Int> element_order(const VAElement& x) const {
    check(x);
    std::size_t s = point_.element_order(x.q);
    VAElement y = pow(x, Int(s));
    if (is_identity(y)) return Int(s);
    return std::nullopt;
  }

  // Sum of powers N_q = I + M_q + ... + M_q^{m-1} and the translation d_q of
  // (q, 0)^m, for m the order of q.  (q, v)^m = (e, N_q v + d_q).
  std::pair<IntMatrix, Vec> power_data(std::size_t q) const {
    std::size_t m = point_.element_order(q);
    IntMatrix nq(n_, n_);
    IntMatrix p = IntMatrix::identity(n_);
    for (std::size_t i = 0; i < m; ++i) {
      nq = nq + p;
      p = p * action_[q];
    }
    VAElement acc = pow(VAElement{q, Vec(n_, Int(0))}, Int(m));
    return {nq, acc.v};
  }

  bool operator==(const VirtAbGroup& o) const {
    return point_ == o.point_ && n_ == o.n_ && action_ == o.action_ &&
           cocycle_ == o.cocycle_;
  }

private:
  FiniteGroup point_;
  std::size_t n_;
  std::vector<IntMatrix> action_;
  std::vector<Vec> cocycle_;
};

// Searches every nontrivial point part for a torsion element.  Returns the
// first witness in point group index order, with minimal solution chosen by
// the normal form solver, or nullopt when the group is torsion-free.
inline std::optional<VAElement> torsion_witness(const VirtAbGroup& g) {
  for (std::size_t q = 1; q < g.point_group().order(); ++q) {
    auto [nq, dq] = g.power_data(q);
    Vec rhs(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) rhs[i] = -dq[i];
    if (auto v = solve_linear(nq, rhs)) {
      VAElement w{q, *v};
      // The witness really has the claimed finite order.
      auto ord = g.element_order(w);
      if (!ord)
        throw ValidationError("internal: torsion witness has infinite order");
      return w;
    }
  }
  return std::nullopt;
}

inline bool is_torsion_free(const VirtAbGroup& g) {
  return !torsion_witness(g).has_value();
}

// Subgroup generated by a finite set of elements, presented as an extension
// in its own right together with the inclusion data.
struct SubgroupClosure {
  VirtAbGroup sub;
  // Point group indices of the ambient group, one per subgroup point element.
  std::vector<std::size_t> point_map;
  // Rows form a Hermite basis of the kernel lattice inside the ambient one.
  IntMatrix basis;
  // Ambient transversal element per subgroup point element (identity first).
  std::vector<VAElement> transversal;
  // The input generators in subgroup coordinates.
  std::vector<VAElement> gens_in_sub;

  // Maps a subgroup element to the ambient element it represents.
  VAElement include(const VirtAbGroup& ambient, const VAElement& x) const {
    sub.check(x);
    Vec w(ambient.rank(), Int(0));
    for (std::size_t i = 0; i < basis.rows(); ++i)
      for (std::size_t j = 0; j < ambient.rank(); ++j)
        w[j] += x.v[i] * basis(i, j);
    return ambient.mult(VAElement{0, w}, transversal[x.q]);
  }
};

inline SubgroupClosure subgroup_closure(const VirtAbGroup& g,
                                        const std::vector<VAElement>& gens) {
  for (const auto& x : gens) g.check(x);
  const FiniteGroup& point = g.point_group();
  std::size_t n = g.rank();

  // Point parts generate a subgroup of the point group; close under
  // multiplication (positive products reach inverses in a finite group).
  std::vector<bool> in_sub(point.order(), false);
  in_sub[0] = true;
  std::vector<std::size_t> queue{0};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (const auto& x : gens) {
      std::size_t p = point.mult(queue[h], x.q);
      if (!in_sub[p]) {
        in_sub[p] = true;
        queue.push_back(p);
      }
    }
  std::vector<std::size_t> point_map;
  for (std::size_t i = 0; i < point.order(); ++i)
    if (in_sub[i]) point_map.push_back(i);
  std::vector<std::size_t> back(point.order(), 0);
  for (std::size_t i = 0; i < point_map.size(); ++i) back[point_map[i]] = i;
  std::size_t qs = point_map.size();

  std::vector<std::vector<std::size_t>> table(qs,
                                              std::vector<std::size_t>(qs));
  std::vector<std::string> labels(qs);
  for (std::size_t i = 0; i < qs; ++i) {
    labels[i] = point.label(point_map[i]);
    for (std::size_t j = 0; j < qs; ++j)
      table[i][j] = back[point.mult(point_map[i], point_map[j])];
  }
  FiniteGroup sub_point(std::move(table), std::move(labels));

  // Transversal by breadth-first products of the generators, identity first.
  std::vector<std::optional<VAElement>> trans(qs);
  trans[0] = g.identity();
  std::vector<std::size_t> bfs{0};
  for (std::size_t h = 0; h < bfs.size(); ++h)
    for (const auto& x : gens) {
      VAElement t = g.mult(*trans[bfs[h]], x);
      std::size_t p = back[t.q];
      if (!trans[p]) {
        trans[p] = t;
        bfs.push_back(p);
      }
    }
  std::vector<VAElement> transversal(qs);
  for (std::size_t i = 0; i < qs; ++i) transversal[i] = *trans[i];

  // Kernel lattice from Schreier generator translations.
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < qs; ++i)
    for (const auto& x : gens) {
      VAElement ts = g.mult(transversal[i], x);
      VAElement k = g.mult(ts, g.inverse(transversal[back[ts.q]]));
      if (k.q != 0)
        throw ValidationError("internal: Schreier element is not a kernel "
                              "translation");
      bool nonzero = false;
      for (const auto& c : k.v) nonzero = nonzero || c != 0;
      if (nonzero) rows.push_back(k.v);
    }
  IntMatrix basis = hermite_rows(IntMatrix::from_rows(rows, n));

  // Saturate under the point action to a Hermite fixpoint.  Each changing
  // round must strictly enlarge the lattice (strict index decrease), which
  // bounds the loop by the ascending chain condition.
  for (;;) {
    std::vector<Vec> next;
    for (std::size_t i = 0; i < basis.rows(); ++i) next.push_back(basis.row(i));
    std::size_t before = next.size();
    for (std::size_t p = 0; p < qs; ++p)
      for (std::size_t i = 0; i < before; ++i)
        next.push_back(g.action(point_map[p]).apply(basis.row(i)));
    IntMatrix sat = hermite_rows(IntMatrix::from_rows(next, n));
    if (sat == basis) break;
    for (std::size_t i = 0; i < basis.rows(); ++i)
      if (!coords_in_rows(sat, basis.row(i)))
        throw ValidationError("internal: saturation did not enlarge the "
                              "lattice");
    basis = sat;
  }
  std::size_t m = basis.rows();

  // Coordinates of an ambient kernel vector in the basis rows.
  auto coords = [&](const Vec& w) {
    auto c = coords_in_rows(basis, w);
    if (!c)
      throw ValidationError("internal: kernel vector outside the closed "
                            "lattice");
    return *c;
  };

  // Restricted action in basis coordinates.
  std::vector<IntMatrix> sub_action;
  for (std::size_t p = 0; p < qs; ++p) {
    IntMatrix mp(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      Vec c = coords(g.action(point_map[p]).apply(basis.row(i)));
      for (std::size_t j = 0; j < m; ++j) mp(j, i) = c[j];
    }
    sub_action.push_back(mp);
  }

  CocycleMap sub_cocycle;
  for (std::size_t a = 0; a < qs; ++a)
    for (std::size_t b = 0; b < qs; ++b) {
      std::size_t ab = back[point.mult(point_map[a], point_map[b])];
      VAElement k = g.mult(g.mult(transversal[a], transversal[b]),
                           g.inverse(transversal[ab]));
      if (k.q != 0)
        throw ValidationError("internal: transversal cocycle leaves kernel");
      sub_cocycle[{a, b}] = coords(k.v);
    }

  SubgroupClosure result{
      VirtAbGroup(std::move(sub_point), m, std::move(sub_action), sub_cocycle),
      point_map, basis, transversal, {}};
  for (const auto& x : gens) {
    std::size_t p = back[x.q];
    VAElement k = g.mult(x, g.inverse(transversal[p]));
    result.gens_in_sub.push_back(VAElement{p, coords(k.v)});
  }
  return result;
}

// Produces either a nontrivial lattice element of the subgroup generated by
// the given elements, or a torsion certificate for a generator.  Looks at
// each generator gamma in turn: gamma raised to the order of its point part
// is a pure translation, nonzero unless gamma has finite order.
struct LatticeIntersection {
  bool found = false;
  VAElement witness;       // pure translation when found
  std::size_t gen_index = 0;
  Int torsion_order = 0;   // order of the offending generator otherwise
};

inline LatticeIntersection lattice_intersection_witness(
    const VirtAbGroup& g, const std::vector<VAElement>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (g.is_identity(gens[i])) continue;
    std::size_t s = g.point_group().element_order(gens[i].q);
    VAElement y = g.pow(gens[i], Int(s));
    if (!g.is_identity(y)) {
      if (y.q != 0)
        throw ValidationError("internal: power by point order kept a point "
                              "part");
      return LatticeIntersection{true, y, i, Int(0)};
    }
    // The generator's point-order power vanished, so its order is exactly
    // that point order and the torsion hypothesis fails.
    return LatticeIntersection{false, VAElement{}, i, Int(s)};
  }
  throw ValidationError("subgroup is trivial; no lattice witness exists");
}

} // namespace torsion::vab

#endif
