// Approximation systems: a finitely generated source mapped onto a lattice
// extension, with a compatible projection to a finite group whose kernel is
// torsion-free abelian.
//
// The source group enters only through generator labels and their images;
// every construction below uses the images' closure.  The projection sigma
// is stored structurally, by its values on the point sections (q, 0) and the
// lattice unit vectors, so sigma(q, v) = phi(v) * s_q.  Construction checks
// the three structural homomorphism conditions (commuting lattice images,
// the cocycle compatibility of sections, conjugation matching the action),
// which together are equivalent to sigma being a homomorphism.
//
// "p-torsion-free over g" scans the finitely many point parts of order p,
// intersects the sigma-fiber over g with the affine torsion condition of the
// extension, and decides solvability by Smith normal form.  Fiber products
// pair two systems over their shared finite quotient and close the paired
// generator images; iterating them over a covering family of (p, g) pairs
// produces a torsion-free target, and the builder certifies that outcome.

#ifndef TORSION_APPROX_HPP
#define TORSION_APPROX_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/finite_group.hpp"
#include "torsion/int_matrix.hpp"
#include "torsion/prof_ab.hpp"
#include "torsion/smith.hpp"
#include "torsion/virtab.hpp"
#include "torsion/wreath.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace torsion::vab {

// Projection to a finite group, determined by the images of the point
// sections and of the lattice unit vectors.
struct SigmaMap {
  std::vector<std::size_t> point_images;
  std::vector<std::size_t> lattice_images;

  std::size_t apply(const FiniteGroup& g, const VAElement& x) const {
    std::size_t acc = 0;
    for (std::size_t i = 0; i < lattice_images.size(); ++i) {
      std::size_t li = lattice_images[i];
      Int m(g.element_order(li));
      std::size_t e = fmod_int(x.v[i], m).convert_to<std::size_t>();
      acc = g.mult(acc, g.pow(li, e));
    }
    return g.mult(acc, point_images[x.q]);
  }
};

struct ApproxSystem {
  std::vector<std::string> source_gens;
  VirtAbGroup ghat;
  std::map<std::string, VAElement> images;
  FiniteGroup G;
  SigmaMap sigma;

  std::vector<VAElement> image_list() const {
    std::vector<VAElement> out;
    for (const auto& l : source_gens) out.push_back(images.at(l));
    return out;
  }
};

namespace detail {

// The structural conditions making sigma(q, v) = phi(v) * s_q a
// homomorphism: phi lands in an abelian subgroup, sections compose through
// the cocycle, and conjugation by a section matches the lattice action.
inline void check_sigma(const VirtAbGroup& ghat, const FiniteGroup& g,
                        const SigmaMap& s) {
  std::size_t q = ghat.point_group().order();
  std::size_t n = ghat.rank();
  if (s.point_images.size() != q || s.lattice_images.size() != n)
    throw ValidationError("sigma data does not match the extension shape");
  for (std::size_t i : s.point_images)
    if (i >= g.order())
      throw ValidationError("sigma point image out of range");
  for (std::size_t i : s.lattice_images)
    if (i >= g.order())
      throw ValidationError("sigma lattice image out of range");
  if (s.point_images[0] != 0)
    throw ValidationError("sigma is not a homomorphism: identity section "
                          "has a nontrivial image");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.mult(s.lattice_images[i], s.lattice_images[j]) !=
          g.mult(s.lattice_images[j], s.lattice_images[i]))
        throw ValidationError("sigma is not a homomorphism: lattice images "
                              "do not commute");
  auto phi = [&](const Vec& v) {
    VAElement x{0, v};
    return s.apply(g, x);
  };
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      std::size_t lhs = g.mult(s.point_images[a], s.point_images[b]);
      std::size_t rhs = g.mult(phi(ghat.cocycle_at(a, b)),
                               s.point_images[ghat.point_group().mult(a, b)]);
      if (lhs != rhs)
        throw ValidationError(
            "sigma is not a homomorphism at the section pair ('" +
            ghat.point_group().label(a) + "', '" +
            ghat.point_group().label(b) + "')");
    }
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      Vec ei(n, Int(0));
      ei[i] = 1;
      std::size_t lhs = g.mult(
          g.mult(s.point_images[a], s.lattice_images[i]),
          g.inverse(s.point_images[a]));
      if (lhs != phi(ghat.action(a).apply(ei)))
        throw ValidationError(
            "sigma is not a homomorphism: conjugation by section '" +
            ghat.point_group().label(a) +
            "' does not match the lattice action");
    }
}

// Preimage data for phi restricted to the lattice: a representative vector
// per reachable finite-group element and a Hermite basis of ker(phi).
struct PhiFibers {
  std::vector<std::optional<Vec>> rep;
  IntMatrix kernel; // rows

  bool reaches(std::size_t h) const { return rep[h].has_value(); }
};

inline PhiFibers phi_fibers(const FiniteGroup& g, const SigmaMap& s,
                            std::size_t n) {
  PhiFibers f;
  f.rep.assign(g.order(), std::nullopt);
  f.rep[0] = Vec(n, Int(0));
  std::vector<std::size_t> queue{0};
  std::vector<Vec> krows;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    std::size_t a = queue[h];
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t b = g.mult(a, s.lattice_images[i]);
      Vec cand = *f.rep[a];
      cand[i] += 1;
      if (!f.rep[b]) {
        f.rep[b] = cand;
        queue.push_back(b);
      } else {
        Vec rel(n);
        for (std::size_t j = 0; j < n; ++j) rel[j] = cand[j] - (*f.rep[b])[j];
        krows.push_back(rel);
      }
    }
  }
  f.kernel = hermite_rows(IntMatrix::from_rows(krows, n));
  if (f.kernel.rows() != n)
    throw ValidationError("internal: lattice image kernel is not full rank");
  return f;
}

} // namespace detail

inline ApproxSystem make_approx_system(std::vector<std::string> source_gens,
                                       VirtAbGroup ghat,
                                       std::map<std::string, VAElement> images,
                                       FiniteGroup g, SigmaMap sigma,
                                       std::uint64_t seed = 0x516a) {
  for (const auto& l : source_gens)
    if (!images.count(l))
      throw ValidationError("generator '" + l + "' has no image");
  if (images.size() != source_gens.size())
    throw ValidationError("images listed for unknown generators");
  for (const auto& [l, x] : images) ghat.check(x);

  detail::check_sigma(ghat, g, sigma);

  ApproxSystem sys{std::move(source_gens), std::move(ghat), std::move(images),
                   std::move(g), std::move(sigma)};

  // Spot-check the homomorphism on random products on top of the structural
  // proof above.
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  for (int t = 0; t < 100; ++t) {
    VAElement x = detail::random_element(sys.ghat, rng);
    VAElement y = detail::random_element(sys.ghat, rng);
    if (sys.sigma.apply(sys.G, sys.ghat.mult(x, y)) !=
        sys.G.mult(sys.sigma.apply(sys.G, x), sys.sigma.apply(sys.G, y)))
      throw ValidationError("sigma is not a homomorphism on a sampled "
                            "product");
  }

  // Images must generate the whole target extension.
  auto cl = subgroup_closure(sys.ghat, sys.image_list());
  if (cl.sub.point_group().order() != sys.ghat.point_group().order() ||
      !(cl.basis == IntMatrix::identity(sys.ghat.rank())))
    throw ValidationError("images do not generate the target extension");

  // The composite to the finite quotient must be surjective.
  {
    std::vector<bool> seen(sys.G.order(), false);
    seen[0] = true;
    std::vector<std::size_t> queue{0};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (const auto& x : sys.image_list()) {
        std::size_t b = sys.G.mult(queue[h], sys.sigma.apply(sys.G, x));
        if (!seen[b]) {
          seen[b] = true;
          queue.push_back(b);
        }
      }
    for (bool b : seen)
      if (!b)
        throw ValidationError("images do not cover the finite quotient");
  }

  // Kernel of sigma: Schreier generators over a transversal indexed by the
  // finite quotient, closed and checked torsion-free and abelian.
  {
    auto gens = detail::extension_generators(sys.ghat);
    std::vector<std::optional<VAElement>> trans(sys.G.order());
    trans[0] = sys.ghat.identity();
    std::vector<std::size_t> queue{0};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (const auto& s : gens) {
        VAElement u = sys.ghat.mult(*trans[queue[h]], s);
        std::size_t b = sys.sigma.apply(sys.G, u);
        if (!trans[b]) {
          trans[b] = u;
          queue.push_back(b);
        }
      }
    std::vector<VAElement> kernel_gens;
    for (std::size_t h = 0; h < sys.G.order(); ++h)
      for (const auto& s : gens) {
        VAElement u = sys.ghat.mult(*trans[h], s);
        VAElement k = sys.ghat.mult(
            u, sys.ghat.inverse(*trans[sys.sigma.apply(sys.G, u)]));
        if (!sys.ghat.is_identity(k)) kernel_gens.push_back(k);
      }
    for (std::size_t i = 0; i < kernel_gens.size(); ++i)
      for (std::size_t j = i + 1; j < kernel_gens.size(); ++j)
        if (!(sys.ghat.mult(kernel_gens[i], kernel_gens[j]) ==
              sys.ghat.mult(kernel_gens[j], kernel_gens[i])))
          throw ValidationError("the kernel of sigma is not abelian");
    auto kcl = subgroup_closure(sys.ghat, kernel_gens);
    if (!is_torsion_free(kcl.sub))
      throw ValidationError("the kernel of sigma has torsion");
  }

  return sys;
}

struct PTorsionCheck {
  bool torsion_free = false;
  std::optional<VAElement> witness;
};

// Decides whether the sigma-fiber over g contains an element of order p.
// Scans point parts of order p; on each, the fiber condition restricts the
// translation to an affine coset of ker(phi), and the torsion condition is
// an integer linear system on that coset.
inline PTorsionCheck p_torsion_check(const ApproxSystem& sys, const Int& p,
                                     std::size_t g) {
  if (!ab::is_prime(p))
    throw ValidationError(to_string(p) + " is not prime");
  if (g >= sys.G.order())
    throw ValidationError("finite quotient element out of range");
  if (Int(sys.G.element_order(g)) != p)
    throw ValidationError("element '" + sys.G.label(g) +
                          "' does not have order " + to_string(p));
  std::size_t n = sys.ghat.rank();
  detail::PhiFibers fib = detail::phi_fibers(sys.G, sys.sigma, n);
  IntMatrix bt = fib.kernel.transpose();
  for (std::size_t q = 0; q < sys.ghat.point_group().order(); ++q) {
    if (Int(sys.ghat.point_group().element_order(q)) != p) continue;
    std::size_t h = sys.G.mult(g, sys.G.inverse(sys.sigma.point_images[q]));
    if (!fib.reaches(h)) continue;
    Vec v0 = *fib.rep[h];
    auto [nq, dq] = sys.ghat.power_data(q);
    IntMatrix m = nq * bt;
    Vec nv0 = nq.apply(v0);
    Vec rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -dq[i] - nv0[i];
    if (auto t = solve_linear(m, rhs)) {
      Vec v = v0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < fib.kernel.rows(); ++j)
          v[i] += (*t)[j] * fib.kernel(j, i);
      VAElement w{q, v};
      if (sys.sigma.apply(sys.G, w) != g ||
          sys.ghat.element_order(w) != std::optional<Int>(p))
        throw ValidationError("internal: fiber torsion witness failed "
                              "reverification");
      return PTorsionCheck{false, w};
    }
  }
  return PTorsionCheck{true, std::nullopt};
}

inline bool is_p_torsion_free_over(const ApproxSystem& sys, const Int& p,
                                   std::size_t g) {
  return p_torsion_check(sys, p, g).torsion_free;
}

// Pairs two systems over their shared source and finite quotient: the target
// is the closure of the paired generator images inside the product
// extension, and the projection restricts from either factor (equality on
// the closure is asserted).
inline ApproxSystem fiber_product(const ApproxSystem& s1,
                                  const ApproxSystem& s2) {
  if (s1.source_gens != s2.source_gens)
    throw ValidationError("fiber product requires matching source "
                          "generators");
  if (!(s1.G == s2.G))
    throw ValidationError("fiber product requires a shared finite quotient");
  for (const auto& l : s1.source_gens)
    if (s1.sigma.apply(s1.G, s1.images.at(l)) !=
        s2.sigma.apply(s2.G, s2.images.at(l)))
      throw ValidationError("incompatible projections at generator '" + l +
                            "'");

  const FiniteGroup& q1 = s1.ghat.point_group();
  const FiniteGroup& q2 = s2.ghat.point_group();
  std::size_t n1 = s1.ghat.rank(), n2 = s2.ghat.rank();
  FiniteGroup qp = FiniteGroup::direct_product(q1, q2);
  std::vector<IntMatrix> action;
  for (std::size_t a = 0; a < q1.order(); ++a)
    for (std::size_t b = 0; b < q2.order(); ++b) {
      IntMatrix m(n1 + n2, n1 + n2);
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) m(i, j) = s1.ghat.action(a)(i, j);
      for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          m(n1 + i, n1 + j) = s2.ghat.action(b)(i, j);
      action.push_back(m);
    }
  CocycleMap coc;
  for (std::size_t a1 = 0; a1 < q1.order(); ++a1)
    for (std::size_t a2 = 0; a2 < q2.order(); ++a2)
      for (std::size_t b1 = 0; b1 < q1.order(); ++b1)
        for (std::size_t b2 = 0; b2 < q2.order(); ++b2) {
          Vec v(n1 + n2);
          const Vec& c1 = s1.ghat.cocycle_at(a1, b1);
          const Vec& c2 = s2.ghat.cocycle_at(a2, b2);
          for (std::size_t i = 0; i < n1; ++i) v[i] = c1[i];
          for (std::size_t i = 0; i < n2; ++i) v[n1 + i] = c2[i];
          coc[{a1 * q2.order() + a2, b1 * q2.order() + b2}] = v;
        }
  VirtAbGroup prod(qp, n1 + n2, std::move(action), coc);

  // Projections of the product through either factor.
  SigmaMap sp1, sp2;
  for (std::size_t a = 0; a < q1.order(); ++a)
    for (std::size_t b = 0; b < q2.order(); ++b) {
      sp1.point_images.push_back(s1.sigma.point_images[a]);
      sp2.point_images.push_back(s2.sigma.point_images[b]);
    }
  for (std::size_t i = 0; i < n1; ++i) {
    sp1.lattice_images.push_back(s1.sigma.lattice_images[i]);
    sp2.lattice_images.push_back(0);
  }
  for (std::size_t i = 0; i < n2; ++i) {
    sp1.lattice_images.push_back(0);
    sp2.lattice_images.push_back(s2.sigma.lattice_images[i]);
  }

  std::vector<VAElement> paired;
  for (const auto& l : s1.source_gens) {
    const VAElement& x1 = s1.images.at(l);
    const VAElement& x2 = s2.images.at(l);
    VAElement x{x1.q * q2.order() + x2.q, Vec(n1 + n2)};
    for (std::size_t i = 0; i < n1; ++i) x.v[i] = x1.v[i];
    for (std::size_t i = 0; i < n2; ++i) x.v[n1 + i] = x2.v[i];
    paired.push_back(x);
  }
  auto cl = subgroup_closure(prod, paired);

  SigmaMap ss;
  for (std::size_t a = 0; a < cl.sub.point_group().order(); ++a)
    ss.point_images.push_back(sp1.apply(s1.G, cl.transversal[a]));
  for (std::size_t i = 0; i < cl.basis.rows(); ++i)
    ss.lattice_images.push_back(
        sp1.apply(s1.G, VAElement{0, cl.basis.row(i)}));

  // Both factor projections agree on the closure, on generators and random
  // products.
  std::mt19937 rng(0xf1be);
  std::vector<VAElement> probes = cl.gens_in_sub;
  for (int t = 0; t < 100; ++t)
    probes.push_back(detail::random_element(cl.sub, rng));
  for (const auto& x : probes) {
    VAElement amb = cl.include(prod, x);
    std::size_t h1 = sp1.apply(s1.G, amb);
    std::size_t h2 = sp2.apply(s2.G, amb);
    std::size_t hs = ss.apply(s1.G, x);
    if (h1 != h2 || h1 != hs)
      throw ValidationError("internal: fiber projections disagree on the "
                            "closure");
  }

  std::map<std::string, VAElement> images;
  for (std::size_t i = 0; i < s1.source_gens.size(); ++i)
    images[s1.source_gens[i]] = cl.gens_in_sub[i];
  return make_approx_system(s1.source_gens, cl.sub, std::move(images), s1.G,
                            std::move(ss));
}

struct PairCheck {
  Int p;
  std::size_t g = 0;
  std::vector<std::size_t> covered_by;
  bool final_ok = false;
};

struct QuotientReport {
  std::vector<std::size_t> fold_order;
  std::vector<PairCheck> pairs;
  bool certified_torsion_free = false;
};

struct QuotientResult {
  ApproxSystem system;
  QuotientReport report;
};

// Folds the systems into one whose target is certified torsion-free.  The
// pair list must enumerate every (p, g) with g of prime order p in the
// finite quotient, and each pair must be covered by at least one input
// system; both preconditions are checked, not assumed.
inline QuotientResult build_torsion_free_quotient(
    const std::vector<ApproxSystem>& systems,
    const std::vector<std::pair<Int, std::size_t>>& pairs) {
  if (systems.empty())
    throw UsageError("at least one approximation system is required");
  const FiniteGroup& g = systems[0].G;
  for (const auto& s : systems) {
    if (!(s.G == g))
      throw ValidationError("systems disagree on the finite quotient");
    if (s.source_gens != systems[0].source_gens)
      throw ValidationError("systems disagree on the source generators");
  }
  for (std::size_t x = 1; x < g.order(); ++x) {
    Int m(g.element_order(x));
    if (!ab::is_prime(m)) continue;
    bool listed = false;
    for (const auto& [p, y] : pairs) listed = listed || (p == m && y == x);
    if (!listed)
      throw ValidationError("pair list misses (p=" + to_string(m) + ", g='" +
                            g.label(x) + "')");
  }

  QuotientReport report;
  for (const auto& [p, x] : pairs) {
    PairCheck pc;
    pc.p = p;
    pc.g = x;
    for (std::size_t i = 0; i < systems.size(); ++i)
      if (is_p_torsion_free_over(systems[i], p, x)) pc.covered_by.push_back(i);
    if (pc.covered_by.empty())
      throw ValidationError("no supplied system is " + to_string(p) +
                            "-torsion-free over '" + g.label(x) + "'");
    report.pairs.push_back(std::move(pc));
  }

  ApproxSystem acc = systems[0];
  report.fold_order.push_back(0);
  for (std::size_t i = 1; i < systems.size(); ++i) {
    acc = fiber_product(acc, systems[i]);
    report.fold_order.push_back(i);
  }

  for (auto& pc : report.pairs) {
    pc.final_ok = is_p_torsion_free_over(acc, pc.p, pc.g);
    if (!pc.final_ok)
      throw ValidationError("internal: fiber product lost " +
                            to_string(pc.p) + "-torsion-freeness over '" +
                            g.label(pc.g) + "'");
  }
  report.certified_torsion_free = is_torsion_free(acc.ghat);
  if (!report.certified_torsion_free)
    throw ValidationError("internal: folded target retains torsion despite "
                          "covered pairs");
  return QuotientResult{std::move(acc), std::move(report)};
}

} // namespace torsion::vab

#endif
