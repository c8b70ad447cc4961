// Embeddings of a virtually abelian group into wreath-type models.
//
// The first stage embeds G (an extension of Q by Z^n) into Q acting on the
// block lattice Z^{n|Q|}: with the section s(q) = (q, 0), the element g maps
// to (pi(g), f_g) where the block of f_g at x is the translation part of
// s(x) g s(x pi(g))^{-1}, and Q permutes blocks by right translation.  Block
// permutation here is the genuine left action (P_q f)(x) = f(xq); the
// construction verifies the homomorphism, injectivity, and projection
// properties on generators and random products and aborts on any mismatch,
// so a convention error can never produce a silently wrong embedding.
//
// The second stage composes with the inclusion of Q into the symmetric group
// on the N = n|Q| coordinates (regular representation on blocks, identity
// within each block), landing in Sigma_N acting on Z^N by coordinate
// permutation with zero cocycle.

#ifndef TORSION_WREATH_HPP
#define TORSION_WREATH_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/finite_group.hpp"
#include "torsion/int_matrix.hpp"
#include "torsion/smith.hpp"
#include "torsion/virtab.hpp"

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace torsion::vab {

struct EmbeddingReport {
  bool homomorphism = false;
  bool injective = false;
  bool triangle = false;
  std::size_t pairs_checked = 0;
  std::size_t products_checked = 0;

  bool passed() const { return homomorphism && injective && triangle; }
};

namespace detail {

// Generating set of an extension: the section over every point element plus
// the lattice unit vectors.
inline std::vector<VAElement> extension_generators(const VirtAbGroup& g) {
  std::vector<VAElement> gens;
  for (std::size_t q = 0; q < g.point_group().order(); ++q)
    gens.push_back(VAElement{q, Vec(g.rank(), Int(0))});
  for (std::size_t i = 0; i < g.rank(); ++i) {
    VAElement e = g.identity();
    e.v[i] = 1;
    gens.push_back(e);
  }
  return gens;
}

inline VAElement random_element(const VirtAbGroup& g, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> pq(0, g.point_group().order() - 1);
  std::uniform_int_distribution<int> pv(-4, 4);
  VAElement x{pq(rng), Vec(g.rank())};
  for (auto& c : x.v) c = pv(rng);
  return x;
}

} // namespace detail

class KkEmbedding {
public:
  explicit KkEmbedding(const VirtAbGroup& g) : g_(g), w_(build_wreath(g)) {
    verify();
  }

  const VirtAbGroup& source() const { return g_; }
  const VirtAbGroup& wreath() const { return w_; }
  const EmbeddingReport& report() const { return rep_; }
  std::size_t block_rank() const { return g_.rank(); }

  // Image of an element: the point part is unchanged, the block at x holds
  // the translation of s(x) g s(x pi(g))^{-1}.
  VAElement apply(const VAElement& x) const {
    g_.check(x);
    std::size_t q = g_.point_group().order();
    std::size_t n = g_.rank();
    VAElement r{x.q, Vec(q * n, Int(0))};
    for (std::size_t b = 0; b < q; ++b) {
      VAElement sb{b, Vec(n, Int(0))};
      VAElement sb2{g_.point_group().mult(b, x.q), Vec(n, Int(0))};
      VAElement k = g_.mult(g_.mult(sb, x), g_.inverse(sb2));
      if (k.q != 0)
        throw ValidationError("internal: block coefficient left the lattice");
      for (std::size_t i = 0; i < n; ++i) r.v[b * n + i] = k.v[i];
    }
    return r;
  }

private:
  static VirtAbGroup build_wreath(const VirtAbGroup& g) {
    std::size_t q = g.point_group().order();
    std::size_t n = g.rank();
    std::size_t big = q * n;
    std::vector<IntMatrix> action;
    for (std::size_t a = 0; a < q; ++a) {
      IntMatrix p(big, big);
      for (std::size_t x = 0; x < q; ++x) {
        std::size_t xa = g.point_group().mult(x, a);
        for (std::size_t i = 0; i < n; ++i) p(x * n + i, xa * n + i) = 1;
      }
      action.push_back(p);
    }
    return VirtAbGroup(g.point_group(), big, std::move(action));
  }

  void verify() {
    auto gens = detail::extension_generators(g_);
    rep_.homomorphism = true;
    rep_.triangle = true;
    for (const auto& x : gens)
      for (const auto& y : gens) {
        ++rep_.pairs_checked;
        if (!(apply(g_.mult(x, y)) == w_.mult(apply(x), apply(y))))
          rep_.homomorphism = false;
        if (apply(x).q != x.q) rep_.triangle = false;
      }
    std::mt19937 rng(0xa11ce);
    for (int t = 0; t < 200; ++t) {
      VAElement x = detail::random_element(g_, rng);
      VAElement y = detail::random_element(g_, rng);
      ++rep_.products_checked;
      if (!(apply(g_.mult(x, y)) == w_.mult(apply(x), apply(y))))
        rep_.homomorphism = false;
      if (apply(x).q != x.q || apply(g_.mult(x, y)).q != g_.mult(x, y).q)
        rep_.triangle = false;
    }
    rep_.injective = true;
    for (std::size_t a = 1; a < g_.point_group().order(); ++a)
      if (w_.is_identity(apply(VAElement{a, Vec(g_.rank(), Int(0))})))
        rep_.injective = false;
    // The lattice map v -> per-block images is injective exactly when the
    // stacked matrix has full column rank over Z.
    if (g_.rank() > 0) {
      IntMatrix stacked(w_.rank(), g_.rank());
      for (std::size_t i = 0; i < g_.rank(); ++i) {
        VAElement e = g_.identity();
        e.v[i] = 1;
        VAElement im = apply(e);
        for (std::size_t j = 0; j < w_.rank(); ++j) stacked(j, i) = im.v[j];
      }
      SmithResult s = smith_normal_form(stacked);
      for (std::size_t i = 0; i < g_.rank(); ++i)
        if (s.d(i, i) == 0) rep_.injective = false;
    }
    if (!rep_.passed())
      throw ValidationError(
          "wreath embedding verification failed (homomorphism=" +
          std::string(rep_.homomorphism ? "ok" : "BAD") +
          ", injective=" + std::string(rep_.injective ? "ok" : "BAD") +
          ", projection=" + std::string(rep_.triangle ? "ok" : "BAD") +
          "); the block action convention does not match the section "
          "formula");
  }

  VirtAbGroup g_;
  VirtAbGroup w_;
  EmbeddingReport rep_;
};

inline KkEmbedding kk_embed(const VirtAbGroup& g) { return KkEmbedding(g); }

class SigmaLatticeEmbedding {
public:
  explicit SigmaLatticeEmbedding(const VirtAbGroup& g)
      : kk_(g), target_(build_target(g)) {
    std::size_t q = g.point_group().order();
    std::size_t n = g.rank();
    for (std::size_t a = 0; a < q; ++a) {
      std::vector<std::size_t> line(n * q);
      std::size_t ai = g.point_group().inverse(a);
      for (std::size_t b = 0; b < q; ++b) {
        std::size_t dst = g.point_group().mult(b, ai);
        for (std::size_t i = 0; i < n; ++i)
          line[b * n + i] = dst * n + i + 1;
      }
      sigma_.push_back(FiniteGroup::perm_rank(line));
    }
    verify();
  }

  std::size_t letters() const { return kk_.source().rank() *
                                       kk_.source().point_group().order(); }
  const VirtAbGroup& source() const { return kk_.source(); }
  const VirtAbGroup& target() const { return target_; }
  const KkEmbedding& inner() const { return kk_; }
  const EmbeddingReport& report() const { return rep_; }

  VAElement apply(const VAElement& x) const {
    VAElement w = kk_.apply(x);
    return VAElement{sigma_[w.q], w.v};
  }

private:
  static VirtAbGroup build_target(const VirtAbGroup& g) {
    std::size_t big = g.rank() * g.point_group().order();
    if (big == 0)
      throw ValidationError("rank zero admits no symmetric lattice target");
    if (big > 6)
      throw BudgetExceeded("symmetric lattice target needs " +
                               std::to_string(big) + " letters",
                           "supported up to 6");
    FiniteGroup sym = FiniteGroup::symmetric(big);
    std::vector<IntMatrix> action;
    for (std::size_t t = 0; t < sym.order(); ++t) {
      auto line = sym.one_line(t);
      IntMatrix r(big, big);
      for (std::size_t j = 0; j < big; ++j) r(line[j] - 1, j) = 1;
      action.push_back(r);
    }
    return VirtAbGroup(std::move(sym), big, std::move(action));
  }

  void verify() {
    const VirtAbGroup& g = kk_.source();
    auto gens = detail::extension_generators(g);
    rep_.homomorphism = true;
    rep_.triangle = true;
    for (const auto& x : gens)
      for (const auto& y : gens) {
        ++rep_.pairs_checked;
        if (!(apply(g.mult(x, y)) == target_.mult(apply(x), apply(y))))
          rep_.homomorphism = false;
        if (apply(x).q != sigma_[x.q]) rep_.triangle = false;
      }
    std::mt19937 rng(0xbead5);
    for (int t = 0; t < 200; ++t) {
      VAElement x = detail::random_element(g, rng);
      VAElement y = detail::random_element(g, rng);
      ++rep_.products_checked;
      if (!(apply(g.mult(x, y)) == target_.mult(apply(x), apply(y))))
        rep_.homomorphism = false;
      if (apply(x).q != sigma_[x.q]) rep_.triangle = false;
    }
    // Point parts stay distinct (regular representation) and the lattice
    // part is the verified first stage, so injectivity reduces to these.
    rep_.injective = kk_.report().injective;
    for (std::size_t a = 0; a < sigma_.size(); ++a)
      for (std::size_t b = a + 1; b < sigma_.size(); ++b)
        if (sigma_[a] == sigma_[b]) rep_.injective = false;
    if (!rep_.passed())
      throw ValidationError(
          "symmetric lattice embedding verification failed (homomorphism=" +
          std::string(rep_.homomorphism ? "ok" : "BAD") +
          ", injective=" + std::string(rep_.injective ? "ok" : "BAD") +
          ", projection=" + std::string(rep_.triangle ? "ok" : "BAD") + ")");
  }

  KkEmbedding kk_;
  VirtAbGroup target_;
  std::vector<std::size_t> sigma_;
  EmbeddingReport rep_;
};

inline SigmaLatticeEmbedding embed_sigma_lattice(const VirtAbGroup& g) {
  return SigmaLatticeEmbedding(g);
}

} // namespace torsion::vab

#endif
