// Finite groups, lattice extensions, torsion detection, subgroup closures,
// and the wreath-type embeddings.  Torsion verdicts are cross-checked against
// exhaustive element-order search over a coordinate box, and embeddings
// against hand-expanded section formulas.

#include <catch2/catch_amalgamated.hpp>

#include "torsion/finite_group.hpp"
#include "torsion/virtab.hpp"
#include "torsion/wreath.hpp"

#include <optional>
#include <random>
#include <vector>

using torsion::BudgetExceeded;
using torsion::Int;
using torsion::IntMatrix;
using torsion::ValidationError;
using torsion::Vec;
namespace vab = torsion::vab;
using vab::FiniteGroup;
using vab::VAElement;
using vab::VirtAbGroup;

namespace {

// Klein bottle: Z/2 acts by diag(1,-1), cocycle (1,0) at the nontrivial pair.
VirtAbGroup klein_model() {
  vab::CocycleMap c;
  c[{1, 1}] = Vec{1, 0};
  return VirtAbGroup(FiniteGroup::cyclic(2), 2,
                     {IntMatrix::identity(2), IntMatrix{{1, 0}, {0, -1}}}, c);
}

// Infinite dihedral: Z/2 acts by -1 on Z, zero cocycle.
VirtAbGroup dihedral_model() {
  return VirtAbGroup(FiniteGroup::cyclic(2), 1,
                     {IntMatrix::identity(1), IntMatrix{{-1}}});
}

VirtAbGroup torus_model(std::size_t n) {
  return VirtAbGroup(FiniteGroup::trivial(), n, {IntMatrix::identity(n)});
}

// Z/2 acting on Z^2 by coordinate swap, zero cocycle.
VirtAbGroup swap_model() {
  return VirtAbGroup(FiniteGroup::cyclic(2), 2,
                     {IntMatrix::identity(2), IntMatrix{{0, 1}, {1, 0}}});
}

// Klein bottle action with the cocycle dropped: acquires torsion.
VirtAbGroup degenerate_klein_model() {
  return VirtAbGroup(FiniteGroup::cyclic(2), 2,
                     {IntMatrix::identity(2), IntMatrix{{1, 0}, {0, -1}}});
}

// Z/2 acting by -I on Z^2, zero cocycle.
VirtAbGroup neg_model() {
  return VirtAbGroup(FiniteGroup::cyclic(2), 2,
                     {IntMatrix::identity(2), IntMatrix{{-1, 0}, {0, -1}}});
}

std::vector<VirtAbGroup> corpus() {
  return {klein_model(),  dihedral_model(),      torus_model(2),
          torus_model(3), swap_model(),          degenerate_klein_model(),
          neg_model()};
}

// Exhaustive torsion search over the coordinate box |v_i| <= bound.
std::optional<VAElement> box_torsion_search(const VirtAbGroup& g, int bound) {
  std::size_t n = g.rank();
  std::vector<int> v(n, -bound);
  for (std::size_t q = 0; q < g.point_group().order(); ++q) {
    std::fill(v.begin(), v.end(), -bound);
    for (;;) {
      VAElement x{q, Vec(n)};
      for (std::size_t i = 0; i < n; ++i) x.v[i] = v[i];
      if (!g.is_identity(x) && g.element_order(x).has_value()) return x;
      std::size_t i = 0;
      while (i < n && v[i] == bound) v[i++] = -bound;
      if (i == n) break;
      ++v[i];
    }
    if (n == 0) {
      VAElement x{q, Vec{}};
      if (!g.is_identity(x) && g.element_order(x).has_value()) return x;
    }
  }
  return std::nullopt;
}

VAElement elt(std::size_t q, Vec v) { return VAElement{q, std::move(v)}; }

} // namespace

TEST_CASE("finite group validation and helpers") {
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  CHECK(z4.order() == 4);
  CHECK(z4.mult(3, 2) == 1);
  CHECK(z4.inverse(1) == 3);
  CHECK(z4.element_order(1) == 4);
  CHECK(z4.element_order(2) == 2);
  CHECK(z4.element_order(0) == 1);
  CHECK(z4.label(2) == "2");

  FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK(s3.label(0) == "123");
  // (pi rho)(i) = pi(rho(i)) with pi = 213, rho = 231 gives 132.
  std::size_t pi = s3.index_of_label("213");
  std::size_t rho = s3.index_of_label("231");
  CHECK(s3.label(s3.mult(pi, rho)) == "132");
  CHECK(s3.element_order(rho) == 3);
  CHECK(s3.element_order(pi) == 2);

  FiniteGroup s4 = FiniteGroup::symmetric(4);
  for (std::size_t i = 0; i < s4.order(); ++i)
    CHECK(FiniteGroup::perm_rank(s4.one_line(i)) == i);

  FiniteGroup z6 = FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                               FiniteGroup::cyclic(3));
  CHECK(z6.order() == 6);
  CHECK(z6.element_order(z6.index_of_label("(1,1)")) == 6);
  CHECK(z6.label(0) == "(0,0)");

  // Identity must sit at index 0.
  CHECK_THROWS_AS(FiniteGroup({{1, 0}, {0, 1}}, {"a", "b"}), ValidationError);
  // Latin square violation.
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}, {"e", "a"}), ValidationError);
  // Non-associative Latin square (order 5 quasigroup with identity).
  CHECK_THROWS_AS(FiniteGroup({{0, 1, 2, 3, 4},
                               {1, 0, 3, 4, 2},
                               {2, 4, 0, 1, 3},
                               {3, 2, 4, 0, 1},
                               {4, 3, 1, 2, 0}},
                              {"e", "a", "b", "c", "d"}),
                  ValidationError);
  CHECK_THROWS_AS(FiniteGroup({{0}}, {"has space"}), ValidationError);
}

TEST_CASE("extension construction validates action and cocycle") {
  // Non-unimodular action.
  CHECK_THROWS_AS(VirtAbGroup(FiniteGroup::cyclic(2), 1,
                              {IntMatrix::identity(1), IntMatrix{{2}}}),
                  ValidationError);
  // Action that is not a homomorphism: the matrix has order 4, not 2.
  CHECK_THROWS_AS(VirtAbGroup(FiniteGroup::cyclic(2), 2,
                              {IntMatrix::identity(2),
                               IntMatrix{{0, 1}, {-1, 0}}},
                              vab::CocycleMap{}),
                  ValidationError);
  // Cocycle identity failure: swap action with an asymmetric junk cocycle.
  {
    vab::CocycleMap c;
    c[{1, 0}] = Vec{1, 0};
    c[{1, 1}] = Vec{0, 0};
    CHECK_THROWS_AS(
        VirtAbGroup(FiniteGroup::cyclic(2), 2,
                    {IntMatrix::identity(2), IntMatrix{{0, 1}, {1, 0}}}, c),
        ValidationError);
  }
  // Wrong-rank cocycle value.
  {
    vab::CocycleMap c;
    c[{1, 1}] = Vec{1};
    CHECK_THROWS_AS(VirtAbGroup(FiniteGroup::cyclic(2), 2,
                                {IntMatrix::identity(2),
                                 IntMatrix{{1, 0}, {0, -1}}},
                                c),
                    ValidationError);
  }
}

TEST_CASE("cocycle normalization shifts to the canonical representative") {
  // Shift the Klein cocycle by the coboundary of s = (1,0): the ingested
  // group must equal the normalized one entry for entry.
  vab::CocycleMap c;
  c[{0, 0}] = Vec{1, 0};
  c[{0, 1}] = Vec{1, 0};
  c[{1, 0}] = Vec{1, 0};
  c[{1, 1}] = Vec{2, 0};
  VirtAbGroup shifted(FiniteGroup::cyclic(2), 2,
                      {IntMatrix::identity(2), IntMatrix{{1, 0}, {0, -1}}}, c);
  CHECK(shifted == klein_model());
  CHECK(shifted.cocycle_at(1, 1) == Vec{1, 0});
  CHECK(shifted.cocycle_at(0, 1) == Vec{0, 0});
}

TEST_CASE("multiplication law basics") {
  VirtAbGroup k = klein_model();
  // (g, 0)^2 = (e, c(g,g)).
  VAElement g0 = elt(1, Vec{0, 0});
  CHECK(k.mult(g0, g0) == elt(0, Vec{1, 0}));
  // Inverse really inverts.
  VAElement x = elt(1, Vec{3, -2});
  CHECK(k.is_identity(k.mult(x, k.inverse(x))));
  CHECK(k.is_identity(k.mult(k.inverse(x), x)));
  CHECK(k.pow(x, Int(-2)) == k.inverse(k.mult(x, x)));
  // Identity element.
  CHECK(k.is_identity(k.identity()));
  CHECK(k.mult(k.identity(), x) == x);

  // Associativity holds on random triples for every corpus group.
  std::mt19937 rng(7);
  for (const auto& g : corpus()) {
    for (int t = 0; t < 100; ++t) {
      VAElement a = vab::detail::random_element(g, rng);
      VAElement b = vab::detail::random_element(g, rng);
      VAElement c2 = vab::detail::random_element(g, rng);
      CHECK(g.mult(g.mult(a, b), c2) == g.mult(a, g.mult(b, c2)));
    }
  }
}

TEST_CASE("element orders") {
  VirtAbGroup k = klein_model();
  CHECK(k.element_order(k.identity()) == Int(1));
  // Every element over the flip has infinite order in the Klein bottle.
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      CHECK_FALSE(k.element_order(elt(1, Vec{a, b})).has_value());
  CHECK_FALSE(k.element_order(elt(0, Vec{0, 1})).has_value());

  VirtAbGroup d = dihedral_model();
  for (int a = -3; a <= 3; ++a)
    CHECK(d.element_order(elt(1, Vec{a})) == Int(2));
  CHECK_FALSE(d.element_order(elt(0, Vec{1})).has_value());
}

TEST_CASE("torsion detection with witnesses") {
  CHECK(vab::is_torsion_free(klein_model()));
  CHECK(vab::is_torsion_free(torus_model(2)));
  CHECK(vab::is_torsion_free(torus_model(3)));

  auto w = vab::torsion_witness(dihedral_model());
  REQUIRE(w.has_value());
  CHECK(*w == elt(1, Vec{0}));
  CHECK(dihedral_model().element_order(*w) == Int(2));

  auto wd = vab::torsion_witness(degenerate_klein_model());
  REQUIRE(wd.has_value());
  CHECK(degenerate_klein_model().element_order(*wd).has_value());

  auto ws = vab::torsion_witness(swap_model());
  REQUIRE(ws.has_value());
  CHECK(swap_model().element_order(*ws) == Int(2));

  auto wn = vab::torsion_witness(neg_model());
  REQUIRE(wn.has_value());
  CHECK(*wn == elt(1, Vec{0, 0}));
}

TEST_CASE("torsion verdict agrees with exhaustive box search") {
  for (const auto& g : corpus()) {
    auto found = box_torsion_search(g, 3);
    CHECK(vab::is_torsion_free(g) == !found.has_value());
    if (found) CHECK(g.element_order(*found).has_value());
  }
}

TEST_CASE("subgroup closure of a lattice line") {
  VirtAbGroup g = neg_model();
  auto cl = vab::subgroup_closure(g, {elt(0, Vec{1, 0})});
  CHECK(cl.sub.point_group().order() == 1);
  CHECK(cl.sub.rank() == 1);
  REQUIRE(cl.basis.rows() == 1);
  CHECK(cl.basis.row(0) == Vec{1, 0});
  CHECK(cl.point_map == std::vector<std::size_t>{0});
  // Inclusion maps the sub generator back to the ambient element.
  CHECK(cl.include(g, cl.gens_in_sub[0]) == elt(0, Vec{1, 0}));
}

TEST_CASE("subgroup closure of the empty set is trivial") {
  auto cl = vab::subgroup_closure(klein_model(), {});
  CHECK(cl.sub.point_group().order() == 1);
  CHECK(cl.sub.rank() == 0);
  CHECK(cl.basis.rows() == 0);
}

TEST_CASE("subgroup closure recovering the whole group") {
  VirtAbGroup k = klein_model();
  auto cl = vab::subgroup_closure(k, {elt(1, Vec{0, 0}), elt(0, Vec{0, 1})});
  // The generators produce the whole extension, so the closure is the same
  // group again in the standard basis.
  CHECK(cl.sub == k);
  CHECK(cl.basis == IntMatrix::identity(2));

  // Inclusion is a homomorphism on random pairs.
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    VAElement a = vab::detail::random_element(cl.sub, rng);
    VAElement b = vab::detail::random_element(cl.sub, rng);
    CHECK(cl.include(k, cl.sub.mult(a, b)) ==
          k.mult(cl.include(k, a), cl.include(k, b)));
  }
}

TEST_CASE("subgroup closure with cocycle rewriting") {
  // <(swap, (1,0))> inside the swap extension is infinite cyclic: the closure
  // presents it over Z/2 with lattice Z(1,1) and a nonzero cocycle.
  VirtAbGroup g = swap_model();
  auto cl = vab::subgroup_closure(g, {elt(1, Vec{1, 0})});
  CHECK(cl.sub.point_group().order() == 2);
  CHECK(cl.sub.rank() == 1);
  REQUIRE(cl.basis.rows() == 1);
  CHECK(cl.basis.row(0) == Vec{1, 1});
  CHECK(cl.sub.cocycle_at(1, 1) == Vec{1});
  CHECK(vab::is_torsion_free(cl.sub));

  // Inclusion roundtrip for the generator.
  CHECK(cl.include(g, cl.gens_in_sub[0]) == elt(1, Vec{1, 0}));

  // By contrast the full swap extension has torsion.
  CHECK_FALSE(vab::is_torsion_free(g));
}

TEST_CASE("subgroup closure is idempotent") {
  VirtAbGroup g = swap_model();
  std::vector<std::vector<VAElement>> gen_sets = {
      {elt(1, Vec{1, 0})},
      {elt(1, Vec{0, 0}), elt(0, Vec{2, 0})},
      {elt(0, Vec{1, 0}), elt(0, Vec{0, 3})},
  };
  for (const auto& gens : gen_sets) {
    auto cl = vab::subgroup_closure(g, gens);
    auto again = vab::subgroup_closure(cl.sub, cl.gens_in_sub);
    CHECK(again.sub.point_group().order() == cl.sub.point_group().order());
    CHECK(again.basis == IntMatrix::identity(cl.sub.rank()));
    CHECK(again.sub.rank() == cl.sub.rank());
  }
}

TEST_CASE("lattice intersection witness") {
  // Sigma_2 acting on Z^2: squaring (swap, (1,0)) lands in the lattice.
  VirtAbGroup g = swap_model();
  auto r1 = vab::lattice_intersection_witness(g, {elt(1, Vec{1, 0})});
  CHECK(r1.found);
  CHECK(r1.witness == elt(0, Vec{1, 1}));
  CHECK(r1.gen_index == 0);

  auto r2 = vab::lattice_intersection_witness(g, {elt(1, Vec{0, 0})});
  CHECK_FALSE(r2.found);
  CHECK(r2.torsion_order == Int(2));

  auto r3 = vab::lattice_intersection_witness(g, {elt(0, Vec{0, 5})});
  CHECK(r3.found);
  CHECK(r3.witness == elt(0, Vec{0, 5}));

  CHECK_THROWS_AS(vab::lattice_intersection_witness(g, {g.identity()}),
                  ValidationError);
  CHECK_THROWS_AS(vab::lattice_intersection_witness(g, {}), ValidationError);
}

TEST_CASE("wreath embedding of the Klein bottle") {
  VirtAbGroup k = klein_model();
  vab::KkEmbedding emb(k);
  CHECK(emb.wreath().rank() == 4);
  CHECK(emb.report().passed());
  CHECK(emb.report().pairs_checked >= 16);

  // Hand-expanded section formula: lattice elements double up with a sign,
  // flip elements pick up the cocycle in the far block.
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      CHECK(emb.apply(elt(0, Vec{a, b})) == elt(0, Vec{a, b, a, -b}));
      CHECK(emb.apply(elt(1, Vec{a, b})) == elt(1, Vec{a, b, a + 1, -b}));
    }

  // Torsion-freeness transfers to the closed image.
  auto gens = vab::detail::extension_generators(k);
  std::vector<VAElement> image;
  for (const auto& x : gens) image.push_back(emb.apply(x));
  auto cl = vab::subgroup_closure(emb.wreath(), image);
  CHECK(vab::is_torsion_free(cl.sub));
}

TEST_CASE("wreath embedding of the infinite dihedral model") {
  VirtAbGroup d = dihedral_model();
  vab::KkEmbedding emb(d);
  CHECK(emb.wreath().rank() == 2);
  CHECK(emb.report().passed());
  CHECK(emb.apply(elt(1, Vec{0})) == elt(1, Vec{0, 0}));
  CHECK(emb.apply(elt(0, Vec{1})) == elt(0, Vec{1, -1}));

  // The image keeps its torsion: (flip, 0) maps to an order-2 element.
  CHECK(emb.wreath().element_order(emb.apply(elt(1, Vec{0}))) == Int(2));
  auto cl = vab::subgroup_closure(
      emb.wreath(), {emb.apply(elt(1, Vec{0})), emb.apply(elt(0, Vec{1}))});
  CHECK_FALSE(vab::is_torsion_free(cl.sub));
}

TEST_CASE("wreath embedding of a torus is identity-like") {
  VirtAbGroup t = torus_model(3);
  vab::KkEmbedding emb(t);
  CHECK(emb.wreath().rank() == 3);
  CHECK(emb.report().passed());
  CHECK(emb.apply(elt(0, Vec{4, -1, 2})) == elt(0, Vec{4, -1, 2}));
}

TEST_CASE("symmetric lattice embedding") {
  VirtAbGroup k = klein_model();
  vab::SigmaLatticeEmbedding emb(k);
  CHECK(emb.letters() == 4);
  CHECK(emb.target().point_group().order() == 24);
  CHECK(emb.report().passed());
  // The flip exchanges the two blocks of coordinates.
  CHECK(emb.target().point_group().label(emb.apply(elt(1, Vec{0, 0})).q) ==
        "3412");
  CHECK(emb.apply(elt(0, Vec{1, 2})) == elt(0, Vec{1, 2, 1, -2}));

  VirtAbGroup d = dihedral_model();
  vab::SigmaLatticeEmbedding embd(d);
  CHECK(embd.letters() == 2);
  CHECK(embd.target().point_group().label(embd.apply(elt(1, Vec{0})).q) ==
        "21");

  VirtAbGroup t = torus_model(3);
  vab::SigmaLatticeEmbedding embt(t);
  CHECK(embt.letters() == 3);
  CHECK(embt.apply(elt(0, Vec{1, 2, 3})).q == 0);

  // Verdict preservation through the composed embedding.
  auto gens = vab::detail::extension_generators(k);
  std::vector<VAElement> image;
  for (const auto& x : gens) image.push_back(emb.apply(x));
  auto cl = vab::subgroup_closure(emb.target(), image);
  CHECK(vab::is_torsion_free(cl.sub));

  std::vector<VAElement> dimage = {embd.apply(elt(1, Vec{0})),
                                   embd.apply(elt(0, Vec{1}))};
  auto cld = vab::subgroup_closure(embd.target(), dimage);
  CHECK_FALSE(vab::is_torsion_free(cld.sub));

  // Too many letters for a symmetric target.
  CHECK_THROWS_AS(vab::embed_sigma_lattice(torus_model(7)), BudgetExceeded);
}
