// Tests for the torsion-freeness certifier.
//
// Oracles: Nielsen-Schreier freeness for free groups, hand-computed
// Reidemeister rewriting for the Z semidirect Z corpus (values frozen from a
// by-hand Smith reduction), and re-verification of every witness from its
// coset table alone.

#include <catch2/catch_amalgamated.hpp>

#include "torsion/ttf.hpp"

#include <set>

using namespace torsion;
using namespace torsion::fp;
using namespace torsion::ttf;
using ab::FinAbInvariants;

TEST_CASE("heisenberg group is refuted at index 2") {
  auto v = certify_weak_ttf(builtin("heisenberg"), 2);
  REQUIRE(v.refuted);
  REQUIRE(v.witnesses.size() == 1);
  REQUIRE(v.witnesses[0].table.index() == 2);
  REQUIRE(v.witnesses[0].invariants == FinAbInvariants(2, {Int(2)}));
  v.witnesses[0].reverify(builtin("heisenberg"));
}

TEST_CASE("every index-2 subgroup of heisenberg carries the same torsion") {
  TtfOptions opt;
  opt.all_witnesses = true;
  auto v = certify_weak_ttf(builtin("heisenberg"), 2, opt);
  REQUIRE(v.refuted);
  REQUIRE(v.witnesses.size() == 3); // one per surjection onto Z/2
  for (const auto& w : v.witnesses) {
    REQUIRE(w.table.index() == 2);
    REQUIRE(w.invariants == FinAbInvariants(2, {Int(2)}));
  }
}

TEST_CASE("non-orientable surface groups are refuted at index 1") {
  for (int k : {2, 3}) {
    auto v = certify_weak_ttf(builtin("nonorientable", {k}), 1);
    REQUIRE(v.refuted);
    REQUIRE(v.witnesses[0].table.index() == 1);
    bool has2 = false;
    for (const auto& d : v.witnesses[0].invariants.torsion)
      if (d % 2 == 0) has2 = true;
    REQUIRE(has2);
  }
}

TEST_CASE("free and free abelian groups certify") {
  auto vf = certify_weak_ttf(builtin("free", {2}), 4);
  REQUIRE(!vf.refuted);
  REQUIRE(vf.certified_up_to == 4);
  REQUIRE(vf.stats.subgroups_examined == 1 + 3 + 13 + 71);

  auto va = certify_weak_ttf(builtin("free_abelian", {3}), 4);
  REQUIRE(!va.refuted);
  REQUIRE(va.certified_up_to == 4);
}

TEST_CASE("orientable surface groups certify") {
  auto v = certify_weak_ttf(builtin("surface", {2}), 3);
  REQUIRE(!v.refuted);
  REQUIRE(v.certified_up_to == 3);
}

TEST_CASE("verdicts are monotone in the index bound") {
  for (std::size_t n = 2; n <= 4; ++n)
    REQUIRE(certify_weak_ttf(builtin("heisenberg"), n).refuted);
  for (std::size_t n = 1; n <= 4; ++n)
    REQUIRE(!certify_weak_ttf(builtin("free", {2}), n).refuted);
}

TEST_CASE("free products of certified groups stay certified") {
  std::vector<GroupPresentation> factors{builtin("free", {1}),
                                         builtin("free", {2}),
                                         builtin("surface", {1})};
  for (const auto& f : factors)
    REQUIRE(!certify_weak_ttf(f, 3).refuted);
  for (const auto& f1 : factors)
    for (const auto& f2 : factors) {
      auto v = certify_weak_ttf(free_product(f1, f2), 3);
      REQUIRE(!v.refuted);
      REQUIRE(v.certified_up_to == 3);
    }
}

TEST_CASE("Z semidirect Z by inversion is refuted early") {
  auto p = parse_presentation("gens a t\nrel t a T a\n");

  // Its own abelianization already has torsion: exponent row (2, 0).
  auto v1 = certify_weak_ttf(p, 1);
  REQUIRE(v1.refuted);
  REQUIRE(v1.witnesses[0].table.index() == 1);
  REQUIRE(v1.witnesses[0].invariants == FinAbInvariants(1, {Int(2)}));

  // At bound 2 the sweep finds the index-1 witness first, and with the
  // all-witnesses flag exactly the two Klein-bottle kernels join it; the
  // third index-2 subgroup <t^2, a> is Z^2 and stays clean.
  TtfOptions all;
  all.all_witnesses = true;
  auto v2 = certify_weak_ttf(p, 2, all);
  REQUIRE(v2.refuted);
  REQUIRE(v2.witnesses.size() == 3);
  REQUIRE(v2.witnesses[0].table.index() == 1);
  REQUIRE(v2.witnesses[1].table.index() == 2);
  REQUIRE(v2.witnesses[2].table.index() == 2);
  for (std::size_t i = 1; i < 3; ++i)
    REQUIRE(v2.witnesses[i].invariants == FinAbInvariants(1, {Int(2)}));

  // The designated subgroup <t^2, a> is free abelian of rank 2.
  auto clean = check_designated_subgroup(p, {Word{2, 2}, Word{1}});
  REQUIRE(clean == FinAbInvariants(2, {}));
}

TEST_CASE("hand-coded kernel table oracle for the Klein bottle kernel") {
  // Kernel of a -> 1, t -> 0 into Z/2: cosets 1 = K, 2 = Ka with
  // a: 1 <-> 2 and t fixing both.  Frozen by-hand rewriting gives relators
  // s1 s3^-1 s2 and s3 s2 s1^-1 and Smith form diag(1, 2).
  auto p = parse_presentation("gens a t\nrel t a T a\n");
  CosetTable t(2, 2);
  auto put = [&](int c, int g, int d) {
    t.slot(static_cast<std::size_t>(c), CosetTable::column(g)) = d;
    t.slot(static_cast<std::size_t>(d), CosetTable::column(-g)) = c;
  };
  put(1, 1, 2);
  put(2, 1, 1);
  put(1, 2, 1);
  put(2, 2, 2);
  t.validate(p);
  auto sub = reidemeister_schreier(p, t);
  REQUIRE(sub.ngens() == 3);
  REQUIRE(sub.relators ==
          std::vector<Word>{Word{1, -3, 2}, Word{3, 2, -1}});
  REQUIRE(ab::abelianization(sub) == FinAbInvariants(1, {Int(2)}));

  // The same table must appear among the certifier's witnesses.
  TtfOptions all;
  all.all_witnesses = true;
  auto v = certify_weak_ttf(p, 2, all);
  bool found = false;
  for (const auto& w : v.witnesses)
    if (w.table == t.standardized_from(1)) found = true;
  REQUIRE(found);
}

TEST_CASE("designated subgroup checks match pinned values") {
  auto h = builtin("heisenberg");
  REQUIRE(check_designated_subgroup(h, {Word{1, 1}, Word{2}, Word{3}}) ==
          FinAbInvariants(2, {Int(2)}));

  auto f2 = builtin("free", {2});
  // {a, b a b^-1, b^2}
  REQUIRE(check_designated_subgroup(
              f2, {Word{1}, Word{2, 1, -2}, Word{2, 2}}) ==
          FinAbInvariants(3, {}));

  auto z6 = parse_presentation("gens a\nrel a a a a a a\n");
  REQUIRE(check_designated_subgroup(z6, {Word{1, 1}}) ==
          FinAbInvariants(0, {Int(3)}));
}

TEST_CASE("budget exhaustion is an error, not a certification") {
  TtfOptions tiny;
  tiny.node_budget = 5;
  REQUIRE_THROWS_AS(certify_weak_ttf(builtin("free", {2}), 3, tiny),
                    BudgetExceeded);
  REQUIRE_THROWS_AS(
      check_designated_subgroup(builtin("free", {2}), {Word{1}}, 100),
      BudgetExceeded);
}
