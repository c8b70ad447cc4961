// Subgroup presentations by Reidemeister rewriting on a Schreier transversal.
//
// The spanning tree of a standardized coset table is the set of
// first-appearance slots, so the transversal is canonical.  One generator
// s_{(c,g)} is created per non-tree positive slot; relators are each defining
// relator rewritten at each coset.  Simplification is deliberately modest:
// free and cyclic reduction, dropping empty and exactly duplicated relators,
// and elimination of generators a length-1 relator proves trivial.  No other
// Tietze moves, so the output is deterministic.

#ifndef TORSION_SCHREIER_HPP
#define TORSION_SCHREIER_HPP

#include "torsion/coset_table.hpp"
#include "torsion/error.hpp"
#include "torsion/presentation.hpp"
#include "torsion/word.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace torsion::fp {

inline GroupPresentation reidemeister_schreier(const GroupPresentation& p,
                                               const CosetTable& t) {
  if (p.ngens() != t.ngens())
    throw ValidationError("presentation does not match coset table");
  if (!t.is_standardized())
    throw ValidationError("coset table must be standardized");
  std::size_t k = t.index(), n = p.ngens();

  // Tree slots: the first appearance of each coset >= 2 in scan order, keyed
  // by the positive position (coset, generator) of the edge.
  std::vector<std::vector<bool>> tree(k + 1, std::vector<bool>(n + 1, false));
  {
    std::vector<bool> seen(k + 1, false);
    seen[1] = true;
    for (std::size_t c = 1; c <= k; ++c)
      for (std::size_t col = 0; col < 2 * n; ++col) {
        int d = t.slot(c, col);
        if (seen[static_cast<std::size_t>(d)]) continue;
        seen[static_cast<std::size_t>(d)] = true;
        std::size_t g = col / 2 + 1;
        if (col % 2 == 0) tree[c][g] = true; // c --g--> d discovered d
        else tree[static_cast<std::size_t>(d)][g] = true; // d --g--> c
      }
  }

  // Number the non-tree positive slots in scan order.
  std::vector<std::vector<int>> genof(k + 1, std::vector<int>(n + 1, 0));
  int m = 0;
  for (std::size_t c = 1; c <= k; ++c)
    for (std::size_t g = 1; g <= n; ++g)
      if (!tree[c][g]) genof[c][g] = ++m;

  // Rewrite each relator at each coset.
  std::vector<Word> rels;
  for (const auto& r : p.relators)
    for (std::size_t c = 1; c <= k; ++c) {
      Word w;
      int e = static_cast<int>(c);
      for (int x : r) {
        if (x > 0) {
          int s = genof[static_cast<std::size_t>(e)][static_cast<std::size_t>(x)];
          if (s) w.push_back(s);
          e = t.act(e, x);
        } else {
          int next = t.act(e, x);
          int s = genof[static_cast<std::size_t>(next)]
                       [static_cast<std::size_t>(-x)];
          if (s) w.push_back(-s);
          e = next;
        }
      }
      w = cyclic_reduce(w);
      if (!w.empty()) rels.push_back(std::move(w));
    }
  std::set<Word> seen_rel;
  std::vector<Word> uniq;
  for (auto& w : rels)
    if (seen_rel.insert(w).second) uniq.push_back(std::move(w));
  rels = std::move(uniq);

  // Eliminate generators proved trivial by a length-1 relator, to a fixpoint.
  std::vector<bool> dead(static_cast<std::size_t>(m) + 1, false);
  for (;;) {
    int victim = 0;
    for (const auto& w : rels)
      if (w.size() == 1) {
        victim = std::abs(w[0]);
        break;
      }
    if (!victim) break;
    dead[static_cast<std::size_t>(victim)] = true;
    std::vector<Word> next;
    std::set<Word> dedup;
    for (const auto& w : rels) {
      Word f;
      for (int x : w)
        if (std::abs(x) != victim) f.push_back(x);
      f = cyclic_reduce(f);
      if (!f.empty() && dedup.insert(f).second) next.push_back(std::move(f));
    }
    rels = std::move(next);
  }

  // Surviving generators keep their positional names; letter indices are
  // compacted to the surviving list.
  std::vector<int> newindex(static_cast<std::size_t>(m) + 1, 0);
  GroupPresentation out;
  out.name = (p.name.empty() ? std::string("g") : p.name) + "_sub" +
             std::to_string(k);
  for (int s = 1; s <= m; ++s)
    if (!dead[static_cast<std::size_t>(s)]) {
      out.generators.push_back("s" + std::to_string(s));
      newindex[static_cast<std::size_t>(s)] =
          static_cast<int>(out.generators.size());
    }
  for (const auto& w : rels) {
    Word f;
    for (int x : w) {
      int s = newindex[static_cast<std::size_t>(std::abs(x))];
      f.push_back(x > 0 ? s : -s);
    }
    out.relators.push_back(std::move(f));
  }
  return out;
}

} // namespace torsion::fp

#endif
