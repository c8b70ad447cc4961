// Certifier for torsion-free abelianization of all subgroups up to a finite
// index bound, with refutation witnesses.
//
// The sweep is by index ascending in the canonical subgroup order of
// low_index_subgroups, so the first witness is well defined.  A verdict is
// never an unbounded claim: certification holds only up to the swept index.
// Every witness carries its coset table, Schreier presentation, and
// invariants, and re-verifies end-to-end.

#ifndef TORSION_TTF_HPP
#define TORSION_TTF_HPP

#include "torsion/coset_table.hpp"
#include "torsion/error.hpp"
#include "torsion/invariants.hpp"
#include "torsion/low_index.hpp"
#include "torsion/presentation.hpp"
#include "torsion/schreier.hpp"
#include "torsion/todd_coxeter.hpp"

#include <cstddef>
#include <vector>

namespace torsion::ttf {

struct TtfWitness {
  fp::CosetTable table;
  fp::GroupPresentation schreier;
  ab::FinAbInvariants invariants;

  // Recomputes everything from the table and checks it against the stored
  // members; throws ValidationError on any mismatch.
  void reverify(const fp::GroupPresentation& p) const {
    table.validate(p);
    auto pres = fp::reidemeister_schreier(p, table);
    if (pres.generators != schreier.generators ||
        pres.relators != schreier.relators)
      throw ValidationError("witness presentation does not re-derive");
    auto inv = ab::abelianization(pres);
    if (inv != invariants)
      throw ValidationError("witness invariants do not re-derive");
    if (inv.torsion_free())
      throw ValidationError("witness has no torsion");
  }
};

struct TtfStats {
  std::size_t subgroups_examined = 0;
  std::size_t max_index_reached = 0;
};

struct TtfVerdict {
  bool refuted = false;
  std::size_t certified_up_to = 0; // meaningful when !refuted
  std::vector<TtfWitness> witnesses; // first witness, or all when requested
  TtfStats stats;
};

struct TtfOptions {
  std::size_t node_budget = 1000000; // low-index search nodes
  bool all_witnesses = false;
};

inline TtfVerdict certify_weak_ttf(const fp::GroupPresentation& p,
                                   std::size_t max_index,
                                   const TtfOptions& opt = {}) {
  if (max_index == 0) throw UsageError("max_index must be at least 1");
  fp::LowIndexOptions li;
  li.max_nodes = opt.node_budget;
  auto subs = fp::low_index_subgroups(p, max_index, li);

  TtfVerdict v;
  for (const auto& t : subs) {
    ++v.stats.subgroups_examined;
    if (t.index() > v.stats.max_index_reached)
      v.stats.max_index_reached = t.index();
    auto pres = fp::reidemeister_schreier(p, t);
    auto inv = ab::abelianization(pres);
    if (!inv.torsion_free()) {
      v.refuted = true;
      v.witnesses.push_back({t, std::move(pres), std::move(inv)});
      if (!opt.all_witnesses) break;
    }
  }
  if (!v.refuted) v.certified_up_to = max_index;
  for (const auto& w : v.witnesses) w.reverify(p);
  return v;
}

// Abelianization invariants of the subgroup generated by the given words,
// which must have finite index reachable within the coset budget.
inline ab::FinAbInvariants check_designated_subgroup(
    const fp::GroupPresentation& p, const std::vector<fp::Word>& subgroup_gens,
    std::size_t budget = 1000000) {
  auto t = fp::coset_enumerate(p, subgroup_gens, budget);
  return ab::abelianization(fp::reidemeister_schreier(p, t));
}

} // namespace torsion::ttf

#endif
