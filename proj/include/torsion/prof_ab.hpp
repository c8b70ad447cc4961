// Formal data for finitely generated profinite abelian groups.
//
// The model is structural: a product over finitely many primes p of r_p
// copies of the p-adic integers, times a finite abelian part.  No p-adic
// element arithmetic is performed; operations read off structure.

#ifndef TORSION_PROF_AB_HPP
#define TORSION_PROF_AB_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/fin_ab.hpp"
#include "torsion/invariants.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <vector>

namespace torsion::ab {

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct ProfAbData {
  std::map<Int, std::size_t> local_ranks; // prime -> r_p >= 1
  FinAbInvariants finite_part;            // rank must be 0

  ProfAbData() = default;
  ProfAbData(std::map<Int, std::size_t> lr, FinAbInvariants fin = {})
      : local_ranks(std::move(lr)), finite_part(std::move(fin)) {
    validate();
  }

  void validate() const {
    for (const auto& [p, r] : local_ranks) {
      if (!is_prime(p)) throw ValidationError("local rank key is not prime");
      if (r == 0) throw ValidationError("local rank must be at least 1");
    }
    if (finite_part.rank != 0)
      throw ValidationError("finite part must have rank 0");
    finite_part.validate();
  }
};

struct EmbedRank {
  std::size_t n; // minimal ambient rank
  // For each prime, the ambient coordinates its r_p factors occupy.
  std::map<Int, std::vector<std::size_t>> coordinates;
};

// Minimal n with an embedding into the n-th power of the profinite
// completion of Z; requires the torsion-free case (trivial finite part).
inline EmbedRank embed_rank(const ProfAbData& d) {
  d.validate();
  if (!d.finite_part.trivial())
    throw ValidationError("embed_rank requires a trivial finite part");
  EmbedRank out;
  out.n = 0;
  for (const auto& [p, r] : d.local_ranks)
    if (r > out.n) out.n = r;
  for (const auto& [p, r] : d.local_ranks) {
    std::vector<std::size_t> coords(r);
    for (std::size_t i = 0; i < r; ++i) coords[i] = i;
    out.coordinates[p] = std::move(coords);
  }
  return out;
}

struct DualityCriteria {
  bool torsion_free;
  bool dual_divisible;
};

// Both predicates computed independently: torsion freeness from the finite
// part, divisibility on the formal dual.  The dual of each p-adic factor is
// a Pruefer group (divisible); the dual of the finite part is a finite group
// of the same invariants, and its divisibility is tested by checking that
// multiplication by each prime dividing the exponent is surjective.
inline DualityCriteria duality_criteria(const ProfAbData& d) {
  d.validate();
  DualityCriteria c{};
  c.torsion_free = d.finite_part.trivial();

  bool divisible = true; // Pruefer components are divisible
  FinAbGroup fdual = dual_group(FinAbGroup::from_invariants(d.finite_part));
  if (fdual.k() > 0) {
    for (Int q = 2; q <= fdual.exponent() && divisible; ++q) {
      if (!is_prime(q) || fdual.exponent() % q != 0) continue;
      std::set<Vec> image;
      for (const auto& e : fdual.elements()) image.insert(fdual.smul(q, e));
      if (image.size() < fdual.elements().size()) divisible = false;
    }
  }
  c.dual_divisible = divisible;
  return c;
}

} // namespace torsion::ab

#endif
