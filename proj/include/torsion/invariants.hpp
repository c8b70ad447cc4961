// Invariants of finitely generated abelian groups, and abelianization of
// finitely presented groups.
//
// FinAbInvariants is the classification datum: free rank plus the torsion
// coefficients d1 | d2 | ... | dk, every di >= 2.  Equality of invariants is
// isomorphism.

#ifndef TORSION_INVARIANTS_HPP
#define TORSION_INVARIANTS_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/int_matrix.hpp"
#include "torsion/presentation.hpp"
#include "torsion/smith.hpp"

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace torsion::ab {

struct FinAbInvariants {
  std::size_t rank = 0;
  Vec torsion; // d1 | d2 | ... , each >= 2

  FinAbInvariants() = default;
  FinAbInvariants(std::size_t r, Vec t) : rank(r), torsion(std::move(t)) {
    validate();
  }

  void validate() const {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      if (torsion[i] < 2)
        throw ValidationError("torsion coefficient below 2");
      if (i + 1 < torsion.size() && torsion[i + 1] % torsion[i] != 0)
        throw ValidationError("torsion coefficients violate divisibility");
    }
  }

  bool torsion_free() const { return torsion.empty(); }
  bool trivial() const { return rank == 0 && torsion.empty(); }

  Int torsion_order() const {
    Int o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
  }

  bool operator==(const FinAbInvariants& o) const {
    return rank == o.rank && torsion == o.torsion;
  }
  bool operator!=(const FinAbInvariants& o) const { return !(*this == o); }

  std::string str() const {
    std::ostringstream os;
    if (trivial()) return "0";
    bool first = true;
    if (rank) {
      os << "Z";
      if (rank > 1) os << "^" << rank;
      first = false;
    }
    for (const auto& d : torsion) {
      if (!first) os << " + ";
      os << "Z/" << d;
      first = false;
    }
    return os.str();
  }
};

// Cokernel invariants of M acting on Z^cols: Z^cols / rowspace(M).
inline FinAbInvariants cokernel_invariants(const IntMatrix& m) {
  SmithResult s = smith_normal_form(m);
  Vec diag = s.diagonal();
  std::size_t zero_or_missing = m.cols();
  Vec tors;
  for (const auto& d : diag)
    if (d != 0) {
      --zero_or_missing;
      if (d > 1) tors.push_back(d);
    }
  return FinAbInvariants(zero_or_missing, std::move(tors));
}

// Exponent-sum matrix: one row per relator, one column per generator.
inline IntMatrix exponent_matrix(const fp::GroupPresentation& p) {
  IntMatrix m(p.relators.size(), p.ngens());
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (int x : p.relators[i]) {
      std::size_t g = static_cast<std::size_t>(x > 0 ? x : -x) - 1;
      m(i, g) += (x > 0 ? 1 : -1);
    }
  return m;
}

inline FinAbInvariants abelianization(const fp::GroupPresentation& p) {
  return cokernel_invariants(exponent_matrix(p));
}

} // namespace torsion::ab

#endif
