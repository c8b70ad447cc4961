// Complete coset tables for finite-index subgroups.
//
// Cosets are numbered 1..index with 1 the subgroup itself.  A table stores,
// for every coset and every signed generator, the image coset; tables handed
// out by the enumerators are complete (no zero entries) and standardized:
// scanning cosets 1..k and columns in order, each coset number makes its
// first appearance in increasing order.  Standardization makes the table a
// canonical invariant of the subgroup, independent of enumeration strategy
// and budget.

#ifndef TORSION_COSET_TABLE_HPP
#define TORSION_COSET_TABLE_HPP

#include "torsion/error.hpp"
#include "torsion/presentation.hpp"
#include "torsion/word.hpp"

#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

namespace torsion::fp {

class CosetTable {
public:
  CosetTable() : ngens_(0), index_(0) {}

  CosetTable(std::size_t ngens, std::size_t index)
      : ngens_(ngens), index_(index), t_(index * 2 * ngens, 0) {}

  std::size_t ngens() const { return ngens_; }
  std::size_t index() const { return index_; }

  // Column layout: generator g has forward column 2(g-1), inverse 2(g-1)+1.
  static std::size_t column(int letter) {
    std::size_t g = static_cast<std::size_t>(std::abs(letter));
    return 2 * (g - 1) + (letter < 0 ? 1 : 0);
  }

  int& slot(std::size_t coset, std::size_t col) {
    return t_[(coset - 1) * 2 * ngens_ + col];
  }
  int slot(std::size_t coset, std::size_t col) const {
    return t_[(coset - 1) * 2 * ngens_ + col];
  }

  int act(int coset, int letter) const {
    return slot(static_cast<std::size_t>(coset), column(letter));
  }

  int trace(int coset, const Word& w) const {
    int c = coset;
    for (int x : w) c = act(c, x);
    return c;
  }

  // Row-major action data, forward columns only: for each generator, the
  // image of cosets 1..k.  This is the canonical comparison key.
  std::vector<int> flatten() const {
    std::vector<int> out;
    out.reserve(ngens_ * index_);
    for (std::size_t g = 1; g <= ngens_; ++g)
      for (std::size_t c = 1; c <= index_; ++c)
        out.push_back(slot(c, 2 * (g - 1)));
    return out;
  }

  bool operator==(const CosetTable& o) const {
    return ngens_ == o.ngens_ && index_ == o.index_ && t_ == o.t_;
  }
  bool operator!=(const CosetTable& o) const { return !(*this == o); }

  // Renumbers cosets by scan order starting from `base`, so the result is
  // standardized.  On a complete transitive table this is a bijective
  // relabeling; base > 1 yields the table of a conjugate subgroup.
  CosetTable standardized_from(int base = 1) const {
    std::vector<int> newname(index_ + 1, 0);
    std::vector<int> order;
    order.reserve(index_);
    newname[static_cast<std::size_t>(base)] = 1;
    order.push_back(base);
    for (std::size_t i = 0; i < order.size(); ++i) {
      int c = order[i];
      for (std::size_t col = 0; col < 2 * ngens_; ++col) {
        int d = slot(static_cast<std::size_t>(c), col);
        if (d && !newname[static_cast<std::size_t>(d)]) {
          newname[static_cast<std::size_t>(d)] =
              static_cast<int>(order.size()) + 1;
          order.push_back(d);
        }
      }
    }
    if (order.size() != index_)
      throw ValidationError("coset table is not transitive");
    CosetTable out(ngens_, index_);
    for (std::size_t c = 1; c <= index_; ++c)
      for (std::size_t col = 0; col < 2 * ngens_; ++col) {
        int img = slot(static_cast<std::size_t>(order[c - 1]), col);
        out.slot(c, col) = newname[static_cast<std::size_t>(img)];
      }
    return out;
  }

  bool is_standardized() const { return *this == standardized_from(1); }

  // Full postcondition check: completeness, inverse consistency (hence the
  // action of each generator is a permutation), every relator trivial at
  // every coset, and every subgroup generator fixing coset 1.
  void validate(const GroupPresentation& p,
                const std::vector<Word>& subgroup_gens = {}) const {
    if (p.ngens() != ngens_)
      throw ValidationError("coset table generator count mismatch");
    for (std::size_t c = 1; c <= index_; ++c)
      for (std::size_t g = 1; g <= ngens_; ++g) {
        int f = slot(c, 2 * (g - 1));
        if (f < 1 || static_cast<std::size_t>(f) > index_)
          throw ValidationError("incomplete or out-of-range coset table entry");
        int b = slot(static_cast<std::size_t>(f), 2 * (g - 1) + 1);
        if (b != static_cast<int>(c))
          throw ValidationError("coset table inverse columns inconsistent");
      }
    for (const auto& r : p.relators)
      for (std::size_t c = 1; c <= index_; ++c)
        if (trace(static_cast<int>(c), r) != static_cast<int>(c))
          throw ValidationError("relator does not stabilize a coset");
    for (const auto& w : subgroup_gens)
      if (trace(1, w) != 1)
        throw ValidationError("subgroup generator does not fix coset 1");
  }

private:
  std::size_t ngens_;
  std::size_t index_;
  std::vector<int> t_; // (index) x (2*ngens), 0 = undefined
};

} // namespace torsion::fp

#endif
