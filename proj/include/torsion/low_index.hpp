// Low-index subgroup enumeration.
//
// Depth-first search over partial coset tables.  The branch point is always
// the first undefined slot in scan order (cosets 1..k, then columns); a new
// coset is only ever introduced there, so every completed table comes out
// standardized and each subgroup of index <= max_index is produced exactly
// once.  Forced coincidences are contradictions here (the same subgroup is
// reached on another branch with fewer cosets), so branches that need one
// are cut.
//
// All subgroups are returned, including the whole group at index 1, ordered
// by (index, flattened action rows).  dedupe_conjugates keeps only tables
// that are minimal among their conjugates' standardizations.

#ifndef TORSION_LOW_INDEX_HPP
#define TORSION_LOW_INDEX_HPP

#include "torsion/coset_table.hpp"
#include "torsion/error.hpp"
#include "torsion/presentation.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace torsion::fp {

struct LowIndexOptions {
  std::size_t max_nodes = 1000000; // DFS node budget
  bool dedupe_conjugates = false;
};

namespace detail {

class LowIndexSearch {
public:
  LowIndexSearch(const GroupPresentation& p, std::size_t max_index,
                 const LowIndexOptions& opt)
      : p_(p), ncols_(2 * p.ngens()), max_(max_index), opt_(opt) {
    tab_.assign(max_ + 2, std::vector<int>(ncols_, 0));
    k_ = 1;
    nodes_ = 0;
  }

  std::vector<CosetTable> run() {
    dfs();
    std::sort(results_.begin(), results_.end(),
              [](const CosetTable& a, const CosetTable& b) {
                if (a.index() != b.index()) return a.index() < b.index();
                return a.flatten() < b.flatten();
              });
    return results_;
  }

private:
  static std::size_t inv(std::size_t col) { return col ^ 1u; }

  void assign(std::size_t a, std::size_t col, std::size_t b) {
    tab_[a][col] = static_cast<int>(b);
    journal_.emplace_back(a, col);
    if (!(a == b && inv(col) == col)) {
      tab_[b][inv(col)] = static_cast<int>(a);
      journal_.emplace_back(b, inv(col));
    }
  }

  void undo_to(std::size_t mark) {
    while (journal_.size() > mark) {
      auto [a, col] = journal_.back();
      journal_.pop_back();
      tab_[a][col] = 0;
    }
  }

  // Scans relator r at coset c, making at most the one forced deduction.
  // Returns false on contradiction, sets *deduced when a slot was filled.
  bool scan_deduce(std::size_t c, const Word& r, bool* deduced) {
    std::size_t f = c, i = 0;
    while (i < r.size()) {
      int next = tab_[f][CosetTable::column(r[i])];
      if (!next) break;
      f = static_cast<std::size_t>(next);
      ++i;
    }
    if (i == r.size()) return f == c;
    std::size_t b = c, j = r.size();
    while (j > i) {
      int next = tab_[b][CosetTable::column(-r[j - 1])];
      if (!next) break;
      b = static_cast<std::size_t>(next);
      --j;
    }
    if (j == i) return f == b;
    if (j == i + 1) {
      assign(f, CosetTable::column(r[i]), b);
      *deduced = true;
    }
    return true;
  }

  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 1; c <= k_; ++c)
        for (const auto& r : p_.relators)
          if (!scan_deduce(c, r, &changed)) return false;
    }
    return true;
  }

  bool find_undefined(std::size_t* beta, std::size_t* col) const {
    for (std::size_t c = 1; c <= k_; ++c)
      for (std::size_t x = 0; x < ncols_; ++x)
        if (!tab_[c][x]) {
          *beta = c;
          *col = x;
          return true;
        }
    return false;
  }

  void emit() {
    CosetTable t(p_.ngens(), k_);
    for (std::size_t c = 1; c <= k_; ++c)
      for (std::size_t x = 0; x < ncols_; ++x)
        t.slot(c, x) = tab_[c][x];
    t.validate(p_);
    if (opt_.dedupe_conjugates) {
      auto key = t.flatten();
      for (std::size_t b = 2; b <= k_; ++b)
        if (t.standardized_from(static_cast<int>(b)).flatten() < key) return;
    }
    results_.push_back(std::move(t));
  }

  void dfs() {
    if (++nodes_ > opt_.max_nodes)
      throw BudgetExceeded("low-index node budget exceeded",
                           "visited " + std::to_string(nodes_) + " nodes, " +
                               std::to_string(results_.size()) +
                               " subgroups found");
    std::size_t beta = 0, col = 0;
    if (!find_undefined(&beta, &col)) {
      emit();
      return;
    }
    for (std::size_t gamma = 1; gamma <= k_ + 1; ++gamma) {
      if (gamma == k_ + 1) {
        if (k_ >= max_) break;
        std::size_t mark = journal_.size();
        ++k_;
        assign(beta, col, k_);
        if (propagate()) dfs();
        undo_to(mark);
        --k_;
      } else {
        if (tab_[gamma][inv(col)]) continue;
        std::size_t mark = journal_.size();
        assign(beta, col, gamma);
        if (propagate()) dfs();
        undo_to(mark);
      }
    }
  }

  const GroupPresentation& p_;
  std::size_t ncols_, max_;
  LowIndexOptions opt_;
  std::vector<std::vector<int>> tab_;
  std::size_t k_, nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> journal_;
  std::vector<CosetTable> results_;
};

} // namespace detail

inline std::vector<CosetTable> low_index_subgroups(
    const GroupPresentation& p, std::size_t max_index,
    const LowIndexOptions& opt = {}) {
  if (max_index == 0) throw UsageError("max_index must be at least 1");
  for (const auto& r : p.relators) p.check_word(r);
  detail::LowIndexSearch s(p, max_index, opt);
  return s.run();
}

} // namespace torsion::fp

#endif
