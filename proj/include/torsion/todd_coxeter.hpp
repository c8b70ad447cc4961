// Coset enumeration, HLT strategy with lookahead.
//
// The enumerator fills relator scans by defining new cosets (HLT).  When the
// live-coset count crosses a growth threshold it runs a lookahead pass that
// scans every relator at every live coset making only deductions and
// coincidences, which lets coincidence collapse catch up before more space
// is spent.  The budget bounds live cosets; exceeding it raises
// BudgetExceeded with progress counters.  The returned table is standardized
// (see CosetTable), so a sufficient budget always yields the same table.

#ifndef TORSION_TODD_COXETER_HPP
#define TORSION_TODD_COXETER_HPP

#include "torsion/coset_table.hpp"
#include "torsion/error.hpp"
#include "torsion/presentation.hpp"
#include "torsion/word.hpp"

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace torsion::fp {

namespace detail {

class Enumerator {
public:
  Enumerator(const GroupPresentation& p, std::size_t budget)
      : p_(p), ncols_(2 * p.ngens()), budget_(budget) {
    // Row 0 unused; coset 1 is the subgroup.
    tab_.assign(2, std::vector<int>(ncols_, 0));
    parent_.assign(2, 0);
    parent_[1] = 1;
    live_ = 1;
    allocated_ = 1;
    lookahead_at_ = 1024;
  }

  int rep(int c) {
    while (parent_[static_cast<std::size_t>(c)] != c)
      c = parent_[static_cast<std::size_t>(c)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(c)])];
    return c;
  }

  bool alive(int c) { return rep(c) == c; }

  int get(int c, std::size_t col) {
    int d = tab_[static_cast<std::size_t>(c)][col];
    if (d == 0) return 0;
    d = rep(d);
    tab_[static_cast<std::size_t>(c)][col] = d;
    return d;
  }

  static std::size_t inv(std::size_t col) { return col ^ 1u; }

  void set_edge(int a, std::size_t col, int b) {
    tab_[static_cast<std::size_t>(a)][col] = b;
    tab_[static_cast<std::size_t>(b)][inv(col)] = a;
  }

  int define(int a, std::size_t col) {
    if (live_ >= budget_)
      throw BudgetExceeded("coset budget exceeded",
                           "allocated " + std::to_string(allocated_) +
                               " cosets, " + std::to_string(live_) + " live");
    ++allocated_;
    ++live_;
    tab_.emplace_back(ncols_, 0);
    parent_.push_back(static_cast<int>(tab_.size() - 1));
    int b = static_cast<int>(tab_.size() - 1);
    set_edge(a, col, b);
    return b;
  }

  void coincide(int a, int b) {
    pending_.push_back({a, b});
    while (!pending_.empty()) {
      auto [x, y] = pending_.front();
      pending_.pop_front();
      x = rep(x);
      y = rep(y);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      // Merge y into x.
      parent_[static_cast<std::size_t>(y)] = x;
      --live_;
      for (std::size_t col = 0; col < ncols_; ++col) {
        int d0 = tab_[static_cast<std::size_t>(y)][col];
        if (d0 == 0) continue;
        int d = rep(d0);
        int e = get(x, col);
        if (e == 0) {
          tab_[static_cast<std::size_t>(x)][col] = d;
          // The reverse slot of d must now name x.
          int back = tab_[static_cast<std::size_t>(d)][inv(col)];
          if (back == 0) {
            tab_[static_cast<std::size_t>(d)][inv(col)] = x;
          } else {
            int rb = rep(back);
            tab_[static_cast<std::size_t>(d)][inv(col)] = x;
            if (rb != x) pending_.push_back({rb, x});
          }
        } else if (e != d) {
          pending_.push_back({d, e});
        }
      }
    }
  }

  // Scans word w at coset c.  If fill is set, the scan is re-run after each
  // single new definition until it closes; defining one coset at a time keeps
  // the free-slot preconditions valid even when the fill path wraps onto
  // slots the earlier backward scan inspected.
  void scan(int c, const Word& w, bool fill) {
    for (;;) {
      c = rep(c);
      int f = c;
      std::size_t i = 0;
      while (i < w.size()) {
        int next = get(f, CosetTable::column(w[i]));
        if (next == 0) break;
        f = next;
        ++i;
      }
      if (i == w.size()) {
        if (f != c) coincide(f, c);
        return;
      }
      int b = c;
      std::size_t j = w.size();
      while (j > i) {
        int next = get(b, CosetTable::column(-w[j - 1]));
        if (next == 0) break;
        b = next;
        --j;
      }
      if (j == i) {
        // Scans meet over a gap of length zero: both endpoints coincide.
        coincide(f, b);
        return;
      }
      if (j == i + 1) {
        // Deduction: both facing slots are free by the scan stop conditions.
        set_edge(f, CosetTable::column(w[i]), b);
        return;
      }
      if (!fill) return;
      define(f, CosetTable::column(w[i]));
    }
  }

  void lookahead() {
    for (int c = 1; c < static_cast<int>(tab_.size()); ++c) {
      if (!alive(c)) continue;
      for (const auto& r : p_.relators) {
        scan(c, r, false);
        if (!alive(c)) break;
      }
    }
  }

  CosetTable run(const std::vector<Word>& subgroup_gens) {
    for (const auto& w : subgroup_gens) scan(1, w, true);
    // HLT sweep: relator scans then row fill, coset by coset.
    for (int c = 1; c < static_cast<int>(tab_.size()); ++c) {
      if (!alive(c)) continue;
      for (const auto& r : p_.relators) {
        scan(c, r, true);
        if (!alive(c)) break;
      }
      if (!alive(c)) continue;
      for (std::size_t col = 0; col < ncols_; ++col)
        if (get(c, col) == 0) define(c, col);
      if (live_ >= lookahead_at_) {
        lookahead();
        lookahead_at_ = 2 * live_ + 1024;
      }
    }
    return extract();
  }

  CosetTable extract() {
    // Rename live cosets contiguously, then standardize.
    std::vector<int> name(tab_.size(), 0);
    int k = 0;
    for (int c = 1; c < static_cast<int>(tab_.size()); ++c)
      if (alive(c)) name[static_cast<std::size_t>(c)] = ++k;
    CosetTable t(p_.ngens(), static_cast<std::size_t>(k));
    for (int c = 1; c < static_cast<int>(tab_.size()); ++c) {
      if (!alive(c)) continue;
      for (std::size_t col = 0; col < ncols_; ++col) {
        int d = get(c, col);
        if (d == 0) throw ValidationError("enumeration left an open slot");
        t.slot(static_cast<std::size_t>(name[static_cast<std::size_t>(c)]),
               col) = name[static_cast<std::size_t>(d)];
      }
    }
    return t.standardized_from(1);
  }

private:
  const GroupPresentation& p_;
  std::size_t ncols_;
  std::size_t budget_;
  std::vector<std::vector<int>> tab_;
  std::vector<int> parent_;
  std::deque<std::pair<int, int>> pending_;
  std::size_t live_, allocated_, lookahead_at_;
};

} // namespace detail

inline CosetTable coset_enumerate(const GroupPresentation& p,
                                  const std::vector<Word>& subgroup_gens = {},
                                  std::size_t budget = 1000000) {
  for (const auto& w : subgroup_gens) p.check_word(w);
  for (const auto& r : p.relators) p.check_word(r);
  detail::Enumerator e(p, budget);
  CosetTable t = e.run(subgroup_gens);
  t.validate(p, subgroup_gens);
  return t;
}

} // namespace torsion::fp

#endif
