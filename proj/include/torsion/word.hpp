// Words over the generators of a finitely presented group.
//
// A letter is a nonzero int: +i is generator i (1-based), -i its inverse.
// The zero value is reserved so tables can use it for "undefined".

#ifndef TORSION_WORD_HPP
#define TORSION_WORD_HPP

#include <cstdlib>
#include <vector>

namespace torsion::fp {

using Word = std::vector<int>;

inline Word inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Word free_reduce(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (int x : w) {
    if (!r.empty() && r.back() == -x) r.pop_back();
    else r.push_back(x);
  }
  return r;
}

// Free reduction, then cancellation across the wrap-around.
inline Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + lo, r.begin() + hi);
}

inline Word power(const Word& w, int k) {
  Word base = k < 0 ? inverse(w) : w;
  Word r;
  for (int i = 0, n = std::abs(k); i < n; ++i)
    r.insert(r.end(), base.begin(), base.end());
  return r;
}

// [a, b] = a b a^-1 b^-1
inline Word commutator(const Word& a, const Word& b) {
  return concat(concat(a, b), concat(inverse(a), inverse(b)));
}

} // namespace torsion::fp

#endif
