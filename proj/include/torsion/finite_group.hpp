// Finite groups as explicit multiplication tables.
//
// Elements are indices 0..q-1 with 0 the identity.  Construction always
// verifies the Latin-square property, identity, and inverses; associativity
// is checked exhaustively up to order 128 and on one million seeded random
// triples above that.  Labels are whitespace-free strings used by the text
// formats; symmetric groups on up to 9 letters use one-line digit notation
// ("213" is the transposition of 1 and 2).

#ifndef TORSION_FINITE_GROUP_HPP
#define TORSION_FINITE_GROUP_HPP

#include "torsion/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace torsion::vab {

class FiniteGroup {
public:
  FiniteGroup() : q_(1), mult_{0}, inv_{0}, labels_{"e"} {}

  FiniteGroup(std::vector<std::vector<std::size_t>> table,
              std::vector<std::string> labels)
      : q_(table.size()), labels_(std::move(labels)) {
    mult_.resize(q_ * q_);
    if (labels_.size() != q_)
      throw ValidationError("label count does not match group order");
    for (const auto& l : labels_) {
      if (l.empty()) throw ValidationError("empty element label");
      for (char ch : l)
        if (std::isspace(static_cast<unsigned char>(ch)))
          throw ValidationError("element label contains whitespace");
    }
    for (std::size_t i = 0; i < q_; ++i) {
      if (table[i].size() != q_)
        throw ValidationError("multiplication table is not square");
      for (std::size_t j = 0; j < q_; ++j) {
        if (table[i][j] >= q_)
          throw ValidationError("multiplication table entry out of range");
        mult_[i * q_ + j] = table[i][j];
      }
    }
    validate();
  }

  std::size_t order() const { return q_; }

  std::size_t mult(std::size_t a, std::size_t b) const {
    return mult_[a * q_ + b];
  }

  std::size_t inverse(std::size_t a) const { return inv_[a]; }

  const std::string& label(std::size_t a) const { return labels_[a]; }

  std::size_t index_of_label(const std::string& l) const {
    for (std::size_t i = 0; i < q_; ++i)
      if (labels_[i] == l) return i;
    throw ValidationError("unknown element label '" + l + "'");
  }

  std::size_t element_order(std::size_t a) const {
    std::size_t x = a, k = 1;
    while (x != 0) {
      x = mult(x, a);
      ++k;
    }
    return k;
  }

  std::size_t pow(std::size_t a, std::size_t k) const {
    std::size_t x = 0;
    for (std::size_t i = 0; i < k; ++i) x = mult(x, a);
    return x;
  }

  bool operator==(const FiniteGroup& o) const {
    return q_ == o.q_ && mult_ == o.mult_ && labels_ == o.labels_;
  }

  static FiniteGroup trivial() { return FiniteGroup(); }

  static FiniteGroup cyclic(std::size_t m) {
    if (m == 0) throw UsageError("cyclic group order must be positive");
    std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
    std::vector<std::string> labels(m);
    for (std::size_t i = 0; i < m; ++i) {
      labels[i] = std::to_string(i);
      for (std::size_t j = 0; j < m; ++j) t[i][j] = (i + j) % m;
    }
    return FiniteGroup(std::move(t), std::move(labels));
  }

  // Permutations of {1..n} in lexicographic one-line order (identity first);
  // composition is (pi * rho)(i) = pi(rho(i)).
  static FiniteGroup symmetric(std::size_t n) {
    if (n == 0 || n > 9)
      throw UsageError("symmetric group helper supports 1 through 9 letters");
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> base(n);
    std::iota(base.begin(), base.end(), 1);
    do {
      perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    std::size_t q = perms.size();
    std::vector<std::string> labels(q);
    for (std::size_t i = 0; i < q; ++i) {
      std::string s;
      for (auto x : perms[i]) s += static_cast<char>('0' + x);
      labels[i] = s;
    }
    std::vector<std::vector<std::size_t>> t(q, std::vector<std::size_t>(q));
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) {
        std::vector<std::size_t> comp(n);
        for (std::size_t x = 0; x < n; ++x)
          comp[x] = perms[i][perms[j][x] - 1];
        t[i][j] = perm_rank(comp);
      }
    return FiniteGroup(std::move(t), std::move(labels));
  }

  // Lexicographic rank of a one-line permutation of {1..n} (Lehmer code);
  // equals the element index in symmetric(n).
  static std::size_t perm_rank(const std::vector<std::size_t>& p) {
    std::size_t n = p.size();
    std::size_t r = 0;
    std::vector<std::size_t> fact(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t smaller = 0;
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[j] < p[i]) ++smaller;
      r += smaller * fact[n - 1 - i];
    }
    return r;
  }

  static FiniteGroup direct_product(const FiniteGroup& a,
                                    const FiniteGroup& b) {
    std::size_t q = a.order() * b.order();
    std::vector<std::vector<std::size_t>> t(q, std::vector<std::size_t>(q));
    std::vector<std::string> labels(q);
    auto idx = [&](std::size_t i, std::size_t j) {
      return i * b.order() + j;
    };
    for (std::size_t i1 = 0; i1 < a.order(); ++i1)
      for (std::size_t j1 = 0; j1 < b.order(); ++j1) {
        labels[idx(i1, j1)] = "(" + a.label(i1) + "," + b.label(j1) + ")";
        for (std::size_t i2 = 0; i2 < a.order(); ++i2)
          for (std::size_t j2 = 0; j2 < b.order(); ++j2)
            t[idx(i1, j1)][idx(i2, j2)] =
                idx(a.mult(i1, i2), b.mult(j1, j2));
      }
    return FiniteGroup(std::move(t), std::move(labels));
  }

  // One-line image vector of a symmetric-group element label ("231" -> the
  // permutation 1->2, 2->3, 3->1).
  std::vector<std::size_t> one_line(std::size_t a) const {
    std::vector<std::size_t> p;
    for (char ch : labels_[a]) {
      if (ch < '1' || ch > '9')
        throw ValidationError("element label is not one-line notation");
      p.push_back(static_cast<std::size_t>(ch - '0'));
    }
    return p;
  }

private:
  void validate() {
    // Identity at index 0.
    for (std::size_t i = 0; i < q_; ++i)
      if (mult(0, i) != i || mult(i, 0) != i)
        throw ValidationError("index 0 is not an identity");
    // Latin square.
    for (std::size_t i = 0; i < q_; ++i) {
      std::vector<bool> row(q_, false), col(q_, false);
      for (std::size_t j = 0; j < q_; ++j) {
        if (row[mult(i, j)])
          throw ValidationError("multiplication table row is not a bijection");
        row[mult(i, j)] = true;
        if (col[mult(j, i)])
          throw ValidationError(
              "multiplication table column is not a bijection");
        col[mult(j, i)] = true;
      }
    }
    // Inverses.
    inv_.assign(q_, 0);
    for (std::size_t i = 0; i < q_; ++i) {
      bool found = false;
      for (std::size_t j = 0; j < q_; ++j)
        if (mult(i, j) == 0 && mult(j, i) == 0) {
          inv_[i] = j;
          found = true;
        }
      if (!found) throw ValidationError("element without a two-sided inverse");
    }
    // Associativity: exhaustive for small orders, sampled above.
    if (q_ <= 128) {
      for (std::size_t a = 0; a < q_; ++a)
        for (std::size_t b = 0; b < q_; ++b)
          for (std::size_t c = 0; c < q_; ++c)
            if (mult(mult(a, b), c) != mult(a, mult(b, c)))
              throw ValidationError("multiplication table is not associative");
    } else {
      std::mt19937 rng(0x5eed);
      std::uniform_int_distribution<std::size_t> pick(0, q_ - 1);
      for (int t = 0; t < 1000000; ++t) {
        std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
        if (mult(mult(a, b), c) != mult(a, mult(b, c)))
          throw ValidationError("multiplication table is not associative");
      }
    }
  }

  std::size_t q_;
  std::vector<std::size_t> mult_;
  std::vector<std::size_t> inv_;
  std::vector<std::string> labels_;
};

} // namespace torsion::vab

#endif
