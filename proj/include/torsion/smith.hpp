// Integer normal forms: Smith, Hermite, and exact linear solving.
//
// smith_normal_form(M) returns (U, D, V) with U*M*V = D, U and V unimodular,
// D diagonal with d1 | d2 | ... and every di >= 0.  Pivot selection always
// takes a minimal-absolute-value nonzero entry of the working submatrix,
// which keeps coefficient growth tame on the matrices produced here.
//
// hermite_rows(M) returns the canonical row Hermite form of the row span of
// M: pivots positive, entries above each pivot reduced into [0, pivot), zero
// rows dropped.  Two generating sets span the same lattice iff their forms
// are equal.
//
// solve_linear(A, b) finds one integer solution of A x = b or reports none.

#ifndef TORSION_SMITH_HPP
#define TORSION_SMITH_HPP

#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/int_matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace torsion {

struct SmithResult {
  IntMatrix u; // rows x rows
  IntMatrix d; // rows x cols, diagonal
  IntMatrix v; // cols x cols

  Vec diagonal() const {
    std::size_t n = d.rows() < d.cols() ? d.rows() : d.cols();
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = d(i, i);
    return out;
  }
};

inline SmithResult smith_normal_form(const IntMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  SmithResult r{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  IntMatrix& d = r.d;
  std::size_t lim = rows < cols ? rows : cols;

  for (std::size_t t = 0; t < lim; ++t) {
    for (;;) {
      // Minimal-absolute-value pivot in the trailing submatrix.
      std::size_t pi = t, pj = t;
      bool found = false;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 &&
              (!found || abs_int(d(i, j)) < abs_int(d(pi, pj)))) {
            pi = i;
            pj = j;
            found = true;
          }
      if (!found) {
        // Trailing submatrix is zero; the form is finished.
        for (std::size_t i = t; i < lim; ++i)
          if (d(i, i) < 0) {
            d.negate_row(i);
            r.u.negate_row(i);
          }
        return r;
      }
      d.swap_rows(t, pi);
      r.u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      r.v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Int q = nearest_div(d(i, t), d(t, t));
        d.row_axpy(i, t, q);
        r.u.row_axpy(i, t, q);
        if (d(i, t) != 0) clean = false; // strictly smaller remainder survives
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Int q = nearest_div(d(t, j), d(t, t));
        d.col_axpy(j, t, q);
        r.v.col_axpy(j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column t are clear; enforce pivot | trailing entries.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols && divides; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.row_axpy(t, i, Int(-1)); // fold the offending row into row t
            r.u.row_axpy(t, i, Int(-1));
            divides = false;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      r.u.negate_row(t);
    }
  }
  return r;
}

// Canonical row Hermite form of the lattice spanned by the rows of m.
inline IntMatrix hermite_rows(const IntMatrix& m) {
  IntMatrix h = m;
  std::size_t rows = h.rows(), cols = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      std::size_t p = r;
      bool found = false;
      for (std::size_t i = r; i < rows; ++i)
        if (h(i, c) != 0 && (!found || abs_int(h(i, c)) < abs_int(h(p, c)))) {
          p = i;
          found = true;
        }
      if (!found) break;
      h.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        Int q = nearest_div(h(i, c), h(r, c));
        h.row_axpy(i, r, q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = fdiv(h(i, c), h(r, c));
      h.row_axpy(i, r, q);
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = h(i, j);
  return out;
}

inline std::optional<Vec> solve_linear(const IntMatrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw ValidationError("solve shape mismatch");
  SmithResult s = smith_normal_form(a);
  Vec y = s.u.apply(b);
  std::size_t lim = a.rows() < a.cols() ? a.rows() : a.cols();
  Vec z(a.cols(), Int(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int di = i < lim ? s.d(i, i) : Int(0);
    if (di == 0) {
      if (y[i] != 0) return std::nullopt;
    } else {
      if (y[i] % di != 0) return std::nullopt;
      if (i < a.cols()) z[i] = y[i] / di;
    }
  }
  return s.v.apply(z);
}

// Coordinates of v in the row space of basis (integer combination of rows),
// if any: x with x * basis = v.
inline std::optional<Vec> coords_in_rows(const IntMatrix& basis, const Vec& v) {
  return solve_linear(basis.transpose(), v);
}

} // namespace torsion

#endif
