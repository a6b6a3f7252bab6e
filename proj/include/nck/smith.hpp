#pragma once

#include "nck/int_matrix.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace nck {

/// U * A * V = S with S diagonal, s_1 | s_2 | ..., s_i >= 0, and U, V unimodular.
struct SmithForm {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < S.rows() && r < S.cols() && S(r, r) != 0) ++r;
    return r;
  }
  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < S.rows() && i < S.cols(); ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}
inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}
// row[dst] += k * row[src]
inline void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += k * m(src, c);
}
inline void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += k * m(r, src);
}
inline void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

// Position of the smallest nonzero |entry| in the block [t.., t..].
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_pivot(const IntMatrix& s, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t r = t; r < s.rows(); ++r)
    for (std::size_t c = t; c < s.cols(); ++c) {
      if (s(r, c) == 0) continue;
      Integer a = abs_value(s(r, c));
      if (!best || a < best_abs) {
        best = {r, c};
        best_abs = a;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form with smallest-|entry| pivoting.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  using namespace detail;
  SmithForm f{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  IntMatrix& s = f.S;
  const std::size_t limit = std::min(s.rows(), s.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    auto pivot = smallest_pivot(s, t);
    if (!pivot) break;
    swap_rows(s, t, pivot->first);
    swap_rows(f.U, t, pivot->first);
    swap_cols(s, t, pivot->second);
    swap_cols(f.V, t, pivot->second);

    for (;;) {
      bool dirty = false;
      // Column t below the pivot.
      for (std::size_t r = t + 1; r < s.rows(); ++r) {
        if (s(r, t) == 0) continue;
        Integer q = s(r, t) / s(t, t);
        add_row(s, r, t, -q);
        add_row(f.U, r, t, -q);
        if (s(r, t) != 0) dirty = true;
      }
      // Row t right of the pivot.
      for (std::size_t c = t + 1; c < s.cols(); ++c) {
        if (s(t, c) == 0) continue;
        Integer q = s(t, c) / s(t, t);
        add_col(s, c, t, -q);
        add_col(f.V, c, t, -q);
        if (s(t, c) != 0) dirty = true;
      }
      if (dirty) {
        // A smaller remainder exists in row/column t; move it to the pivot.
        auto p = smallest_pivot(s, t);
        swap_rows(s, t, p->first);
        swap_rows(f.U, t, p->first);
        swap_cols(s, t, p->second);
        swap_cols(f.V, t, p->second);
        continue;
      }
      // Divisibility: pivot must divide the whole remaining block.
      std::optional<std::size_t> bad_row;
      for (std::size_t r = t + 1; r < s.rows() && !bad_row; ++r)
        for (std::size_t c = t + 1; c < s.cols(); ++c)
          if (s(r, c) % s(t, t) != 0) {
            bad_row = r;
            break;
          }
      if (!bad_row) break;
      add_row(s, t, *bad_row, Integer(1));
      add_row(f.U, t, *bad_row, Integer(1));
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(f.U, t);
    }
  }
  return f;
}

/// Basis of the integer kernel {x : A x = 0}, as columns.
inline std::vector<std::vector<Integer>> kernel_basis(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  std::vector<std::vector<Integer>> out;
  for (std::size_t c = f.rank(); c < a.cols(); ++c) out.push_back(f.V.column(c));
  return out;
}

/// Integer solution of A x = b, if one exists.
inline std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, const std::vector<Integer>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: rhs length mismatch");
  SmithForm f = smith_normal_form(a);
  std::vector<Integer> w = f.U.apply(b);
  const std::size_t r = f.rank();
  std::vector<Integer> y(a.cols());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < r) {
      if (w[i] % f.S(i, i) != 0) return std::nullopt;
      y[i] = w[i] / f.S(i, i);
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  return f.V.apply(y);
}

}  // namespace nck
