#pragma once

#include "nck/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nck {

/// Dense integer matrix, row-major, exact arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw std::invalid_argument("IntMatrix: expected " + std::to_string(rows_ * cols_) +
                                  " entries, got " + std::to_string(entries_.size()));
  }
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      for (long long v : r) entries_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Integer>& entries() const { return entries_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
  }

  std::vector<Integer> column(std::size_t c) const {
    std::vector<Integer> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("IntMatrix product: " + a.shape() + " * " + b.shape());
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("IntMatrix difference: " + a.shape() + " - " + b.shape());
    IntMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
    return out;
  }

  std::vector<Integer> apply(const std::vector<Integer>& v) const {
    if (v.size() != cols_)
      throw std::invalid_argument("IntMatrix apply: vector of length " + std::to_string(v.size()) +
                                  " for " + shape());
    std::vector<Integer> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  /// Horizontal concatenation [a | b].
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
    IntMatrix out(a.rows_, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
    }
    return out;
  }

  static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<Integer>>& cols) {
    IntMatrix out(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw std::invalid_argument("from_columns: length mismatch");
      for (std::size_t r = 0; r < rows; ++r) out(r, c) = cols[c][r];
    }
    return out;
  }

  /// Determinant by fraction-free (Bareiss) elimination.
  Integer determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square " + shape());
    const std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return 0;
        for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  /// "a b; c d" syntax. Rows separated by ';', entries by whitespace or ','.
  static IntMatrix parse(std::string_view text) {
    std::vector<std::vector<Integer>> rows;
    std::string cur;
    auto flush_row = [&](const std::string& row_text) {
      std::vector<Integer> row;
      std::string tok;
      std::istringstream is(row_text);
      while (is >> tok) {
        std::string piece;
        for (char ch : tok + ",") {
          if (ch == ',') {
            if (!piece.empty()) row.push_back(parse_integer(piece));
            piece.clear();
          } else {
            piece.push_back(ch);
          }
        }
      }
      rows.push_back(std::move(row));
    };
    for (char ch : text) {
      if (ch == ';') {
        flush_row(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    flush_row(cur);
    if (rows.size() == 1 && rows[0].empty()) return IntMatrix(0, 0);
    const std::size_t cols = rows[0].size();
    std::vector<Integer> entries;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols)
        throw std::invalid_argument("matrix row " + std::to_string(r) + " has " +
                                    std::to_string(rows[r].size()) + " entries, expected " +
                                    std::to_string(cols));
      for (auto& v : rows[r]) entries.push_back(std::move(v));
    }
    return IntMatrix(rows.size(), cols, std::move(entries));
  }

  std::string str() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r) s += "; ";
      for (std::size_t c = 0; c < cols_; ++c) {
        if (c) s += " ";
        s += (*this)(r, c).str();
      }
    }
    return s;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

}  // namespace nck
