#pragma once

// Dense matrices, reduced row-echelon form, and an incremental echelon
// basis used for every span / membership / quotient computation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "skewcliff/field.hpp"

namespace skewcliff {

template <class F>
class DenseMatrix {
 public:
  using value_type = Value<F>;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const value_type& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix zeros(const F& k, std::size_t rows, std::size_t cols) {
    return DenseMatrix(rows, cols, k.zero());
  }
  static DenseMatrix identity(const F& k, std::size_t n) {
    DenseMatrix m = zeros(k, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
    return m;
  }
  static DenseMatrix from_ints(const F& k, std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    DenseMatrix m = zeros(k, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(ErrorKind::WrongDimensions, "ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = k.from_int(v);
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<value_type> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const value_type> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_, value_type{});
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

template <class F>
bool is_zero_matrix(const F& k, const DenseMatrix<F>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!k.is_zero(m(i, j))) return false;
  return true;
}

template <class F>
DenseMatrix<F> matmul(const F& k, const DenseMatrix<F>& a, const DenseMatrix<F>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::WrongDimensions, "matmul shape mismatch");
  DenseMatrix<F> c = DenseMatrix<F>::zeros(k, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (k.is_zero(a(i, l))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = k.add(c(i, j), k.mul(a(i, l), b(l, j)));
    }
  return c;
}

template <class F>
struct RrefResult {
  std::size_t rank = 0;
  DenseMatrix<F> reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan elimination to the unique reduced row-echelon form.
template <class F>
RrefResult<F> rref(const DenseMatrix<F>& m, const F& k) {
  RrefResult<F> out{0, m, {}};
  DenseMatrix<F>& a = out.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && k.is_zero(a(piv, c))) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    auto scale = k.inv(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = k.mul(a(r, j), scale);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || k.is_zero(a(i, c))) continue;
      auto f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = k.sub(a(i, j), k.mul(f, a(r, j)));
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

template <class F>
std::size_t rank_of(const DenseMatrix<F>& m, const F& k) {
  return rref(m, k).rank;
}

/// Basis of the right null space {v : m v = 0}, one vector per free column.
template <class F>
std::vector<std::vector<Value<F>>> null_space(const DenseMatrix<F>& m, const F& k) {
  auto r = rref(m, k);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Value<F>>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Value<F>> v(m.cols(), k.zero());
    v[free] = k.one();
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivot_cols[i]] = k.neg(r.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Inverse of a square matrix; throws ValidationError when singular.
template <class F>
DenseMatrix<F> inverse(const DenseMatrix<F>& m, const F& k) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NotSquare, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  DenseMatrix<F> aug = DenseMatrix<F>::zeros(k, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = k.one();
  }
  auto r = rref(aug, k);
  if (r.rank < n || r.pivot_cols[n - 1] != n - 1) throw Error(ErrorKind::ValidationError, "singular matrix");
  DenseMatrix<F> inv = DenseMatrix<F>::zeros(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

/// Incrementally built echelon basis of a subspace of k^cols.
///
/// Each stored row has a distinct leading column and is normalized there.
/// `reduce` eliminates pivot columns in increasing order, so the result is
/// the unique representative supported on non-pivot columns: membership and
/// quotient coordinates do not depend on insertion order.
template <class F>
class Echelon {
 public:
  using value_type = Value<F>;
  using Vec = std::vector<value_type>;

  Echelon(F field, std::size_t cols) : k_(std::move(field)), cols_(cols), pivot_row_(cols, kNone) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::size_t c) const { return pivot_row_[c] != kNone; }
  const F& field() const { return k_; }

  /// Reduces `v` in place modulo the span.
  void reduce(Vec& v) const {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (pivot_row_[c] == kNone || k_.is_zero(v[c])) continue;
      const auto f = v[c];
      for (const auto& [j, a] : rows_[pivot_row_[c]]) v[j] = k_.sub(v[j], k_.mul(f, a));
    }
  }

  bool contains(Vec v) const {
    reduce(v);
    return is_zero_vec(v);
  }

  /// Adds `v` to the span; returns true when it was independent.
  bool insert(Vec v) {
    reduce(v);
    std::size_t lead = cols_;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!k_.is_zero(v[c])) {
        lead = c;
        break;
      }
    if (lead == cols_) return false;
    const auto scale = k_.inv(v[lead]);
    std::vector<std::pair<std::size_t, value_type>> row;
    for (std::size_t c = lead; c < cols_; ++c)
      if (!k_.is_zero(v[c])) row.emplace_back(c, k_.mul(v[c], scale));
    pivot_row_[lead] = rows_.size();
    rows_.push_back(std::move(row));
    return true;
  }

  std::vector<std::size_t> non_pivot_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_row_[c] == kNone) out.push_back(c);
    return out;
  }

  bool is_zero_vec(const Vec& v) const {
    return std::all_of(v.begin(), v.end(), [&](const value_type& x) { return k_.is_zero(x); });
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  F k_;
  std::size_t cols_;
  std::vector<std::size_t> pivot_row_;
  std::vector<std::vector<std::pair<std::size_t, value_type>>> rows_;
};

}  // namespace skewcliff
