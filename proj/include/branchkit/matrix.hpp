#pragma once
// Dense matrices over an exact field (GaussianRational or RationalFunction).
// Elimination never pivots by magnitude -- any nonzero entry is a valid
// pivot in exact arithmetic. Zero/one elements are derived from the entries
// themselves (x - x, x / x) so the scalar type needs no default identity.

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace branchkit {

template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (size_t k = 0; k < n; ++k) m.at(k, k) = one;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const T& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  T zero_element() const {
    if (data_.empty()) throw std::domain_error("empty matrix has no exemplar");
    return data_[0] - data_[0];
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_shape(b.rows_, b.cols_);
    Matrix r = a;
    for (size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_shape(b.rows_, b.cols_);
    Matrix r = a;
    for (size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(a.rows_, b.cols_, a.rows_ && b.cols_ ? a.zero_element() : T());
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
      }
    return r;
  }
  friend Matrix operator*(const T& c, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.data_) x = c * x;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const {
    Matrix r(cols_, rows_, data_.empty() ? T() : data_[0]);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Matrix submatrix(const std::vector<size_t>& row_idx, const std::vector<size_t>& col_idx) const {
    Matrix r(row_idx.size(), col_idx.size(), zero_element());
    for (size_t i = 0; i < row_idx.size(); ++i)
      for (size_t j = 0; j < col_idx.size(); ++j) r.at(i, j) = at(row_idx[i], col_idx[j]);
    return r;
  }

  Matrix drop_leading_columns(size_t n) const {
    if (n > cols_) throw std::invalid_argument("dropping too many columns");
    Matrix r(rows_, cols_ - n, zero_element());
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = n; j < cols_; ++j) r.at(i, j - n) = at(i, j);
    return r;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    Matrix<U> r(rows_, cols_, f(data_.empty() ? T() : data_[0]));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.at(i, j) = f(at(i, j));
    return r;
  }

  T det() const {
    if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
    Matrix m = *this;
    T result = zero_element();
    bool negate = false;
    bool found_one = false;
    T one = result;
    for (size_t col = 0, row = 0; col < cols_ && row < rows_; ++col, ++row) {
      size_t pivot = row;
      while (pivot < rows_ && m.at(pivot, col).is_zero()) ++pivot;
      if (pivot == rows_) return zero_element();
      if (pivot != row) {
        m.swap_rows(pivot, row);
        negate = !negate;
      }
      const T p = m.at(row, col);
      if (!found_one) {
        one = p / p;
        result = one;
        found_one = true;
      }
      result *= p;
      for (size_t r = row + 1; r < rows_; ++r) {
        if (m.at(r, col).is_zero()) continue;
        T factor = m.at(r, col) / p;
        for (size_t c = col; c < cols_; ++c) m.at(r, c) -= factor * m.at(row, c);
      }
    }
    if (negate) result = zero_element() - result;
    return result;
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    const T zero = zero_element();
    Matrix m = *this;
    Matrix inv(rows_, cols_, zero);
    // identity block is seeded lazily once a pivot provides a unit
    bool seeded = false;
    for (size_t col = 0; col < cols_; ++col) {
      size_t pivot = col;
      while (pivot < rows_ && m.at(pivot, col).is_zero()) ++pivot;
      if (pivot == rows_) throw std::domain_error("singular matrix");
      if (!seeded) {
        T one = m.at(pivot, col) / m.at(pivot, col);
        for (size_t k = 0; k < rows_; ++k) inv.at(k, k) = one;
        seeded = true;
      }
      if (pivot != col) {
        m.swap_rows(pivot, col);
        inv.swap_rows(pivot, col);
      }
      T p = m.at(col, col);
      for (size_t c = 0; c < cols_; ++c) {
        m.at(col, c) /= p;
        inv.at(col, c) /= p;
      }
      for (size_t r = 0; r < rows_; ++r) {
        if (r == col || m.at(r, col).is_zero()) continue;
        T factor = m.at(r, col);
        for (size_t c = 0; c < cols_; ++c) {
          m.at(r, c) -= factor * m.at(col, c);
          inv.at(r, c) -= factor * inv.at(col, c);
        }
      }
    }
    return inv;
  }

  size_t rank() const {
    Matrix m = *this;
    size_t r = 0;
    for (size_t col = 0; col < cols_ && r < rows_; ++col) {
      size_t pivot = r;
      while (pivot < rows_ && m.at(pivot, col).is_zero()) ++pivot;
      if (pivot == rows_) continue;
      m.swap_rows(pivot, r);
      const T p = m.at(r, col);
      for (size_t rr = r + 1; rr < rows_; ++rr) {
        if (m.at(rr, col).is_zero()) continue;
        T factor = m.at(rr, col) / p;
        for (size_t c = col; c < cols_; ++c) m.at(rr, c) -= factor * m.at(r, c);
      }
      ++r;
    }
    return r;
  }

  // Basis of {x : Ax = 0}, one column vector per free variable. Requires
  // T(0)/T(1); only instantiated over scalar fields, where degenerate
  // shapes (zero rows, zero map) still need identity elements.
  std::vector<std::vector<T>> kernel_basis() const {
    const T zero(0), one(1);
    Matrix m = *this;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t col = 0; col < cols_ && r < rows_; ++col) {
      size_t pivot = r;
      while (pivot < rows_ && m.at(pivot, col).is_zero()) ++pivot;
      if (pivot == rows_) continue;
      m.swap_rows(pivot, r);
      T p = m.at(r, col);
      for (size_t c = col; c < cols_; ++c) m.at(r, c) /= p;
      for (size_t rr = 0; rr < rows_; ++rr) {
        if (rr == r || m.at(rr, col).is_zero()) continue;
        T factor = m.at(rr, col);
        for (size_t c = col; c < cols_; ++c) m.at(rr, c) -= factor * m.at(r, c);
      }
      pivot_col.push_back(col);
      ++r;
    }
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<T> v(cols_, zero);
      v[free] = one;
      for (size_t k = 0; k < pivot_col.size(); ++k)
        v[pivot_col[k]] = zero - m.at(k, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // i-th wedge power: entries are i x i minors, rows/cols indexed by
  // lexicographic index combinations.
  Matrix compound(size_t i) const {
    auto row_sets = combinations(rows_, i);
    auto col_sets = combinations(cols_, i);
    Matrix r(row_sets.size(), col_sets.size(), zero_element());
    for (size_t a = 0; a < row_sets.size(); ++a)
      for (size_t b = 0; b < col_sets.size(); ++b)
        r.at(a, b) = submatrix(row_sets[a], col_sets[b]).det();
    return r;
  }

  static std::vector<std::vector<size_t>> combinations(size_t n, size_t k) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
      if (cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (size_t v = start; v < n; ++v) {
        cur.push_back(v);
        rec(v + 1);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  }

 private:
  void check_shape(size_t r, size_t c) const {
    if (rows_ != r || cols_ != c) throw std::invalid_argument("matrix shape mismatch");
  }
  void swap_rows(size_t a, size_t b) {
    for (size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
  }

  size_t rows_, cols_;
  std::vector<T> data_;
};

}  // namespace branchkit
