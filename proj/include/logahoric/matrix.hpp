#pragma once

// Dense matrices over an exact commutative ring (Rational or Poly).

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logahoric/poly.hpp"
#include "logahoric/rational.hpp"

namespace logahoric {

template <class T>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  BasicMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeError("ragged matrix literal");
      for (const auto& v : r) data_.push_back(v);
    }
  }

  static BasicMatrix zero(std::size_t n) { return BasicMatrix(n, n); }
  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  /// E_{ij}
  static BasicMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    BasicMatrix m(n, n);
    m(i, j) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!(v == T(0))) return false;
    return true;
  }

  BasicMatrix& operator+=(const BasicMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  BasicMatrix& operator-=(const BasicMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  BasicMatrix& operator*=(const T& c) {
    for (auto& v : data_) v *= c;
    return *this;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
  friend BasicMatrix operator-(BasicMatrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }
  friend BasicMatrix operator*(BasicMatrix a, const T& c) { return a *= c; }
  friend BasicMatrix operator*(const T& c, BasicMatrix a) { return a *= c; }
  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product: inner dimensions differ");
    BasicMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const BasicMatrix& a, const BasicMatrix& b) { return !(a == b); }

  T trace() const {
    require_square("trace");
    T t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  BasicMatrix transpose() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  BasicMatrix pow(unsigned e) const {
    require_square("pow");
    BasicMatrix r = identity(rows_), b = *this;
    while (e) {
      if (e & 1u) r = r * b;
      b = b * b;
      e >>= 1u;
    }
    return r;
  }

  void require_square(const char* what) const {
    if (!square()) throw ShapeError(std::string(what) + ": matrix is not square");
  }

 private:
  void check_same(const BasicMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix sizes differ");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<Rational>;
using PolyMatrixEntries = BasicMatrix<Poly>;

template <class T>
BasicMatrix<T> commutator(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  return a * b - b * a;
}

/// Coefficients c_0..c_n (ascending in lambda) of det(lambda*I - A), by
/// Faddeev-LeVerrier. Valid over any commutative Q-algebra.
template <class T>
std::vector<T> char_poly(const BasicMatrix<T>& a) {
  a.require_square("char_poly");
  const std::size_t n = a.rows();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  BasicMatrix<T> m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    T t = (a * m).trace();
    c[n - k] = -(t / Rational(static_cast<long>(k)));
  }
  return c;
}

/// Elementary symmetric functions e_0..e_n of the eigenvalues:
/// det(lambda - A) = sum_k (-1)^k e_k lambda^{n-k}.
template <class T>
std::vector<T> char_invariants(const BasicMatrix<T>& a) {
  auto c = char_poly(a);
  const std::size_t n = a.rows();
  std::vector<T> e(n + 1, T(0));
  for (std::size_t k = 0; k <= n; ++k) e[k] = (k % 2 ? -c[n - k] : c[n - k]);
  return e;
}

// Field-only routines (Rational entries).

/// Reduced row echelon form in place; returns the rank.
inline std::size_t row_reduce(Matrix& m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(Matrix m) { return row_reduce(m); }

inline Rational det(Matrix m) {
  m.require_square("det");
  const std::size_t n = m.rows();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

/// Inverse, or nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& a) {
  a.require_square("inverse");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  if (row_reduce(aug) < n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (aug(i, i) != 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline bool is_nilpotent(const Matrix& x) {
  x.require_square("is_nilpotent");
  return x.pow(static_cast<unsigned>(x.rows())).is_zero();
}

/// Solves a * v = b for v when consistent (any solution), else nullopt.
inline std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw ShapeError("solve: rhs size mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  row_reduce(aug);
  std::vector<Rational> v(a.cols(), Rational(0));
  for (std::size_t i = 0; i < aug.rows(); ++i) {
    std::size_t lead = 0;
    while (lead < aug.cols() && aug(i, lead) == 0) ++lead;
    if (lead == aug.cols()) continue;
    if (lead == a.cols()) return std::nullopt;
    v[lead] = aug(i, a.cols());
  }
  return v;
}

/// Basis of the right null space of a.
inline std::vector<std::vector<Rational>> null_space(Matrix a) {
  row_reduce(a);
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::size_t lead = 0;
    while (lead < a.cols() && a(i, lead) == 0) ++lead;
    if (lead == a.cols()) break;
    pivot_col.push_back(lead);
    is_pivot[lead] = true;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(a.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::string to_string(const Matrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

/// Polynomial in z with matrix coefficients: A(z) = sum_k coeffs[k] z^k.
class PolynomialMatrix {
 public:
  PolynomialMatrix() = default;
  PolynomialMatrix(std::size_t n, std::vector<Matrix> coeffs) : n_(n), coeffs_(std::move(coeffs)) { trim(); }

  std::size_t size() const { return n_; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Matrix>& coeffs() const { return coeffs_; }
  Matrix coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Matrix::zero(n_); }

  Matrix operator()(const Rational& z) const {
    Matrix acc = Matrix::zero(n_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Entry-wise polynomial view.
  PolyMatrixEntries entries() const {
    PolyMatrixEntries e(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        std::vector<Rational> c(coeffs_.size());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k](i, j);
        e(i, j) = Poly(std::move(c));
      }
    return e;
  }

  friend bool operator==(const PolynomialMatrix& a, const PolynomialMatrix& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::size_t n_ = 0;
  std::vector<Matrix> coeffs_;
};

}  // namespace logahoric
