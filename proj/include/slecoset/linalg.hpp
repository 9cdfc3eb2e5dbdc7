#pragma once

#include "slecoset/rational.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace slecoset {

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_symmetric() const;
  Matrix transpose() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::vector<Rational> operator*(const Matrix& a, const std::vector<Rational>& v);

/// Result of fraction-free (Bareiss) elimination of a rational matrix.
struct EchelonInfo {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  Rational determinant;  // only meaningful for square input
};

/// Rows are scaled to integers, then eliminated with Bareiss' fraction-free
/// recurrence so every intermediate stays an exact integer.
EchelonInfo echelon(const Matrix& m);
std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);

/// Inverse of a nonsingular square matrix (Gauss-Jordan over the rationals).
Matrix inverse(const Matrix& m);

/// Sub-matrix picking the given rows and columns.
Matrix select(const Matrix& m, const std::vector<std::size_t>& rows,
              const std::vector<std::size_t>& cols);

/// Sparse vector over an arbitrary ordered basis key; zero coefficients are
/// never stored.
template <class Key>
using SparseVector = std::map<Key, Rational>;

template <class Key>
void add_scaled(SparseVector<Key>& dst, const SparseVector<Key>& src, const Rational& s) {
  if (s.is_zero()) return;
  for (const auto& [key, coef] : src) {
    auto [it, inserted] = dst.try_emplace(key, coef * s);
    if (!inserted) {
      it->second += coef * s;
      if (it->second.is_zero()) dst.erase(it);
    }
  }
}

template <class Key>
void add_term(SparseVector<Key>& dst, const Key& key, const Rational& s) {
  if (s.is_zero()) return;
  auto [it, inserted] = dst.try_emplace(key, s);
  if (!inserted) {
    it->second += s;
    if (it->second.is_zero()) dst.erase(it);
  }
}

template <class Key>
SparseVector<Key> scaled(const SparseVector<Key>& v, const Rational& s) {
  SparseVector<Key> out;
  add_scaled(out, v, s);
  return out;
}

template <class Key>
SparseVector<Key> operator+(const SparseVector<Key>& a, const SparseVector<Key>& b) {
  SparseVector<Key> out = a;
  add_scaled(out, b, Rational(1));
  return out;
}

template <class Key>
SparseVector<Key> operator-(const SparseVector<Key>& a, const SparseVector<Key>& b) {
  SparseVector<Key> out = a;
  add_scaled(out, b, Rational(-1));
  return out;
}

}  // namespace slecoset
