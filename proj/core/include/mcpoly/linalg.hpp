#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "mcpoly/rational.hpp"

namespace mcpoly {

using Vector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Vector multiply(const Matrix& a, std::span<const Rational> x);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Exact solution of a·x = b by fraction-free (Bareiss) elimination with
/// row pivoting. Throws SingularMatrix when rank(a) < n.
Vector solve_linear(const Matrix& a, std::span<const Rational> b);

/// Exact rank over the rationals.
std::size_t rank(const Matrix& a);

/// Explicit conversion to the floating-point shadow used by the ellipsoid.
std::vector<double> to_double(std::span<const Rational> v);

}  // namespace mcpoly
