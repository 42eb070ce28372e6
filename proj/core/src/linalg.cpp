#include "mcpoly/linalg.hpp"

#include <utility>

#include "mcpoly/errors.hpp"

namespace mcpoly {

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Scales every row by the lcm of its denominators so the system becomes
// integral without changing its solution set.
IntMatrix integral_rows(const Matrix& a, std::span<const Rational> rhs) {
  const bool augmented = !rhs.empty();
  IntMatrix m(a.rows(), std::vector<mpz_class>(a.cols() + (augmented ? 1 : 0)));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).den().get_mpz_t());
    }
    if (augmented) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rhs[r].den().get_mpz_t());
    for (std::size_t c = 0; c < a.cols(); ++c) {
      m[r][c] = a(r, c).num() * (l / a(r, c).den());
    }
    if (augmented) m[r][a.cols()] = rhs[r].num() * (l / rhs[r].den());
  }
  return m;
}

// Bareiss forward elimination over the first `pivot_cols` columns, skipping
// columns without a pivot. Returns the pivot column of each pivot row.
std::vector<std::size_t> bareiss(IntMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.size();
  if (rows == 0) return pivots;
  const std::size_t width = m[0].size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < width; ++j) {
        mpz_class t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector multiply(const Matrix& a, std::span<const Rational> x) {
  if (x.size() != a.cols()) throw ValidationError("multiply: dimension mismatch");
  Vector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) out[r] = dot(a.row(r), x);
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw ValidationError("dot: dimension mismatch");
  mpq_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].raw() * b[i].raw();
  return Rational(acc);
}

Vector solve_linear(const Matrix& a, std::span<const Rational> b) {
  if (!a.square()) throw ValidationError("solve_linear: matrix is not square");
  if (b.size() != a.rows())
    throw ValidationError("solve_linear: right-hand side has wrong length");
  const std::size_t n = a.rows();
  if (n == 0) return {};

  IntMatrix m = integral_rows(a, b);
  const auto pivots = bareiss(m, n);
  if (pivots.size() < n)
    throw SingularMatrix("solve_linear: matrix has rank " +
                         std::to_string(pivots.size()) + " < " +
                         std::to_string(n));

  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    mpq_class acc(m[ii][n]);
    for (std::size_t j = ii + 1; j < n; ++j) acc -= m[ii][j] * x[j].raw();
    acc /= mpq_class(m[ii][ii]);
    x[ii] = Rational(acc);
  }
  return x;
}

std::size_t rank(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  IntMatrix m = integral_rows(a, {});
  return bareiss(m, a.cols()).size();
}

std::vector<double> to_double(std::span<const Rational> v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(r.to_double());
  return out;
}

}  // namespace mcpoly
