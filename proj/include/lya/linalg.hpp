#pragma once

// Exact rational scalars and dense linear algebra over Q.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lya {

/// Arbitrary-precision rational. GMP keeps every value in lowest terms with a
/// positive denominator, and zero as 0/1.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" (q > 0). Throws ParseError otherwise.
Rational parse_rational(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(std::span<const Rational> v);
/// y += s * x
void axpy(const Rational& s, std::span<const Rational> x, std::span<Rational> y);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static Matrix identity(std::size_t n);
  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, std::span<const Vector> columns);
  static Matrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Rational> entries() const noexcept { return entries_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return std::span<const Rational>(entries_).subspan(r * cols_, cols_);
  }
  std::span<Rational> row(std::size_t r) { return std::span<Rational>(entries_).subspan(r * cols_, cols_); }
  Vector column(std::size_t c) const;

  bool is_zero() const;
  Matrix transpose() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, std::span<const Rational> v);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

Matrix commutator(const Matrix& a, const Matrix& b);

/// A linear subspace of Q^n, stored as the rows of its reduced row echelon form.
class SubspaceBasis {
 public:
  explicit SubspaceBasis(std::size_t ambient_dim = 0) : ambient_dim_(ambient_dim) {}

  /// Span of arbitrary (possibly dependent) vectors.
  static SubspaceBasis span(std::size_t ambient_dim, std::span<const Vector> vectors);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return vectors_.size(); }
  const std::vector<Vector>& vectors() const noexcept { return vectors_; }

  bool contains(std::span<const Rational> v) const;
  bool contains(const SubspaceBasis& other) const;

 private:
  std::size_t ambient_dim_;
  std::vector<Vector> vectors_;
  std::vector<std::size_t> pivots_;
};

/// In-place reduced row echelon form; returns the pivot column of each nonzero row.
std::vector<std::size_t> row_reduce(Matrix& m);

std::size_t rank(const Matrix& m);
SubspaceBasis kernel_basis(const Matrix& m);
/// Column space of m.
SubspaceBasis image_basis(const Matrix& m);
/// dim z - dim b; throws NotASubspace unless b lies in z.
std::size_t quotient_dim(const SubspaceBasis& z, const SubspaceBasis& b);
std::optional<Matrix> inverse(const Matrix& m);

/// Stacks the rows of `bottom` under `top` (same column count).
Matrix vstack(const Matrix& top, const Matrix& bottom);

}  // namespace lya
