#include "lya/linalg.hpp"

#include <algorithm>
#include <cctype>

#include "lya/errors.hpp"

namespace lya {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

void axpy(const Rational& s, std::span<const Rational> x, std::span<Rational> y) {
  if (sgn(s) == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) y[i] += s * x[i];
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw ShapeMismatch("matrix entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::span<const Vector> columns) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw ShapeMismatch("column length does not match row count");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  Matrix m(rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw ShapeMismatch("ragged matrix literal");
    std::size_t c = 0;
    for (const auto& q : row) m(r, c++) = q;
    ++r;
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

bool Matrix::is_zero() const { return lya::is_zero(entries_); }

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix sum shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix difference shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
  for (auto& q : entries_) q *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product shape mismatch");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& s = a(i, k);
      if (sgn(s) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) m(i, j) += s * b(k, j);
    }
  return m;
}

Vector operator*(const Matrix& a, std::span<const Rational> v) {
  if (a.cols_ != v.size()) throw ShapeMismatch("matrix-vector shape mismatch");
  Vector out(a.rows_);
  for (std::size_t k = 0; k < a.cols_; ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t i = 0; i < a.rows_; ++i)
      if (sgn(a(i, k)) != 0) out[i] += a(i, k) * v[k];
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  for (std::size_t c = 0; c < cols && lead_row < rows; ++c) {
    std::size_t p = lead_row;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != lead_row)
      for (std::size_t j = c; j < cols; ++j) swap(m(p, j), m(lead_row, j));
    const Rational inv = 1 / m(lead_row, c);
    for (std::size_t j = c; j < cols; ++j)
      if (sgn(m(lead_row, j)) != 0) m(lead_row, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead_row || sgn(m(r, c)) == 0) continue;
      const Rational factor = m(r, c);
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(m(lead_row, j)) != 0) m(r, j) -= factor * m(lead_row, j);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return pivots;
}

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return row_reduce(work).size();
}

SubspaceBasis SubspaceBasis::span(std::size_t ambient_dim, std::span<const Vector> vectors) {
  Matrix m(vectors.size(), ambient_dim);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != ambient_dim) throw ShapeMismatch("vector length does not match ambient dimension");
    for (std::size_t c = 0; c < ambient_dim; ++c) m(r, c) = vectors[r][c];
  }
  SubspaceBasis basis(ambient_dim);
  basis.pivots_ = row_reduce(m);
  for (std::size_t r = 0; r < basis.pivots_.size(); ++r) {
    auto row = m.row(r);
    basis.vectors_.emplace_back(row.begin(), row.end());
  }
  return basis;
}

bool SubspaceBasis::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_dim_) throw ShapeMismatch("vector length does not match ambient dimension");
  Vector residual(v.begin(), v.end());
  for (std::size_t r = 0; r < vectors_.size(); ++r) {
    const Rational coeff = residual[pivots_[r]];
    if (sgn(coeff) != 0) axpy(-coeff, vectors_[r], residual);
  }
  return lya::is_zero(residual);
}

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
  return std::all_of(other.vectors_.begin(), other.vectors_.end(),
                     [this](const Vector& v) { return contains(v); });
}

SubspaceBasis kernel_basis(const Matrix& m) {
  Matrix work = m;
  const auto pivots = row_reduce(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> vectors;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work(r, free);
    vectors.push_back(std::move(v));
  }
  return SubspaceBasis::span(m.cols(), vectors);
}

SubspaceBasis image_basis(const Matrix& m) {
  std::vector<Vector> columns;
  columns.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) columns.push_back(m.column(c));
  return SubspaceBasis::span(m.rows(), columns);
}

std::size_t quotient_dim(const SubspaceBasis& z, const SubspaceBasis& b) {
  if (z.ambient_dim() != b.ambient_dim()) throw ShapeMismatch("subspaces live in different ambient spaces");
  if (!z.contains(b)) throw NotASubspace("quotient denominator is not contained in the numerator");
  return z.dim() - b.dim();
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw ShapeMismatch("vstack column mismatch");
  std::vector<Rational> entries(top.entries().begin(), top.entries().end());
  entries.insert(entries.end(), bottom.entries().begin(), bottom.entries().end());
  return Matrix(top.rows() + bottom.rows(), top.cols(), std::move(entries));
}

}  // namespace lya
