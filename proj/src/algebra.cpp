#include "lya/algebra.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "lya/errors.hpp"

namespace lya {

namespace {

std::string tuple_string(std::initializer_list<std::size_t> idx) {
  std::string s = "(";
  bool first = true;
  for (auto i : idx) {
    if (!first) s += ",";
    s += std::to_string(i + 1);
    first = false;
  }
  return s + ")";
}

void check_length(std::span<const Rational> v, std::size_t n) {
  if (v.size() != n) throw ShapeMismatch("vector length " + std::to_string(v.size()) + " != " + std::to_string(n));
}

// Lexicographically smallest rotation; cyclic identities are reported once per class.
bool is_min_rotation(std::size_t a, std::size_t b, std::size_t c) {
  const std::array<std::size_t, 3> t{a, b, c}, r1{b, c, a}, r2{c, a, b};
  return t <= r1 && t <= r2;
}

}  // namespace

void ProductTable::set(std::size_t i, std::size_t j, std::span<const Rational> value) {
  check_length(value, dim_);
  std::copy(value.begin(), value.end(), coeffs_.begin() + static_cast<std::ptrdiff_t>((i * dim_ + j) * dim_));
}

Vector ProductTable::apply(std::span<const Rational> x, std::span<const Rational> y) const {
  check_length(x, dim_);
  check_length(y, dim_);
  Vector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(y[j]) == 0) continue;
      axpy(x[i] * y[j], basis_product(i, j), out);
    }
  }
  return out;
}

void TernaryTable::set(std::size_t i, std::size_t j, std::size_t k, std::span<const Rational> value) {
  check_length(value, dim_);
  std::copy(value.begin(), value.end(),
            coeffs_.begin() + static_cast<std::ptrdiff_t>(((i * dim_ + j) * dim_ + k) * dim_));
}

Vector TernaryTable::apply(std::span<const Rational> x, std::span<const Rational> y,
                           std::span<const Rational> z) const {
  check_length(x, dim_);
  check_length(y, dim_);
  check_length(z, dim_);
  Vector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Rational xy = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k) {
        if (sgn(z[k]) == 0) continue;
        axpy(xy * z[k], basis_product(i, j, k), out);
      }
    }
  }
  return out;
}

Algebra::Algebra(std::size_t dim, std::string name) : name_(std::move(name)), binary_(dim), ternary_(dim) {}

Algebra::Algebra(std::string name, ProductTable binary, TernaryTable ternary)
    : name_(std::move(name)), binary_(std::move(binary)), ternary_(std::move(ternary)) {
  if (binary_.dim() != ternary_.dim()) throw ShapeMismatch("binary and ternary tables disagree on dimension");
}

void Algebra::set_bracket(std::size_t i, std::size_t j, std::span<const Rational> value) {
  binary_.set(i, j, value);
  Vector neg(value.begin(), value.end());
  for (auto& q : neg) q = -q;
  binary_.set(j, i, neg);
  if (i == j) binary_.set(i, i, zero_vector(dim()));
}

void Algebra::set_triple(std::size_t i, std::size_t j, std::size_t k, std::span<const Rational> value) {
  ternary_.set(i, j, k, value);
  Vector neg(value.begin(), value.end());
  for (auto& q : neg) q = -q;
  ternary_.set(j, i, k, neg);
  if (i == j) ternary_.set(i, i, k, zero_vector(dim()));
}

std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::LY1: return "LY1";
    case Axiom::LY2: return "LY2";
    case Axiom::LY3: return "LY3";
    case Axiom::LY4: return "LY4";
    case Axiom::LY5: return "LY5";
    case Axiom::LY6: return "LY6";
  }
  return "?";
}

std::size_t AxiomReport::count(Axiom a) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [a](const AxiomViolation& v) { return v.axiom == a; }));
}

Vector axiom_defect(const Algebra& a, Axiom axiom, std::span<const Vector> args) {
  auto br = [&](const Vector& x, const Vector& y) { return a.bracket(x, y); };
  auto tr = [&](const Vector& x, const Vector& y, const Vector& z) { return a.triple(x, y, z); };
  auto add = [](Vector& acc, const Vector& v, int sign = 1) { axpy(Rational(sign), v, acc); };
  const std::size_t d = a.dim();
  const std::size_t needed = [&] {
    switch (axiom) {
      case Axiom::LY1: return 2;
      case Axiom::LY2:
      case Axiom::LY3: return 3;
      case Axiom::LY4:
      case Axiom::LY5: return 4;
      case Axiom::LY6: return 5;
    }
    return 0;
  }();
  if (args.size() < needed) throw ShapeMismatch("too few arguments for " + std::string(axiom_name(axiom)));
  Vector out(d);
  switch (axiom) {
    case Axiom::LY1: {
      const auto &x = args[0], &y = args[1];
      add(out, br(x, y));
      add(out, br(y, x));
      break;
    }
    case Axiom::LY2: {
      const auto &x = args[0], &y = args[1], &z = args[2];
      add(out, tr(x, y, z));
      add(out, tr(y, x, z));
      break;
    }
    case Axiom::LY3: {
      const std::array<const Vector*, 3> v{&args[0], &args[1], &args[2]};
      for (int r = 0; r < 3; ++r) {
        const auto &x = *v[r], &y = *v[(r + 1) % 3], &z = *v[(r + 2) % 3];
        add(out, br(br(x, y), z));
        add(out, tr(x, y, z));
      }
      break;
    }
    case Axiom::LY4: {
      const std::array<const Vector*, 3> v{&args[0], &args[1], &args[2]};
      const auto& u = args[3];
      for (int r = 0; r < 3; ++r) add(out, tr(br(*v[r], *v[(r + 1) % 3]), *v[(r + 2) % 3], u));
      break;
    }
    case Axiom::LY5: {
      const auto &x = args[0], &y = args[1], &u = args[2], &v = args[3];
      add(out, tr(x, y, br(u, v)));
      add(out, br(tr(x, y, u), v), -1);
      add(out, br(u, tr(x, y, v)), -1);
      break;
    }
    case Axiom::LY6: {
      const auto &x = args[0], &y = args[1], &u = args[2], &v = args[3], &w = args[4];
      add(out, tr(x, y, tr(u, v, w)));
      add(out, tr(tr(x, y, u), v, w), -1);
      add(out, tr(u, tr(x, y, v), w), -1);
      add(out, tr(u, v, tr(x, y, w)), -1);
      break;
    }
  }
  return out;
}

AxiomReport check_axioms(const Algebra& a) {
  const std::size_t d = a.dim();
  std::vector<Vector> e;
  for (std::size_t i = 0; i < d; ++i) e.push_back(unit_vector(d, i));
  AxiomReport report;
  auto record = [&](Axiom ax, std::vector<std::size_t> tuple, std::vector<Vector> args) {
    Vector defect = axiom_defect(a, ax, args);
    if (!is_zero(defect)) report.violations.push_back({ax, std::move(tuple), std::move(defect)});
  };

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) record(Axiom::LY1, {i, j}, {e[i], e[j]});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) record(Axiom::LY2, {i, j, k}, {e[i], e[j], e[k]});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (is_min_rotation(i, j, k)) record(Axiom::LY3, {i, j, k}, {e[i], e[j], e[k]});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        if (!is_min_rotation(i, j, k)) continue;
        for (std::size_t u = 0; u < d; ++u) record(Axiom::LY4, {i, j, k, u}, {e[i], e[j], e[k], e[u]});
      }
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) record(Axiom::LY5, {x, y, u, v}, {e[x], e[y], e[u], e[v]});
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v)
          for (std::size_t w = 0; w < d; ++w)
            record(Axiom::LY6, {x, y, u, v, w}, {e[x], e[y], e[u], e[v], e[w]});
  return report;
}

bool is_valid(const Algebra& a) { return check_axioms(a).ok(); }

void require_lie(const ProductTable& lie) {
  const std::size_t d = lie.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (lie.at(i, j, k) != -lie.at(j, i, k))
          throw NotALieAlgebra("bracket is not antisymmetric on " + tuple_string({i, j}));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const Vector x = unit_vector(d, i), y = unit_vector(d, j), z = unit_vector(d, k);
        Vector jac = lie.apply(lie.apply(x, y), z);
        axpy(1, lie.apply(lie.apply(y, z), x), jac);
        axpy(1, lie.apply(lie.apply(z, x), y), jac);
        if (!is_zero(jac)) throw NotALieAlgebra("Jacobi identity fails on " + tuple_string({i, j, k}));
      }
}

Algebra from_lie(const ProductTable& lie, std::string name) {
  require_lie(lie);
  const std::size_t d = lie.dim();
  TernaryTable t(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        t.set(i, j, k, lie.apply(lie.basis_product(i, j), unit_vector(d, k)));
  return Algebra(std::move(name), lie, std::move(t));
}

Algebra from_leibniz(const ProductTable& p, std::string name) {
  const std::size_t d = p.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const Vector x = unit_vector(d, i), y = unit_vector(d, j), z = unit_vector(d, k);
        // x(yz) = (xy)z + y(xz)
        Vector defect = p.apply(x, p.apply(y, z));
        axpy(-1, p.apply(p.apply(x, y), z), defect);
        axpy(-1, p.apply(y, p.apply(x, z)), defect);
        if (!is_zero(defect)) throw NotALeibnizAlgebra("Leibniz identity fails on " + tuple_string({i, j, k}));
      }
  ProductTable bin(d);
  TernaryTable ter(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector c(p.basis_product(i, j).begin(), p.basis_product(i, j).end());
      axpy(-1, p.basis_product(j, i), c);
      bin.set(i, j, c);
      for (std::size_t k = 0; k < d; ++k) {
        Vector v = p.apply(p.basis_product(i, j), unit_vector(d, k));
        for (auto& q : v) q = -q;
        ter.set(i, j, k, v);
      }
    }
  return Algebra(std::move(name), std::move(bin), std::move(ter));
}

Algebra from_lie_triple(const TernaryTable& ternary, std::string name) {
  return Algebra(std::move(name), ProductTable(ternary.dim()), ternary);
}

Algebra meson(std::size_t n) {
  if (n == 0) throw ShapeMismatch("meson field needs n >= 1");
  TernaryTable t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) t.at(i, j, k, j) += 1;
        if (k == j) t.at(i, j, k, i) -= 1;
      }
  return from_lie_triple(t, "meson" + std::to_string(n));
}

Algebra from_reductive_pair(const ProductTable& lie, std::span<const std::size_t> h_idx,
                            std::span<const std::size_t> m_idx, std::string name) {
  const std::size_t n = lie.dim();
  std::set<std::size_t> h(h_idx.begin(), h_idx.end()), m(m_idx.begin(), m_idx.end());
  if (h.size() != h_idx.size() || m.size() != m_idx.size() || h.size() + m.size() != n)
    throw NotReductive("h and m do not partition the basis");
  for (auto i : h_idx)
    if (i >= n || m.count(i)) throw NotReductive("h and m do not partition the basis");
  for (auto i : m_idx)
    if (i >= n) throw NotReductive("h and m do not partition the basis");
  require_lie(lie);

  for (auto a : h_idx)
    for (auto b : h_idx)
      for (auto k : m_idx)
        if (sgn(lie.at(a, b, k)) != 0)
          throw NotReductive("<h,h> is not contained in h: <e" + std::to_string(a + 1) + ",e" + std::to_string(b + 1) +
                             "> has a component along m");
  for (auto a : h_idx)
    for (auto b : m_idx)
      for (auto k : h_idx)
        if (sgn(lie.at(a, b, k)) != 0)
          throw NotReductive("<h,m> is not contained in m: <e" + std::to_string(a + 1) + ",e" + std::to_string(b + 1) +
                             "> has a component along h");

  const std::size_t d = m_idx.size();
  Algebra out(d, std::move(name));
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      const std::size_t a = m_idx[p], b = m_idx[q];
      for (std::size_t r = 0; r < d; ++r) out.binary_coeff(p, q, r) = lie.at(a, b, m_idx[r]);
      for (std::size_t s = 0; s < d; ++s) {
        const std::size_t c = m_idx[s];
        for (auto hh : h_idx) {
          const Rational& coeff = lie.at(a, b, hh);
          if (sgn(coeff) == 0) continue;
          for (std::size_t r = 0; r < d; ++r) out.ternary_coeff(p, q, s, r) += coeff * lie.at(hh, c, m_idx[r]);
        }
      }
    }
  return out;
}

Algebra example_3dim() {
  Algebra a(3, "3dim");
  const Vector e3 = unit_vector(3, 2);
  a.set_bracket(0, 1, e3);
  a.set_triple(0, 1, 0, e3);
  return a;
}

Algebra abelian(std::size_t d) { return Algebra(d, "abelian" + std::to_string(d)); }

ProductTable cross_product_lie() {
  ProductTable c(3);
  auto put = [&](std::size_t i, std::size_t j, std::size_t k) {
    c.at(i, j, k) = 1;
    c.at(j, i, k) = -1;
  };
  put(0, 1, 2);
  put(1, 2, 0);
  put(2, 0, 1);
  return c;
}

bool is_homomorphism(const Matrix& phi, const Algebra& a, const Algebra& b) {
  if (phi.rows() != b.dim() || phi.cols() != a.dim())
    throw ShapeMismatch("map has shape " + std::to_string(phi.rows()) + "x" + std::to_string(phi.cols()) +
                        ", expected " + std::to_string(b.dim()) + "x" + std::to_string(a.dim()));
  const std::size_t d = a.dim();
  std::vector<Vector> img;
  for (std::size_t i = 0; i < d; ++i) img.push_back(phi.column(i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (phi * a.binary().basis_product(i, j) != b.bracket(img[i], img[j])) return false;
      for (std::size_t k = 0; k < d; ++k)
        if (phi * a.ternary().basis_product(i, j, k) != b.triple(img[i], img[j], img[k])) return false;
    }
  return true;
}

bool is_automorphism(const Matrix& phi, const Algebra& a) {
  if (phi.rows() != phi.cols()) throw ShapeMismatch("automorphism candidate is not square");
  return is_homomorphism(phi, a, a) && inverse(phi).has_value();
}

bool is_derivation(const Algebra& a, const Matrix& m) {
  const std::size_t d = a.dim();
  if (m.rows() != d || m.cols() != d) throw ShapeMismatch("derivation candidate has wrong shape");
  std::vector<Vector> e, me;
  for (std::size_t i = 0; i < d; ++i) {
    e.push_back(unit_vector(d, i));
    me.push_back(m.column(i));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector lhs = m * a.binary().basis_product(i, j);
      axpy(-1, a.bracket(me[i], e[j]), lhs);
      axpy(-1, a.bracket(e[i], me[j]), lhs);
      if (!is_zero(lhs)) return false;
      for (std::size_t k = 0; k < d; ++k) {
        Vector t = m * a.ternary().basis_product(i, j, k);
        axpy(-1, a.triple(me[i], e[j], e[k]), t);
        axpy(-1, a.triple(e[i], me[j], e[k]), t);
        axpy(-1, a.triple(e[i], e[j], me[k]), t);
        if (!is_zero(t)) return false;
      }
    }
  return true;
}

SubspaceBasis derivations(const Algebra& a) {
  if (!is_valid(a)) throw InvalidAlgebra("derivations requested for an algebra that fails the LY axioms");
  const std::size_t d = a.dim();
  const auto& B = a.binary();
  const auto& T = a.ternary();
  auto var = [d](std::size_t r, std::size_t c) { return r * d + c; };
  std::vector<Vector> rows;
  auto push = [&](Vector&& row) {
    if (!is_zero(row)) rows.push_back(std::move(row));
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        // (D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j])_k = 0
        Vector row(d * d);
        for (std::size_t l = 0; l < d; ++l) row[var(k, l)] += B.at(i, j, l);
        for (std::size_t s = 0; s < d; ++s) {
          row[var(s, i)] -= B.at(s, j, k);
          row[var(s, j)] -= B.at(i, s, k);
        }
        push(std::move(row));
      }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t k = 0; k < d; ++k) {
          Vector row(d * d);
          for (std::size_t m = 0; m < d; ++m) row[var(k, m)] += T.at(i, j, l, m);
          for (std::size_t s = 0; s < d; ++s) {
            row[var(s, i)] -= T.at(s, j, l, k);
            row[var(s, j)] -= T.at(i, s, l, k);
            row[var(s, l)] -= T.at(i, j, s, k);
          }
          push(std::move(row));
        }
  Matrix system(rows.size(), d * d);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < d * d; ++c) system(r, c) = rows[r][c];
  return kernel_basis(system);
}

std::vector<Matrix> derivation_matrices(const Algebra& a) {
  std::vector<Matrix> out;
  const SubspaceBasis basis = derivations(a);
  for (const auto& v : basis.vectors()) out.push_back(unflatten(a.dim(), v));
  return out;
}

Matrix inner_derivation(const Algebra& a, std::span<const Rational> x, std::span<const Rational> y) {
  if (!is_valid(a)) throw InvalidAlgebra("inner derivation of an algebra that fails the LY axioms");
  const std::size_t d = a.dim();
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < d; ++k) cols.push_back(a.triple(x, y, unit_vector(d, k)));
  return Matrix::from_columns(d, cols);
}

bool commutator_closed(std::span<const Matrix> basis) {
  if (basis.empty()) return true;
  const std::size_t n = basis.front().rows();
  std::vector<Vector> flat;
  for (const auto& m : basis) flat.push_back(flatten(m));
  const auto span = SubspaceBasis::span(n * n, flat);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!span.contains(flatten(commutator(basis[i], basis[j])))) return false;
  return true;
}

Vector flatten(const Matrix& m) { return Vector(m.entries().begin(), m.entries().end()); }

Matrix unflatten(std::size_t n, std::span<const Rational> v) {
  if (v.size() != n * n) throw ShapeMismatch("flattened matrix has wrong length");
  return Matrix(n, n, Vector(v.begin(), v.end()));
}

}  // namespace lya
