#include "lya/representation.hpp"

#include <algorithm>

#include "lya/cohomology.hpp"
#include "lya/errors.hpp"

namespace lya {

Representation::Representation(std::size_t algebra_dim, std::size_t module_dim)
    : d_(algebra_dim),
      e_(module_dim),
      rho_(algebra_dim, Matrix(module_dim, module_dim)),
      D_(algebra_dim * algebra_dim, Matrix(module_dim, module_dim)),
      theta_(algebra_dim * algebra_dim, Matrix(module_dim, module_dim)) {}

Matrix Representation::rho_of(std::span<const Rational> x) const {
  if (x.size() != d_) throw ShapeMismatch("rho argument has wrong length");
  Matrix m(e_, e_);
  for (std::size_t i = 0; i < d_; ++i)
    if (sgn(x[i]) != 0) m += rho_[i] * x[i];
  return m;
}

Matrix Representation::D_of(std::span<const Rational> x, std::span<const Rational> y) const {
  if (x.size() != d_ || y.size() != d_) throw ShapeMismatch("D argument has wrong length");
  Matrix m(e_, e_);
  for (std::size_t i = 0; i < d_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < d_; ++j)
      if (sgn(y[j]) != 0) m += D(i, j) * (x[i] * y[j]);
  }
  return m;
}

Matrix Representation::theta_of(std::span<const Rational> x, std::span<const Rational> y) const {
  if (x.size() != d_ || y.size() != d_) throw ShapeMismatch("theta argument has wrong length");
  Matrix m(e_, e_);
  for (std::size_t i = 0; i < d_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < d_; ++j)
      if (sgn(y[j]) != 0) m += theta(i, j) * (x[i] * y[j]);
  }
  return m;
}

std::string_view rep_law_name(RepLaw law) {
  switch (law) {
    case RepLaw::RLYB1: return "RLYB1";
    case RepLaw::RLYB2: return "RLYB2";
    case RepLaw::RLYB3: return "RLYB3";
    case RepLaw::RLYB4: return "RLYB4";
    case RepLaw::RLYB5: return "RLYB5";
    case RepLaw::RLYB6: return "RLYB6";
    case RepLaw::RLYB7: return "RLYB7";
  }
  return "?";
}

std::size_t RepReport::count(RepLaw law) const {
  auto pred = [law](const RepViolation& v) { return v.law == law; };
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(), pred) +
                                  std::count_if(rlyb7.begin(), rlyb7.end(), pred));
}

namespace {

void require_shapes(const Algebra& a, const Representation& r) {
  if (r.algebra_dim() != a.dim())
    throw ShapeMismatch("representation is indexed by " + std::to_string(r.algebra_dim()) +
                        " basis elements, algebra has dimension " + std::to_string(a.dim()));
  const std::size_t d = a.dim(), e = r.module_dim();
  auto ok = [e](const Matrix& m) { return m.rows() == e && m.cols() == e; };
  for (std::size_t i = 0; i < d; ++i) {
    if (!ok(r.rho(i))) throw ShapeMismatch("rho matrix has wrong shape");
    for (std::size_t j = 0; j < d; ++j)
      if (!ok(r.D(i, j)) || !ok(r.theta(i, j))) throw ShapeMismatch("D or theta matrix has wrong shape");
  }
}

std::vector<RepViolation> rlyb7_scan(const Algebra& a, const Representation& r) {
  const std::size_t d = a.dim();
  std::vector<RepViolation> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const Vector ek = unit_vector(d, k), ei = unit_vector(d, i), ej = unit_vector(d, j);
        Matrix m = r.D_of(a.binary().basis_product(i, j), ek);
        m += r.D_of(a.binary().basis_product(j, k), ei);
        m += r.D_of(a.binary().basis_product(k, i), ej);
        if (!m.is_zero()) out.push_back({RepLaw::RLYB7, {i, j, k}, std::move(m)});
      }
  return out;
}

}  // namespace

RepReport check_representation(const Algebra& a, const Representation& r) {
  require_shapes(a, r);
  const std::size_t d = a.dim();
  RepReport report;
  auto record = [&](RepLaw law, std::vector<std::size_t> tuple, Matrix&& defect) {
    if (!defect.is_zero()) report.violations.push_back({law, std::move(tuple), std::move(defect)});
  };
  auto rho_v = [&](std::span<const Rational> v) { return r.rho_of(v); };
  auto B = [&](std::size_t i, std::size_t j) { return a.binary().basis_product(i, j); };
  auto T = [&](std::size_t i, std::size_t j, std::size_t k) { return a.ternary().basis_product(i, j, k); };
  std::vector<Vector> e;
  for (std::size_t i = 0; i < d; ++i) e.push_back(unit_vector(d, i));

  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      // D(a,b) + theta(a,b) - theta(b,a) - [rho(a), rho(b)] + rho([a,b])
      Matrix m = r.D(x, y) + r.theta(x, y) - r.theta(y, x) - commutator(r.rho(x), r.rho(y)) + rho_v(B(x, y));
      record(RepLaw::RLYB1, {x, y}, std::move(m));
    }
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z) {
        // theta(a,[b,c]) - rho(b) theta(a,c) + rho(c) theta(a,b)
        Matrix m2 = r.theta_of(e[x], B(y, z)) - r.rho(y) * r.theta(x, z) + r.rho(z) * r.theta(x, y);
        record(RepLaw::RLYB2, {x, y, z}, std::move(m2));
        // theta([a,b],c) - theta(a,c) rho(b) + theta(b,c) rho(a)
        Matrix m3 = r.theta_of(B(x, y), e[z]) - r.theta(x, z) * r.rho(y) + r.theta(y, z) * r.rho(x);
        record(RepLaw::RLYB3, {x, y, z}, std::move(m3));
        // [D(a,b), rho(c)] - rho({a,b,c})
        Matrix m5 = commutator(r.D(x, y), r.rho(z)) - rho_v(T(x, y, z));
        record(RepLaw::RLYB5, {x, y, z}, std::move(m5));
      }
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w) {
          // theta(c,d) theta(a,b) - theta(b,d) theta(a,c) - theta(a,{b,c,d}) + D(b,c) theta(a,d)
          Matrix m4 = r.theta(z, w) * r.theta(x, y) - r.theta(y, w) * r.theta(x, z) - r.theta_of(e[x], T(y, z, w)) +
                      r.D(y, z) * r.theta(x, w);
          record(RepLaw::RLYB4, {x, y, z, w}, std::move(m4));
          // [D(a,b), theta(c,d)] - theta({a,b,c},d) - theta(c,{a,b,d})
          Matrix m6 = commutator(r.D(x, y), r.theta(z, w)) - r.theta_of(T(x, y, z), e[w]) -
                      r.theta_of(e[z], T(x, y, w));
          record(RepLaw::RLYB6, {x, y, z, w}, std::move(m6));
        }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const RepViolation& l, const RepViolation& r) { return l.law < r.law; });
  report.rlyb7 = rlyb7_scan(a, r);
  return report;
}

bool check_rlyb7(const Algebra& a, const Representation& r) {
  require_shapes(a, r);
  return rlyb7_scan(a, r).empty();
}

Representation adjoint(const Algebra& a) {
  if (!is_valid(a)) throw InvalidAlgebra("adjoint representation of an algebra that fails the LY axioms");
  const std::size_t d = a.dim();
  Representation r(d, d);
  std::vector<Vector> e;
  for (std::size_t i = 0; i < d; ++i) e.push_back(unit_vector(d, i));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      const Vector v = a.bracket(e[i], e[c]);
      for (std::size_t row = 0; row < d; ++row) r.rho(i)(row, c) = v[row];
    }
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t c = 0; c < d; ++c) {
        const auto dv = a.ternary().basis_product(i, j, c);
        const auto tv = a.ternary().basis_product(c, i, j);
        for (std::size_t row = 0; row < d; ++row) {
          r.D(i, j)(row, c) = dv[row];
          r.theta(i, j)(row, c) = tv[row];
        }
      }
  }
  return r;
}

Representation trivial_rep(const Algebra& a, std::size_t module_dim) { return Representation(a.dim(), module_dim); }

Algebra semidirect(const Algebra& a, const Representation& r) {
  require_shapes(a, r);
  const std::size_t d = a.dim(), e = r.module_dim(), n = d + e;
  Algebra s(n, a.name() + "+module");
  auto mod = [d](std::size_t b) { return d + b; };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) s.binary_coeff(i, j, k) = a.binary().at(i, j, k);
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) s.ternary_coeff(i, j, k, l) = a.ternary().at(i, j, k, l);
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t b = 0; b < e; ++b)
      for (std::size_t row = 0; row < e; ++row) {
        // [x, u] = rho(x)u, [u, x] = -rho(x)u
        s.binary_coeff(i, mod(b), mod(row)) = r.rho(i)(row, b);
        s.binary_coeff(mod(b), i, mod(row)) = -r.rho(i)(row, b);
      }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t b = 0; b < e; ++b)
        for (std::size_t row = 0; row < e; ++row) {
          // {x, y, w} = D(x,y)w;  {u, y, z} = theta(y,z)u;  {x, v, z} = -theta(x,z)v
          s.ternary_coeff(i, j, mod(b), mod(row)) = r.D(i, j)(row, b);
          s.ternary_coeff(mod(b), i, j, mod(row)) = r.theta(i, j)(row, b);
          s.ternary_coeff(i, mod(b), j, mod(row)) = -r.theta(i, j)(row, b);
        }
  return s;
}

Algebra twisted_semidirect(const Algebra& a, const Representation& r, const CochainPair& tau) {
  const std::size_t d = a.dim(), e = r.module_dim();
  if (tau.p != 1 || tau.f.degree() != 2 || tau.g.degree() != 3 || tau.f.algebra_dim() != d ||
      tau.f.module_dim() != e || tau.g.algebra_dim() != d || tau.g.module_dim() != e)
    throw ShapeMismatch("twisting cochain does not have the C^(2,3) shape of this algebra and module");
  Algebra s = semidirect(a, r);
  s.set_name(a.name() + "+twisted");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t ij[2] = {i, j};
      const Vector fv = tau.f.eval(ij);
      for (std::size_t row = 0; row < e; ++row) s.binary_coeff(i, j, d + row) += fv[row];
      for (std::size_t k = 0; k < d; ++k) {
        const std::size_t ijk[3] = {i, j, k};
        const Vector gv = tau.g.eval(ijk);
        for (std::size_t row = 0; row < e; ++row) s.ternary_coeff(i, j, k, d + row) += gv[row];
      }
    }
  return s;
}

}  // namespace lya
