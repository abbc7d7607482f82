#include "lya/cohomology.hpp"

#include "lya/errors.hpp"

namespace lya {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// (i, j) with i < j, enumerated row by row.
std::size_t pair_index(std::size_t d, std::size_t i, std::size_t j) { return i * d - i * (i + 1) / 2 + (j - i - 1); }

std::pair<std::size_t, std::size_t> pair_at(std::size_t d, std::size_t idx) {
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t row = d - i - 1;
    if (idx < row) return {i, i + 1 + idx};
    idx -= row;
  }
  throw ShapeMismatch("pair index out of range");
}

int sign_pow(std::size_t k) { return k % 2 == 0 ? 1 : -1; }

std::vector<std::size_t> without_pair(std::span<const std::size_t> x, std::size_t first) {
  std::vector<std::size_t> rest;
  rest.reserve(x.size() - 2);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != first && i != first + 1) rest.push_back(x[i]);
  return rest;
}

// All coboundaries are evaluated on basis tuples; rho/D/theta of basis
// elements are looked up directly.
struct Context {
  const Algebra& a;
  const Representation& r;
  std::size_t d;
  std::size_t e;

  std::span<const Rational> br(std::size_t i, std::size_t j) const { return a.binary().basis_product(i, j); }
  std::span<const Rational> tr(std::size_t i, std::size_t j, std::size_t k) const {
    return a.ternary().basis_product(i, j, k);
  }
  void apply(const Matrix& m, std::span<const Rational> v, const Rational& scale, std::span<Rational> out) const {
    if (lya::is_zero(v) || m.is_zero()) return;
    axpy(scale, m * v, out);
  }
};

// Values of (delta_I f)(x_1..x_{2p+2}) and (delta_II g)(x_1..x_{2p+3}) at basis tuples.
void delta_I_at(const Context& c, std::size_t p, const Cochain& f, const Cochain& g, std::span<const std::size_t> x,
                std::span<Rational> out) {
  const Rational s = sign_pow(p);
  const std::size_t n = 2 * p + 2;
  std::vector<std::size_t> head(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(2 * p));
  std::vector<std::size_t> args = head;
  args.push_back(0);

  Vector tmp(c.e);
  // (-1)^p [rho(x_{2p+1}) g(.., x_{2p+2}) - rho(x_{2p+2}) g(.., x_{2p+1}) - g(.., [x_{2p+1}, x_{2p+2}])]
  args.back() = x[n - 1];
  tmp = g.eval(args);
  c.apply(c.r.rho(x[n - 2]), tmp, s, out);
  args.back() = x[n - 2];
  tmp = g.eval(args);
  c.apply(c.r.rho(x[n - 1]), tmp, -s, out);
  g.accumulate(args, 2 * p, c.br(x[n - 2], x[n - 1]), -s, out);

  // sum_{k=1}^{p} (-1)^{k+1} D(x_{2k-1}, x_{2k}) f(..hat..)
  for (std::size_t k = 1; k <= p; ++k) {
    const auto rest = without_pair(x, 2 * k - 2);
    tmp = f.eval(rest);
    c.apply(c.r.D(x[2 * k - 2], x[2 * k - 1]), tmp, Rational(sign_pow(k + 1)), out);
  }
  // sum_{k=1}^{p+1} sum_{j=2k+1}^{2p+2} (-1)^k f(..hat.., {x_{2k-1}, x_{2k}, x_j}, ..)
  for (std::size_t k = 1; k <= p + 1; ++k) {
    const auto rest = without_pair(x, 2 * k - 2);
    for (std::size_t j = 2 * k; j < n; ++j)
      f.accumulate(rest, j - 2, c.tr(x[2 * k - 2], x[2 * k - 1], x[j]), Rational(sign_pow(k)), out);
  }
}

void delta_II_at(const Context& c, std::size_t p, const Cochain& g, std::span<const std::size_t> x,
                 std::span<Rational> out) {
  const Rational s = sign_pow(p);
  const std::size_t n = 2 * p + 3;
  Vector tmp(c.e);
  // (-1)^p [theta(x_{2p+2}, x_{2p+3}) g(x_1..x_{2p+1}) - theta(x_{2p+1}, x_{2p+3}) g(x_1..x_{2p}, x_{2p+2})]
  std::vector<std::size_t> args(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(2 * p + 1));
  tmp = g.eval(args);
  c.apply(c.r.theta(x[n - 2], x[n - 1]), tmp, s, out);
  args.back() = x[n - 2];
  tmp = g.eval(args);
  c.apply(c.r.theta(x[n - 3], x[n - 1]), tmp, -s, out);

  for (std::size_t k = 1; k <= p + 1; ++k) {
    const auto rest = without_pair(x, 2 * k - 2);
    tmp = g.eval(rest);
    c.apply(c.r.D(x[2 * k - 2], x[2 * k - 1]), tmp, Rational(sign_pow(k + 1)), out);
    for (std::size_t j = 2 * k; j < n; ++j)
      g.accumulate(rest, j - 2, c.tr(x[2 * k - 2], x[2 * k - 1], x[j]), Rational(sign_pow(k)), out);
  }
}

CochainPair delta_unchecked(const Context& c, const CochainPair& in) {
  const std::size_t p = in.p;
  CochainPair out(p + 1, c.d, c.e);
  for (std::size_t t = 0; t < out.f.tuple_count(); ++t) {
    const auto x = out.f.tuple_at(t);
    delta_I_at(c, p, in.f, in.g, x, out.f.value(x));
  }
  for (std::size_t t = 0; t < out.g.tuple_count(); ++t) {
    const auto x = out.g.tuple_at(t);
    delta_II_at(c, p, in.g, x, out.g.value(x));
  }
  return out;
}

CochainPair delta_zero_unchecked(const Context& c, const Cochain& f) {
  CochainPair out(1, c.d, c.e);
  Vector tmp;
  for (std::size_t t = 0; t < out.f.tuple_count(); ++t) {
    const auto x = out.f.tuple_at(t);
    auto v = out.f.value(x);
    // rho(x1) f(x2) - rho(x2) f(x1) - f([x1, x2])
    c.apply(c.r.rho(x[0]), f.eval(std::span(&x[1], 1)), 1, v);
    c.apply(c.r.rho(x[1]), f.eval(std::span(&x[0], 1)), -1, v);
    f.accumulate(std::span(&x[0], 1), 0, c.br(x[0], x[1]), -1, v);
  }
  for (std::size_t t = 0; t < out.g.tuple_count(); ++t) {
    const auto x = out.g.tuple_at(t);
    auto v = out.g.value(x);
    // theta(x2,x3) f(x1) - theta(x1,x3) f(x2) + D(x1,x2) f(x3) - f({x1,x2,x3})
    c.apply(c.r.theta(x[1], x[2]), f.eval(std::span(&x[0], 1)), 1, v);
    c.apply(c.r.theta(x[0], x[2]), f.eval(std::span(&x[1], 1)), -1, v);
    c.apply(c.r.D(x[0], x[1]), f.eval(std::span(&x[2], 1)), 1, v);
    f.accumulate(std::span(&x[0], 1), 0, c.tr(x[0], x[1], x[2]), -1, v);
  }
  return out;
}

std::size_t triple_count(std::size_t d) { return d < 3 ? 0 : d * (d - 1) * (d - 2) / 6; }

std::vector<std::array<std::size_t, 3>> increasing_triples(std::size_t d) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) out.push_back({i, j, k});
  return out;
}

StarCochain delta_star_unchecked(const Context& c, const CochainPair& in, std::array<int, 3> rho_signs) {
  const auto& f = in.f;
  const auto& g = in.g;
  StarCochain out{c.d, c.e, Vector(triple_count(c.d) * c.e), Vector(triple_count(c.d) * c.d * c.e)};
  const auto triples = increasing_triples(c.d);
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto& x = triples[t];
    std::span<Rational> v(out.first.data() + t * c.e, c.e);
    for (std::size_t r = 0; r < 3; ++r) {
      const std::size_t a = x[r], b = x[(r + 1) % 3], cc = x[(r + 2) % 3];
      const std::size_t bc[2] = {b, cc};
      const std::size_t first_slot[2] = {0, cc};
      const std::size_t abc[3] = {a, b, cc};
      // s_r rho(x_a) f(x_b, x_c) + f([x_a, x_b], x_c) + g(x_a, x_b, x_c), cyclically
      c.apply(c.r.rho(a), f.eval(bc), Rational(rho_signs[r]), v);
      f.accumulate(first_slot, 0, c.br(a, b), 1, v);
      g.accumulate(abc, 1, v);
    }
    for (std::size_t w = 0; w < c.d; ++w) {
      std::span<Rational> v2(out.second.data() + (t * c.d + w) * c.e, c.e);
      for (std::size_t r = 0; r < 3; ++r) {
        const std::size_t a = x[r], b = x[(r + 1) % 3], cc = x[(r + 2) % 3];
        const std::size_t bc[2] = {b, cc};
        const std::size_t slot_cw[3] = {0, cc, w};
        // theta(x_a, x_4) f(x_b, x_c) + g([x_a, x_b], x_c, x_4), cyclically
        c.apply(c.r.theta(a, w), f.eval(bc), 1, v2);
        g.accumulate(slot_cw, 0, c.br(a, b), 1, v2);
      }
    }
  }
  return out;
}

Matrix columns_to_matrix(std::size_t rows, const std::vector<Vector>& columns) {
  return Matrix::from_columns(rows, columns);
}

void require_cap(std::size_t size, std::size_t cap, const std::string& what) {
  if (size > cap)
    throw SizeCapExceeded(what + " has " + std::to_string(size) + " coordinates, above the cap of " +
                          std::to_string(cap));
}

}  // namespace

std::size_t cochain_dim(std::size_t n, std::size_t d, std::size_t e) {
  if (n == 0) throw ShapeMismatch("cochain degree must be at least 1");
  const std::size_t pairs = ipow(pair_count(d), n / 2);
  return pairs * (n % 2 == 1 ? d : 1) * e;
}

Cochain::Cochain(std::size_t degree, std::size_t algebra_dim, std::size_t module_dim)
    : degree_(degree), d_(algebra_dim), e_(module_dim), coeffs_(cochain_dim(degree, algebra_dim, module_dim)) {}

std::vector<std::size_t> Cochain::tuple_at(std::size_t t) const {
  const std::size_t P = pair_count(d_);
  std::vector<std::size_t> args(degree_);
  std::size_t key = t;
  if (degree_ % 2 == 1) {
    args[degree_ - 1] = key % d_;
    key /= d_;
  }
  for (std::size_t q = degree_ / 2; q-- > 0;) {
    const auto [i, j] = pair_at(d_, key % P);
    key /= P;
    args[2 * q] = i;
    args[2 * q + 1] = j;
  }
  return args;
}

std::optional<std::pair<std::size_t, int>> Cochain::locate(std::span<const std::size_t> args) const {
  if (args.size() != degree_) throw ShapeMismatch("cochain evaluated with the wrong number of arguments");
  const std::size_t P = pair_count(d_);
  std::size_t key = 0;
  int sign = 1;
  for (std::size_t q = 0; q < degree_ / 2; ++q) {
    std::size_t i = args[2 * q], j = args[2 * q + 1];
    if (i == j) return std::nullopt;
    if (i > j) {
      std::swap(i, j);
      sign = -sign;
    }
    key = key * P + pair_index(d_, i, j);
  }
  if (degree_ % 2 == 1) key = key * d_ + args[degree_ - 1];
  return std::make_pair(key * e_, sign);
}

std::span<Rational> Cochain::value(std::span<const std::size_t> canonical) {
  const auto loc = locate(canonical);
  if (!loc || loc->second != 1) throw ShapeMismatch("tuple is not canonical");
  return std::span<Rational>(coeffs_).subspan(loc->first, e_);
}

std::span<const Rational> Cochain::value(std::span<const std::size_t> canonical) const {
  const auto loc = locate(canonical);
  if (!loc || loc->second != 1) throw ShapeMismatch("tuple is not canonical");
  return std::span<const Rational>(coeffs_).subspan(loc->first, e_);
}

void Cochain::accumulate(std::span<const std::size_t> args, const Rational& scale, std::span<Rational> out) const {
  const auto loc = locate(args);
  if (!loc || sgn(scale) == 0) return;
  axpy(loc->second == 1 ? scale : Rational(-scale), std::span<const Rational>(coeffs_).subspan(loc->first, e_), out);
}

void Cochain::accumulate(std::span<const std::size_t> args, std::size_t slot, std::span<const Rational> v,
                         const Rational& scale, std::span<Rational> out) const {
  std::vector<std::size_t> work(args.begin(), args.end());
  for (std::size_t l = 0; l < v.size(); ++l) {
    if (sgn(v[l]) == 0) continue;
    work[slot] = l;
    accumulate(work, scale * v[l], out);
  }
}

Vector Cochain::eval(std::span<const std::size_t> args) const {
  Vector out(e_);
  accumulate(args, 1, out);
  return out;
}

Vector Cochain::eval_vectors(std::span<const Vector> args) const {
  if (args.size() != degree_) throw ShapeMismatch("cochain evaluated with the wrong number of arguments");
  Vector out(e_);
  if (d_ == 0 && degree_ > 0) return out;
  std::vector<std::size_t> idx(degree_, 0);
  // Odometer over all basis tuples with nonzero coefficient product.
  while (true) {
    Rational coeff = 1;
    for (std::size_t s = 0; s < degree_ && sgn(coeff) != 0; ++s) coeff *= args[s][idx[s]];
    if (sgn(coeff) != 0) accumulate(idx, coeff, out);
    std::size_t s = degree_;
    while (s > 0) {
      --s;
      if (++idx[s] < d_) break;
      idx[s] = 0;
      if (s == 0) return out;
    }
    if (degree_ == 0) return out;
  }
}

CochainPair::CochainPair(std::size_t level, std::size_t algebra_dim, std::size_t module_dim)
    : p(level), f(2 * level, algebra_dim, module_dim), g(2 * level + 1, algebra_dim, module_dim) {}

Vector CochainPair::flatten() const {
  Vector v(f.coeffs().begin(), f.coeffs().end());
  v.insert(v.end(), g.coeffs().begin(), g.coeffs().end());
  return v;
}

CochainPair CochainPair::unflatten(std::size_t level, std::size_t algebra_dim, std::size_t module_dim,
                                   std::span<const Rational> flat) {
  CochainPair c(level, algebra_dim, module_dim);
  if (flat.size() != c.size()) throw ShapeMismatch("flattened cochain has the wrong length");
  std::copy(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(c.f.size()), c.f.coeffs().begin());
  std::copy(flat.begin() + static_cast<std::ptrdiff_t>(c.f.size()), flat.end(), c.g.coeffs().begin());
  return c;
}

Vector StarCochain::flatten() const {
  Vector v = first;
  v.insert(v.end(), second.begin(), second.end());
  return v;
}

Cochain cochain_from_map(const Matrix& f) {
  Cochain c(1, f.cols(), f.rows());
  for (std::size_t i = 0; i < f.cols(); ++i) {
    const std::size_t arg[1] = {i};
    auto v = c.value(arg);
    for (std::size_t s = 0; s < f.rows(); ++s) v[s] = f(s, i);
  }
  return c;
}

Matrix map_from_cochain(const Cochain& f) {
  if (f.degree() != 1) throw ShapeMismatch("not a 1-cochain");
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < f.algebra_dim(); ++i) {
    const std::size_t arg[1] = {i};
    cols.push_back(f.eval(arg));
  }
  return Matrix::from_columns(f.module_dim(), cols);
}

void require_module(const Algebra& a, const Representation& r) {
  if (r.algebra_dim() != a.dim()) throw ShapeMismatch("representation does not match the algebra dimension");
  if (!is_valid(a)) throw InvalidAlgebra("algebra fails the LY axioms");
  if (!check_representation(a, r).ok()) throw InvalidRepresentation("coefficients fail RLYB1-RLYB6");
}

namespace {

void require_cochain_shape(const Algebra& a, const Representation& r, const CochainPair& c) {
  if (c.f.algebra_dim() != a.dim() || c.f.module_dim() != r.module_dim() || c.g.algebra_dim() != a.dim() ||
      c.g.module_dim() != r.module_dim() || c.f.degree() != 2 * c.p || c.g.degree() != 2 * c.p + 1)
    throw ShapeMismatch("cochain shape does not match the algebra and module");
}

}  // namespace

CochainPair delta(const Algebra& a, const Representation& r, const CochainPair& c) {
  if (c.p < 1) throw ShapeMismatch("delta is defined for p >= 1; use delta_zero on C^1");
  require_cochain_shape(a, r, c);
  require_module(a, r);
  return delta_unchecked(Context{a, r, a.dim(), r.module_dim()}, c);
}

CochainPair delta_zero(const Algebra& a, const Representation& r, const Cochain& f) {
  if (f.degree() != 1 || f.algebra_dim() != a.dim() || f.module_dim() != r.module_dim())
    throw ShapeMismatch("1-cochain shape does not match the algebra and module");
  require_module(a, r);
  return delta_zero_unchecked(Context{a, r, a.dim(), r.module_dim()}, f);
}

StarCochain delta_star(const Algebra& a, const Representation& r, const CochainPair& c) {
  if (c.p != 1) throw ShapeMismatch("delta_star acts on C^(2,3)");
  require_cochain_shape(a, r, c);
  require_module(a, r);
  return delta_star_unchecked(Context{a, r, a.dim(), r.module_dim()}, c, {-1, -1, -1});
}

Matrix delta_matrix(const Algebra& a, const Representation& r, std::size_t p) {
  const Context c{a, r, a.dim(), r.module_dim()};
  const std::size_t d = c.d, e = c.e;
  std::vector<Vector> columns;
  if (p == 0) {
    Cochain f(1, d, e);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f.coeffs()[i] = 1;
      columns.push_back(delta_zero_unchecked(c, f).flatten());
      f.coeffs()[i] = 0;
    }
    return columns_to_matrix(CochainPair(1, d, e).size(), columns);
  }
  CochainPair in(p, d, e);
  const std::size_t n = in.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vector unit(n);
    unit[i] = 1;
    columns.push_back(delta_unchecked(c, CochainPair::unflatten(p, d, e, unit)).flatten());
  }
  return columns_to_matrix(CochainPair(p + 1, d, e).size(), columns);
}

Matrix delta_star_matrix(const Algebra& a, const Representation& r) {
  const Context c{a, r, a.dim(), r.module_dim()};
  const std::size_t d = c.d, e = c.e;
  const std::size_t n = CochainPair(1, d, e).size();
  std::vector<Vector> columns;
  for (std::size_t i = 0; i < n; ++i) {
    Vector unit(n);
    unit[i] = 1;
    columns.push_back(delta_star_unchecked(c, CochainPair::unflatten(1, d, e, unit), {-1, -1, -1}).flatten());
  }
  const std::size_t rows = triple_count(d) * e * (1 + d);
  return columns_to_matrix(rows, columns);
}

H1Result h1(const Algebra& a, const Representation& r) {
  require_module(a, r);
  auto ker = kernel_basis(delta_matrix(a, r, 0));
  return {ker.dim(), std::move(ker)};
}

CohomologyResult h23(const Algebra& a, const Representation& r) {
  require_module(a, r);
  const Matrix d0 = delta_matrix(a, r, 0);
  const Matrix d1 = delta_matrix(a, r, 1);
  const Matrix ds = delta_star_matrix(a, r);
  const Matrix combined = vstack(d1, ds);
  CohomologyResult res;
  res.p = 1;
  res.z_reading = "Z = ker(delta) ∩ ker(delta_star) on pairs (f, g)";
  res.z = kernel_basis(combined);
  res.b = image_basis(d0);
  res.delta_squared_zero = (combined * d0).is_zero();
  if (!res.z.contains(res.b))
    throw CocycleContainmentFailure("B^(2,3) is not contained in Z^(2,3)");
  res.dim_z = res.z.dim();
  res.dim_b = res.b.dim();
  res.dim_h = quotient_dim(res.z, res.b);
  return res;
}

CohomologyResult h_upper(const Algebra& a, const Representation& r, std::size_t p, std::size_t size_cap) {
  if (p < 2) throw ShapeMismatch("h_upper needs p >= 2");
  const std::size_t d = a.dim(), e = r.module_dim();
  require_cap(CochainPair(p + 1, d, e).size(), size_cap, "C^(2p+2,2p+3)");
  require_module(a, r);
  const Matrix prev = delta_matrix(a, r, p - 1);
  const Matrix cur = delta_matrix(a, r, p);
  CohomologyResult res;
  res.p = p;
  res.z_reading = "Z = ker(delta)";
  res.z = kernel_basis(cur);
  res.b = image_basis(prev);
  res.delta_squared_zero = (cur * prev).is_zero();
  if (!res.z.contains(res.b))
    throw CocycleContainmentFailure("B^(2p,2p+1) is not contained in Z^(2p,2p+1) at p=" + std::to_string(p));
  res.dim_z = res.z.dim();
  res.dim_b = res.b.dim();
  res.dim_h = quotient_dim(res.z, res.b);
  return res;
}

namespace detail {

StarCochain delta_star_signed(const Algebra& a, const Representation& r, const CochainPair& c,
                              std::array<int, 3> rho_signs) {
  return delta_star_unchecked(Context{a, r, a.dim(), r.module_dim()}, c, rho_signs);
}

CochainPair delta_general_at_zero(const Algebra& a, const Representation& r, const Cochain& f) {
  const Context c{a, r, a.dim(), r.module_dim()};
  CochainPair out(1, c.d, c.e);
  // At p = 0, C^0 contributes the same f to both slots: f plays the role of
  // the 0-cochain and g the role of the 1-cochain.
  Cochain empty(1, c.d, c.e);
  for (std::size_t t = 0; t < out.f.tuple_count(); ++t) {
    const auto x = out.f.tuple_at(t);
    delta_I_at(c, 0, empty, f, x, out.f.value(x));
  }
  for (std::size_t t = 0; t < out.g.tuple_count(); ++t) {
    const auto x = out.g.tuple_at(t);
    delta_II_at(c, 0, f, x, out.g.value(x));
  }
  return out;
}

}  // namespace detail

}  // namespace lya
