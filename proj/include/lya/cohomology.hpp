#pragma once

// Yamaguti cochains, coboundary operators and cohomology dimensions.
//
// An n-cochain is an n-linear map (Q^d)^n -> Q^e that vanishes whenever two
// arguments of a consecutive pair (x_{2i-1}, x_{2i}) coincide. Over Q that is
// antisymmetry in each pair, so a cochain is stored by its values on tuples
// whose pairs are strictly increasing, plus a trailing free index for odd n.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lya/algebra.hpp"
#include "lya/linalg.hpp"
#include "lya/representation.hpp"

namespace lya {

inline constexpr std::size_t kDefaultSizeCap = 50'000;

/// Number of coordinates of C^n for a d-dimensional algebra and e-dimensional module.
std::size_t cochain_dim(std::size_t n, std::size_t d, std::size_t e);

/// Number of slot pairs i < j.
inline std::size_t pair_count(std::size_t d) { return d < 2 ? 0 : d * (d - 1) / 2; }

class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t degree, std::size_t algebra_dim, std::size_t module_dim);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t algebra_dim() const noexcept { return d_; }
  std::size_t module_dim() const noexcept { return e_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  /// Number of canonical argument tuples; size() == tuple_count() * module_dim().
  std::size_t tuple_count() const noexcept { return e_ == 0 ? 0 : coeffs_.size() / e_; }

  std::span<const Rational> coeffs() const noexcept { return coeffs_; }
  std::span<Rational> coeffs() noexcept { return coeffs_; }

  /// Canonical argument tuple (0-based basis indices) of the t-th stored value.
  std::vector<std::size_t> tuple_at(std::size_t t) const;
  /// Stored value at a canonical tuple (each pair strictly increasing).
  std::span<Rational> value(std::span<const std::size_t> canonical);
  std::span<const Rational> value(std::span<const std::size_t> canonical) const;

  /// out += scale * f(e_{args...}) for basis arguments in any order.
  void accumulate(std::span<const std::size_t> args, const Rational& scale, std::span<Rational> out) const;
  /// out += scale * f(..., v, ...) with the basis argument at `slot` replaced by vector v.
  void accumulate(std::span<const std::size_t> args, std::size_t slot, std::span<const Rational> v,
                  const Rational& scale, std::span<Rational> out) const;
  Vector eval(std::span<const std::size_t> args) const;
  /// Full multilinear evaluation on arbitrary vectors.
  Vector eval_vectors(std::span<const Vector> args) const;

  friend bool operator==(const Cochain&, const Cochain&) = default;

 private:
  // Returns the storage offset and the sign, or nullopt when a pair repeats.
  std::optional<std::pair<std::size_t, int>> locate(std::span<const std::size_t> args) const;

  std::size_t degree_ = 0;
  std::size_t d_ = 0;
  std::size_t e_ = 0;
  std::vector<Rational> coeffs_;
};

/// (f, g) in C^(2p, 2p+1).
struct CochainPair {
  std::size_t p = 1;
  Cochain f;
  Cochain g;

  CochainPair() = default;
  CochainPair(std::size_t level, std::size_t algebra_dim, std::size_t module_dim);

  std::size_t size() const noexcept { return f.size() + g.size(); }
  Vector flatten() const;
  static CochainPair unflatten(std::size_t level, std::size_t algebra_dim, std::size_t module_dim,
                               std::span<const Rational> flat);
  bool is_zero() const { return lya::is_zero(f.coeffs()) && lya::is_zero(g.coeffs()); }
  friend bool operator==(const CochainPair&, const CochainPair&) = default;
};

/// Image of delta_star: a 3-cochain alternating in all arguments and a
/// 4-cochain alternating in its first three. Values are stored on x1<x2<x3
/// (and every x4).
struct StarCochain {
  std::size_t d = 0;
  std::size_t e = 0;
  Vector first;
  Vector second;

  Vector flatten() const;
  bool is_zero() const { return lya::is_zero(first) && lya::is_zero(second); }
};

/// f in C^1 = Hom(Q^d, Q^e) as a degree-1 cochain.
Cochain cochain_from_map(const Matrix& f);
Matrix map_from_cochain(const Cochain& f);

/// Coboundary C^(2p,2p+1) -> C^(2p+2,2p+3), p >= 1.
CochainPair delta(const Algebra& a, const Representation& r, const CochainPair& c);
/// Coboundary of the diagonal element (f, f) of C^0, f in C^1.
CochainPair delta_zero(const Algebra& a, const Representation& r, const Cochain& f);
/// delta_star: C^(2,3) -> C^(3,4).
StarCochain delta_star(const Algebra& a, const Representation& r, const CochainPair& c);

/// Matrix of delta at level p (p = 0 is delta_zero on C^1), columns indexed
/// by flattened cochains. Inputs are not validated.
Matrix delta_matrix(const Algebra& a, const Representation& r, std::size_t p);
Matrix delta_star_matrix(const Algebra& a, const Representation& r);

struct H1Result {
  std::size_t dim = 0;
  SubspaceBasis cocycles;
};

struct CohomologyResult {
  std::size_t p = 1;
  SubspaceBasis z;
  SubspaceBasis b;
  std::size_t dim_z = 0;
  std::size_t dim_b = 0;
  std::size_t dim_h = 0;
  bool delta_squared_zero = false;
  /// How Z was cut out, recorded in reports.
  std::string z_reading;
};

H1Result h1(const Algebra& a, const Representation& r);
CohomologyResult h23(const Algebra& a, const Representation& r);
CohomologyResult h_upper(const Algebra& a, const Representation& r, std::size_t p,
                         std::size_t size_cap = kDefaultSizeCap);

namespace detail {

/// delta_star with configurable signs on the three rho(x_i) f(x_j, x_k) terms.
/// Only used to confirm that {-1, -1, -1} is the admissible choice.
StarCochain delta_star_signed(const Algebra& a, const Representation& r, const CochainPair& c,
                              std::array<int, 3> rho_signs);

/// The general level-p formula evaluated at p = 0 with f = g.
CochainPair delta_general_at_zero(const Algebra& a, const Representation& r, const Cochain& f);

}  // namespace detail

/// Throws InvalidAlgebra / ShapeMismatch / InvalidRepresentation unless (a, r) is usable.
void require_module(const Algebra& a, const Representation& r);

}  // namespace lya
