#pragma once

// Representations (rho, D, theta) of LY algebras and the semi-direct products
// they induce.

#include <cstddef>
#include <string_view>
#include <vector>

#include "lya/algebra.hpp"
#include "lya/linalg.hpp"

namespace lya {

/// Basis-indexed data of a representation on Q^e: rho(e_i), D(e_i, e_j) and
/// theta(e_i, e_j), each an e x e matrix. No symmetry is imposed on D or theta.
class Representation {
 public:
  Representation() = default;
  Representation(std::size_t algebra_dim, std::size_t module_dim);

  std::size_t algebra_dim() const noexcept { return d_; }
  std::size_t module_dim() const noexcept { return e_; }

  Matrix& rho(std::size_t i) { return rho_[i]; }
  const Matrix& rho(std::size_t i) const { return rho_[i]; }
  Matrix& D(std::size_t i, std::size_t j) { return D_[i * d_ + j]; }
  const Matrix& D(std::size_t i, std::size_t j) const { return D_[i * d_ + j]; }
  Matrix& theta(std::size_t i, std::size_t j) { return theta_[i * d_ + j]; }
  const Matrix& theta(std::size_t i, std::size_t j) const { return theta_[i * d_ + j]; }

  /// Extensions by (bi)linearity to arbitrary algebra elements.
  Matrix rho_of(std::span<const Rational> x) const;
  Matrix D_of(std::span<const Rational> x, std::span<const Rational> y) const;
  Matrix theta_of(std::span<const Rational> x, std::span<const Rational> y) const;

  friend bool operator==(const Representation&, const Representation&) = default;

 private:
  std::size_t d_ = 0;
  std::size_t e_ = 0;
  std::vector<Matrix> rho_;
  std::vector<Matrix> D_;
  std::vector<Matrix> theta_;
};

enum class RepLaw { RLYB1, RLYB2, RLYB3, RLYB4, RLYB5, RLYB6, RLYB7 };
std::string_view rep_law_name(RepLaw law);

struct RepViolation {
  RepLaw law;
  std::vector<std::size_t> tuple;
  Matrix defect;
};

struct RepReport {
  std::vector<RepViolation> violations;  // RLYB1-RLYB6
  std::vector<RepViolation> rlyb7;       // informational

  /// Valid representation: no RLYB1-RLYB6 violations.
  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(RepLaw law) const;
};

/// Evaluates RLYB1-RLYB6 (and RLYB7 as an informational entry) on all basis tuples.
RepReport check_representation(const Algebra& a, const Representation& r);
bool check_rlyb7(const Algebra& a, const Representation& r);

Representation adjoint(const Algebra& a);
Representation trivial_rep(const Algebra& a, std::size_t module_dim);

/// Brackets on algebra + module (algebra basis first, module basis second):
///   [x+u, y+v]   = [x,y] + rho(x)v - rho(y)u
///   {x+u,y+v,z+w} = {x,y,z} + D(x,y)w + theta(y,z)u - theta(x,z)v
/// The result satisfies the LY axioms iff r is a representation of a; r is
/// not required to be valid here.
Algebra semidirect(const Algebra& a, const Representation& r);

struct CochainPair;

/// semidirect() plus f(x, y) on the binary bracket and g(x, y, z) on the
/// ternary bracket of algebra elements.
Algebra twisted_semidirect(const Algebra& a, const Representation& r, const CochainPair& tau);

}  // namespace lya
