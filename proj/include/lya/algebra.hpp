#pragma once

// Finite-dimensional Lie-Yamaguti algebras given by structure constants.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lya/linalg.hpp"

namespace lya {

/// Bilinear product on Q^d: at(i, j, k) is the coefficient of e_k in e_i * e_j.
class ProductTable {
 public:
  explicit ProductTable(std::size_t dim = 0) : dim_(dim), coeffs_(dim * dim * dim) {}

  std::size_t dim() const noexcept { return dim_; }
  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return coeffs_[(i * dim_ + j) * dim_ + k]; }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return coeffs_[(i * dim_ + j) * dim_ + k]; }
  /// e_i * e_j as a coordinate vector.
  std::span<const Rational> basis_product(std::size_t i, std::size_t j) const {
    return std::span<const Rational>(coeffs_).subspan((i * dim_ + j) * dim_, dim_);
  }
  void set(std::size_t i, std::size_t j, std::span<const Rational> value);
  Vector apply(std::span<const Rational> x, std::span<const Rational> y) const;
  bool is_zero() const { return lya::is_zero(coeffs_); }

  friend bool operator==(const ProductTable&, const ProductTable&) = default;

 private:
  std::size_t dim_;
  std::vector<Rational> coeffs_;
};

/// Trilinear product on Q^d: at(i, j, k, l) is the coefficient of e_l in {e_i, e_j, e_k}.
class TernaryTable {
 public:
  explicit TernaryTable(std::size_t dim = 0) : dim_(dim), coeffs_(dim * dim * dim * dim) {}

  std::size_t dim() const noexcept { return dim_; }
  Rational& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return coeffs_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return coeffs_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }
  std::span<const Rational> basis_product(std::size_t i, std::size_t j, std::size_t k) const {
    return std::span<const Rational>(coeffs_).subspan(((i * dim_ + j) * dim_ + k) * dim_, dim_);
  }
  void set(std::size_t i, std::size_t j, std::size_t k, std::span<const Rational> value);
  Vector apply(std::span<const Rational> x, std::span<const Rational> y, std::span<const Rational> z) const;
  bool is_zero() const { return lya::is_zero(coeffs_); }

  friend bool operator==(const TernaryTable&, const TernaryTable&) = default;

 private:
  std::size_t dim_;
  std::vector<Rational> coeffs_;
};

/// A binary bracket [.,.] and a ternary bracket {.,.,.} on Q^d.
///
/// Validity is a checkable predicate (check_axioms), not an invariant. The
/// set_* builders keep LY1/LY2 antisymmetry by writing both slots; the raw
/// constructor keeps tensors verbatim so that antisymmetry defects remain
/// observable.
class Algebra {
 public:
  explicit Algebra(std::size_t dim = 0, std::string name = {});
  Algebra(std::string name, ProductTable binary, TernaryTable ternary);

  std::size_t dim() const noexcept { return binary_.dim(); }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const ProductTable& binary() const noexcept { return binary_; }
  const TernaryTable& ternary() const noexcept { return ternary_; }

  /// Sets [e_i, e_j] = value and [e_j, e_i] = -value.
  void set_bracket(std::size_t i, std::size_t j, std::span<const Rational> value);
  /// Sets {e_i, e_j, e_k} = value and {e_j, e_i, e_k} = -value.
  void set_triple(std::size_t i, std::size_t j, std::size_t k, std::span<const Rational> value);
  /// Raw access, no antisymmetry bookkeeping.
  Rational& binary_coeff(std::size_t i, std::size_t j, std::size_t k) { return binary_.at(i, j, k); }
  Rational& ternary_coeff(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return ternary_.at(i, j, k, l);
  }

  Vector bracket(std::span<const Rational> x, std::span<const Rational> y) const { return binary_.apply(x, y); }
  Vector triple(std::span<const Rational> x, std::span<const Rational> y, std::span<const Rational> z) const {
    return ternary_.apply(x, y, z);
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.binary_ == b.binary_ && a.ternary_ == b.ternary_;
  }

 private:
  std::string name_;
  ProductTable binary_;
  TernaryTable ternary_;
};

enum class Axiom { LY1, LY2, LY3, LY4, LY5, LY6 };
std::string_view axiom_name(Axiom a);

struct AxiomViolation {
  Axiom axiom;
  std::vector<std::size_t> tuple;  // 0-based basis indices
  Vector defect;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(Axiom a) const;
};

/// Evaluates LY1-LY6 on every basis tuple. Multilinearity makes this
/// equivalent to the identities on all of Q^d.
AxiomReport check_axioms(const Algebra& a);
bool is_valid(const Algebra& a);

/// Defect of a single identity on arbitrary vectors. `args` holds 2 (LY1),
/// 3 (LY2, LY3), 4 (LY4, LY5) or 6 (LY6) vectors.
Vector axiom_defect(const Algebra& a, Axiom axiom, std::span<const Vector> args);

// Constructors ---------------------------------------------------------------

/// Lie algebra viewed as an LY algebra with {a, b, c} = [[a, b], c].
Algebra from_lie(const ProductTable& lie, std::string name = "lie");
/// Leibniz algebra: [a, b] = ab - ba, {a, b, c} = -(ab)c.
Algebra from_leibniz(const ProductTable& product, std::string name = "leibniz");
/// Lie triple system: zero binary bracket. Validity is left to check_axioms.
Algebra from_lie_triple(const TernaryTable& ternary, std::string name = "lts");
/// {G_i, G_j, G_k} = delta_ki G_j - delta_kj G_i on span{G_1..G_n}.
Algebra meson(std::size_t n);
/// LY structure on m for a reductive decomposition g = h + m of a Lie algebra,
/// both summands spanned by basis vectors. The result uses the basis of m in
/// the order given by `m_idx`.
Algebra from_reductive_pair(const ProductTable& lie, std::span<const std::size_t> h_idx,
                            std::span<const std::size_t> m_idx, std::string name = "reductive");
/// [e1, e2] = e3, {e1, e2, e1} = e3, everything else forced by LY1/LY2 or zero.
Algebra example_3dim();
Algebra abelian(std::size_t d);
/// so(3): [e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2.
ProductTable cross_product_lie();

/// Throws NotALieAlgebra naming the first violating pair or triple.
void require_lie(const ProductTable& lie);

// Maps -----------------------------------------------------------------------

/// phi has dim(b) rows and dim(a) columns (columns are images of a's basis).
bool is_homomorphism(const Matrix& phi, const Algebra& a, const Algebra& b);
bool is_automorphism(const Matrix& phi, const Algebra& a);

/// Substitutes m into both derivation identities on every basis tuple.
bool is_derivation(const Algebra& a, const Matrix& m);
/// Basis of Der(a) as flattened row-major d x d matrices.
SubspaceBasis derivations(const Algebra& a);
std::vector<Matrix> derivation_matrices(const Algebra& a);
/// Matrix of z -> {x, y, z}.
Matrix inner_derivation(const Algebra& a, std::span<const Rational> x, std::span<const Rational> y);
/// Whether the span of the given matrices is closed under the commutator.
bool commutator_closed(std::span<const Matrix> basis);

/// Flattens a square matrix row-major.
Vector flatten(const Matrix& m);
Matrix unflatten(std::size_t n, std::span<const Rational> v);

}  // namespace lya
