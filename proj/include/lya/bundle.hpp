#pragma once

// Locally trivial LY-algebra bundles over a sampled atlas.
//
// The base manifold is replaced by named charts carrying finitely many
// rational sample points. A transition family g_ij is a matrix of expressions
// in the coordinates of chart i, probed at declared overlap samples; the
// matching point in chart j is given explicitly (to_samples) or, when omitted,
// has the same coordinates. g_ij maps chart-j fibre coordinates to chart-i
// fibre coordinates, so the cocycle condition reads g_ij g_jk = g_ik.

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lya/algebra.hpp"
#include "lya/cohomology.hpp"
#include "lya/expr.hpp"
#include "lya/linalg.hpp"

namespace lya {

using Point = std::vector<Rational>;
using ExprMatrix = std::vector<std::vector<Expr>>;

struct EvalMode {
  enum class Kind { Exact, Float };
  Kind kind = Kind::Exact;
  double tolerance = 1e-9;

  static EvalMode exact() { return {}; }
  static EvalMode floating(double tol = 1e-9) { return {Kind::Float, tol}; }
  bool is_exact() const noexcept { return kind == Kind::Exact; }
};

struct Chart {
  std::string name;
  std::vector<std::string> coords;
  std::vector<Point> samples;
};

struct TransitionFamily {
  std::string from;
  std::string to;
  ExprMatrix matrix;
  std::vector<Point> samples;     // in `from` coordinates
  std::vector<Point> to_samples;  // same points in `to` coordinates; empty = identical coordinates
};

struct TripleOverlap {
  std::string i, j, k;
  std::vector<Point> samples;  // in chart i coordinates
};

struct BundleSpec {
  Algebra fiber;
  std::vector<Chart> charts;
  std::vector<TransitionFamily> transitions;
  std::vector<TripleOverlap> triples;

  const Chart& chart(const std::string& name) const;
  const TransitionFamily* transition(const std::string& from, const std::string& to) const;
  /// Shapes, names, arities, identifier binding and fibre validity.
  void validate() const;
  /// Coordinates in chart `to` of a point given in chart `from`.
  Point correspond(const std::string& from, const std::string& to, const Point& p) const;
};

using EvaluatedMatrix = std::variant<Matrix, Eigen::MatrixXd>;

Matrix eval_exact(const ExprMatrix& m, const Chart& chart, const Point& pt);
Eigen::MatrixXd eval_float(const ExprMatrix& m, const Chart& chart, const Point& pt);
EvaluatedMatrix eval_transition(const TransitionFamily& tf, const Chart& from, const Point& pt, EvalMode mode);

struct BundleFailure {
  std::string clause;  // identity | triple | inverse | automorphism | missing-transition | ...
  std::string where;
  Point point;
  double defect = 0.0;  // max-abs entry of the defect
  std::string detail;
};

struct CocycleReport {
  std::vector<BundleFailure> failures;
  std::size_t checks = 0;
  bool ok() const noexcept { return failures.empty(); }
};

CocycleReport check_cocycle(const BundleSpec& b, EvalMode mode = EvalMode::exact());

/// Fibre algebra in the trivialization of `chart` at a sample point.
Algebra fiber_algebra_at(const BundleSpec& b, const std::string& chart, const Point& pt);

struct SubbundleReport {
  std::vector<BundleFailure> failures;
  std::size_t checks = 0;
  std::string note;
  bool ok() const noexcept { return failures.empty(); }
};

/// h must be a subalgebra of the fibre (NotASubalgebra otherwise). Checks
/// g(m) h = h for every evaluated transition value.
SubbundleReport check_subbundle(const BundleSpec& b, const SubspaceBasis& h);

struct MorphismReport {
  std::vector<BundleFailure> failures;
  std::vector<BundleFailure> non_invertible;  // informational
  std::size_t checks = 0;
  bool ok() const noexcept { return failures.empty(); }
};

/// `maps` holds one matrix of expressions per chart name (rows = target fibre
/// dimension). Both bundles must share the same atlas.
MorphismReport check_bundle_morphism(const BundleSpec& source, const BundleSpec& target,
                                     const std::map<std::string, ExprMatrix>& maps);

enum class CohomologyKind { H1, H23, Upper };

struct FiberCohomology {
  std::string chart;
  Point point;
  std::size_t dim_h = 0;
  std::size_t dim_z = 0;
  std::size_t dim_b = 0;
};

struct BundleCohomologyReport {
  CohomologyKind kind = CohomologyKind::H1;
  std::size_t p = 1;
  std::vector<FiberCohomology> fibers;
  bool constant = true;
};

/// Per-sample cohomology of each fibre with its adjoint representation.
/// Requires check_cocycle(b, mode) to pass.
BundleCohomologyReport bundle_cohomology(const BundleSpec& b, CohomologyKind kind, std::size_t p = 1,
                                         EvalMode mode = EvalMode::exact(),
                                         std::size_t size_cap = kDefaultSizeCap);

struct DerBundleReport {
  std::vector<FiberCohomology> fibers;  // dim_h holds dim Der
  bool constant = true;
  std::size_t conjugations_checked = 0;
  std::vector<BundleFailure> failures;
  bool ok() const noexcept { return failures.empty() && constant; }
};

/// dim Der per sample, plus: s T s^-1 is a derivation for every transition
/// value s and every derivation basis element T.
DerBundleReport der_bundle_dims(const BundleSpec& b);

}  // namespace lya
