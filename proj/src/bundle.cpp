#include "lya/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lya/errors.hpp"
#include "lya/representation.hpp"

namespace lya {

namespace {

std::string point_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

std::vector<double> to_doubles(const Point& p) {
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& q : p) out.push_back(q.get_d());
  return out;
}

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (const auto& q : m.entries()) best = std::max(best, std::fabs(q.get_d()));
  return best;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Largest coefficient of g[a,b] - [ga,gb] and g{a,b,c} - {ga,gb,gc} over basis tuples.
double automorphism_defect(const Algebra& a, const Eigen::MatrixXd& g) {
  const std::size_t d = a.dim();
  const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
  double worst = 0.0;
  Eigen::MatrixXd B(idx(d), idx(d * d));  // column (i,j) = [e_i, e_j]
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) B(idx(k), idx(i * d + j)) = a.binary().at(i, j, k).get_d();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Eigen::VectorXd lhs = g * B.col(idx(i * d + j));
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(idx(d));
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q) rhs += g(idx(p), idx(i)) * g(idx(q), idx(j)) * B.col(idx(p * d + q));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Eigen::VectorXd lhs = Eigen::VectorXd::Zero(idx(d));
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(idx(d));
        for (std::size_t l = 0; l < d; ++l) lhs += a.ternary().at(i, j, k, l).get_d() * g.col(idx(l));
        for (std::size_t p = 0; p < d; ++p)
          for (std::size_t q = 0; q < d; ++q)
            for (std::size_t r = 0; r < d; ++r) {
              const double w = g(idx(p), idx(i)) * g(idx(q), idx(j)) * g(idx(r), idx(k));
              if (w == 0.0) continue;
              for (std::size_t l = 0; l < d; ++l) rhs(idx(l)) += w * a.ternary().at(p, q, r, l).get_d();
            }
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      }
  return worst;
}

double automorphism_defect(const Algebra& a, const Matrix& g) {
  const std::size_t d = a.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const Vector gi = g.column(i);
    for (std::size_t j = 0; j < d; ++j) {
      const Vector gj = g.column(j);
      Vector diff = g * a.binary().basis_product(i, j);
      axpy(-1, a.bracket(gi, gj), diff);
      for (const auto& q : diff) worst = std::max(worst, std::fabs(q.get_d()));
      for (std::size_t k = 0; k < d; ++k) {
        Vector t = g * a.ternary().basis_product(i, j, k);
        axpy(-1, a.triple(gi, gj, g.column(k)), t);
        for (const auto& q : t) worst = std::max(worst, std::fabs(q.get_d()));
      }
    }
  }
  return worst;
}

Matrix exact_value(const BundleSpec& b, const TransitionFamily& tf, const Point& pt) {
  return eval_exact(tf.matrix, b.chart(tf.from), pt);
}

// Transition matrix g_ij at a point of chart i, with g_ii defaulting to the identity.
std::optional<EvaluatedMatrix> value_at(const BundleSpec& b, const std::string& i, const std::string& j,
                                        const Point& pt, EvalMode mode) {
  if (const TransitionFamily* tf = b.transition(i, j)) return eval_transition(*tf, b.chart(i), pt, mode);
  if (i != j) return std::nullopt;
  const std::size_t d = b.fiber.dim();
  if (mode.is_exact()) return EvaluatedMatrix(Matrix::identity(d));
  return EvaluatedMatrix(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
}

Eigen::MatrixXd as_float(const EvaluatedMatrix& m) {
  if (const auto* e = std::get_if<Eigen::MatrixXd>(&m)) return *e;
  const Matrix& q = std::get<Matrix>(m);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(q.rows()), static_cast<Eigen::Index>(q.cols()));
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = q(r, c).get_d();
  return out;
}

// Defect of a (should-be-zero) difference; exact comparisons are zero-tolerance.
double difference(const EvaluatedMatrix& a, const EvaluatedMatrix& b, bool exact) {
  if (exact) return max_abs(std::get<Matrix>(a) - std::get<Matrix>(b));
  return max_abs(as_float(a) - as_float(b));
}

EvaluatedMatrix product(const EvaluatedMatrix& a, const EvaluatedMatrix& b, bool exact) {
  if (exact) return std::get<Matrix>(a) * std::get<Matrix>(b);
  return EvaluatedMatrix(Eigen::MatrixXd(as_float(a) * as_float(b)));
}

bool failed(double defect, EvalMode mode) { return mode.is_exact() ? defect != 0.0 : defect > mode.tolerance; }

void record(std::vector<BundleFailure>& out, std::string clause, std::string where, const Point& pt, double defect,
            std::string detail = {}) {
  out.push_back({std::move(clause), std::move(where), pt, defect, std::move(detail)});
}

// Every evaluated transition value with its location, exact mode only.
struct Sampled {
  const TransitionFamily* tf;
  Point point;
  Matrix value;
};

std::vector<Sampled> exact_transition_values(const BundleSpec& b) {
  std::vector<Sampled> out;
  for (const auto& tf : b.transitions)
    for (const auto& pt : tf.samples) out.push_back({&tf, pt, exact_value(b, tf, pt)});
  return out;
}

std::string where(const TransitionFamily& tf) { return "g[" + tf.from + "," + tf.to + "]"; }

void require_cocycle(const BundleSpec& b, EvalMode mode) {
  const CocycleReport rep = check_cocycle(b, mode);
  if (!rep.ok()) {
    const auto& f = rep.failures.front();
    throw InvalidBundle("bundle fails the cocycle check (" + f.clause + " at " + f.where + " " + point_string(f.point) +
                        ")");
  }
}

}  // namespace

const Chart& BundleSpec::chart(const std::string& name) const {
  for (const auto& c : charts)
    if (c.name == name) return c;
  throw InvalidBundle("unknown chart '" + name + "'");
}

const TransitionFamily* BundleSpec::transition(const std::string& from, const std::string& to) const {
  for (const auto& tf : transitions)
    if (tf.from == from && tf.to == to) return &tf;
  return nullptr;
}

void BundleSpec::validate() const {
  if (!is_valid(fiber)) throw InvalidAlgebra("bundle fiber '" + fiber.name() + "' violates the LY axioms");
  std::set<std::string> names;
  for (const auto& c : charts) {
    if (!names.insert(c.name).second) throw InvalidBundle("duplicate chart '" + c.name + "'");
    if (c.samples.empty()) throw InvalidBundle("chart '" + c.name + "' has no sample points");
    for (const auto& s : c.samples)
      if (s.size() != c.coords.size())
        throw ShapeMismatch("sample " + point_string(s) + " of chart '" + c.name + "' has the wrong arity");
  }
  const std::size_t d = fiber.dim();
  for (const auto& tf : transitions) {
    const Chart& from = chart(tf.from);
    const Chart& to = chart(tf.to);
    if (tf.matrix.size() != d) throw ShapeMismatch(where(tf) + " is not " + std::to_string(d) + "x" + std::to_string(d));
    for (const auto& row : tf.matrix) {
      if (row.size() != d) throw ShapeMismatch(where(tf) + " is not square of the fiber dimension");
      for (const auto& e : row) e.bind(from.coords);
    }
    for (const auto& s : tf.samples)
      if (s.size() != from.coords.size()) throw ShapeMismatch("overlap sample of " + where(tf) + " has the wrong arity");
    if (!tf.to_samples.empty()) {
      if (tf.to_samples.size() != tf.samples.size())
        throw ShapeMismatch(where(tf) + ": to_samples and samples differ in length");
      for (const auto& s : tf.to_samples)
        if (s.size() != to.coords.size()) throw ShapeMismatch("target sample of " + where(tf) + " has the wrong arity");
    } else if (from.coords.size() != to.coords.size()) {
      throw ShapeMismatch(where(tf) + " needs to_samples: the charts have different coordinate counts");
    }
  }
  for (const auto& t : triples) {
    const Chart& ci = chart(t.i);
    chart(t.j);
    chart(t.k);
    for (const auto& s : t.samples)
      if (s.size() != ci.coords.size()) throw ShapeMismatch("triple-overlap sample has the wrong arity");
  }
}

Point BundleSpec::correspond(const std::string& from, const std::string& to, const Point& p) const {
  if (from == to) return p;
  if (const TransitionFamily* tf = transition(from, to)) {
    for (std::size_t s = 0; s < tf->samples.size(); ++s)
      if (tf->samples[s] == p) return tf->to_samples.empty() ? p : tf->to_samples[s];
  }
  if (const TransitionFamily* tf = transition(to, from)) {
    const auto& mine = tf->to_samples.empty() ? tf->samples : tf->to_samples;
    for (std::size_t s = 0; s < mine.size(); ++s)
      if (mine[s] == p) return tf->samples[s];
  }
  if (chart(from).coords.size() == chart(to).coords.size()) return p;
  throw UnknownSample("no declared correspondence for " + point_string(p) + " from chart '" + from + "' to '" + to +
                      "'");
}

Matrix eval_exact(const ExprMatrix& m, const Chart& chart, const Point& pt) {
  if (pt.size() != chart.coords.size()) throw ShapeMismatch("point arity does not match chart '" + chart.name + "'");
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m.front().size() : 0;
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (m[r].size() != cols) throw ShapeMismatch("ragged expression matrix");
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = m[r][c].eval_exact(chart.coords, pt);
  }
  return out;
}

Eigen::MatrixXd eval_float(const ExprMatrix& m, const Chart& chart, const Point& pt) {
  if (pt.size() != chart.coords.size()) throw ShapeMismatch("point arity does not match chart '" + chart.name + "'");
  const std::vector<double> x = to_doubles(pt);
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m.front().size() : 0;
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (m[r].size() != cols) throw ShapeMismatch("ragged expression matrix");
    for (std::size_t c = 0; c < cols; ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r][c].eval_float(chart.coords, x);
  }
  return out;
}

EvaluatedMatrix eval_transition(const TransitionFamily& tf, const Chart& from, const Point& pt, EvalMode mode) {
  if (mode.is_exact()) return eval_exact(tf.matrix, from, pt);
  return eval_float(tf.matrix, from, pt);
}

CocycleReport check_cocycle(const BundleSpec& b, EvalMode mode) {
  b.validate();
  CocycleReport rep;
  const bool exact = mode.is_exact();
  const std::size_t d = b.fiber.dim();
  const EvaluatedMatrix id = exact ? EvaluatedMatrix(Matrix::identity(d))
                                   : EvaluatedMatrix(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d),
                                                                                static_cast<Eigen::Index>(d)));
  const auto bad = [&](double defect) { return failed(defect, mode); };

  for (const auto& tf : b.transitions) {
    const Chart& from = b.chart(tf.from);
    // g_ii is probed at every sample of chart i, in addition to declared overlap samples.
    std::vector<Point> pts = tf.samples;
    if (tf.from == tf.to)
      for (const auto& s : from.samples)
        if (std::find(pts.begin(), pts.end(), s) == pts.end()) pts.push_back(s);

    for (const auto& pt : pts) {
      const EvaluatedMatrix g = eval_transition(tf, from, pt, mode);

      if (tf.from == tf.to) {
        ++rep.checks;
        const double def = difference(g, id, exact);
        if (bad(def)) record(rep.failures, "identity", where(tf), pt, def, "g_ii is not the identity");
      }

      ++rep.checks;
      const double aut = exact ? automorphism_defect(b.fiber, std::get<Matrix>(g))
                               : automorphism_defect(b.fiber, std::get<Eigen::MatrixXd>(g));
      if (bad(aut)) {
        record(rep.failures, "automorphism", where(tf), pt, aut, "does not preserve the brackets");
      } else {
        ++rep.checks;
        bool invertible;
        if (exact) {
          invertible = inverse(std::get<Matrix>(g)).has_value();
        } else {
          const Eigen::FullPivLU<Eigen::MatrixXd> lu(std::get<Eigen::MatrixXd>(g));
          invertible = lu.isInvertible();
        }
        if (!invertible) record(rep.failures, "automorphism", where(tf), pt, 0.0, "not invertible");
      }

      if (tf.from != tf.to && b.transition(tf.to, tf.from)) {
        ++rep.checks;
        const Point other = b.correspond(tf.from, tf.to, pt);
        const EvaluatedMatrix back = *value_at(b, tf.to, tf.from, other, mode);
        const double def = difference(product(g, back, exact), id, exact);
        if (bad(def))
          record(rep.failures, "inverse", where(tf), pt, def,
                 "g[" + tf.from + "," + tf.to + "] g[" + tf.to + "," + tf.from + "] is not the identity");
      }
    }
  }

  for (const auto& t : b.triples) {
    const std::string loc = "(" + t.i + "," + t.j + "," + t.k + ")";
    for (const auto& pt : t.samples) {
      ++rep.checks;
      const auto gij = value_at(b, t.i, t.j, pt, mode);
      const auto gik = value_at(b, t.i, t.k, pt, mode);
      Point pj;
      try {
        pj = b.correspond(t.i, t.j, pt);
      } catch (const UnknownSample& e) {
        record(rep.failures, "triple", loc, pt, 0.0, e.what());
        continue;
      }
      const auto gjk = value_at(b, t.j, t.k, pj, mode);
      if (!gij || !gjk || !gik) {
        record(rep.failures, "missing-transition", loc, pt, 0.0, "a transition of the triple overlap is not declared");
        continue;
      }
      const double def = difference(product(*gij, *gjk, exact), *gik, exact);
      if (bad(def)) record(rep.failures, "triple", loc, pt, def, "g_ij g_jk != g_ik");
    }
  }
  return rep;
}

Algebra fiber_algebra_at(const BundleSpec& b, const std::string& chart, const Point& pt) {
  const Chart& c = b.chart(chart);
  bool known = std::find(c.samples.begin(), c.samples.end(), pt) != c.samples.end();
  for (const auto& tf : b.transitions) {
    if (tf.from == chart) known = known || std::find(tf.samples.begin(), tf.samples.end(), pt) != tf.samples.end();
    if (tf.to == chart && !tf.to_samples.empty())
      known = known || std::find(tf.to_samples.begin(), tf.to_samples.end(), pt) != tf.to_samples.end();
  }
  if (!known) throw UnknownSample(point_string(pt) + " is not a sample point of chart '" + chart + "'");
  Algebra out = b.fiber;
  out.set_name(b.fiber.name() + "@" + chart + point_string(pt));
  return out;
}

SubbundleReport check_subbundle(const BundleSpec& b, const SubspaceBasis& h) {
  b.validate();
  const std::size_t d = b.fiber.dim();
  if (h.ambient_dim() != d) throw ShapeMismatch("subspace does not live in the fiber");
  const auto& hv = h.vectors();
  for (const auto& u : hv)
    for (const auto& v : hv) {
      if (!h.contains(b.fiber.bracket(u, v))) throw NotASubalgebra("subspace is not closed under [.,.]");
      for (const auto& w : hv)
        if (!h.contains(b.fiber.triple(u, v, w))) throw NotASubalgebra("subspace is not closed under {.,.,.}");
    }
  SubbundleReport rep;
  rep.note = "invariance checked under the sampled transition values only";
  for (const auto& s : exact_transition_values(b)) {
    ++rep.checks;
    std::vector<Vector> images;
    for (const auto& v : hv) images.push_back(s.value * v);
    const SubspaceBasis moved = SubspaceBasis::span(d, images);
    if (!(moved.dim() == h.dim() && h.contains(moved)))
      record(rep.failures, "invariance", where(*s.tf), s.point, 0.0, "g h != h");
  }
  return rep;
}

MorphismReport check_bundle_morphism(const BundleSpec& source, const BundleSpec& target,
                                     const std::map<std::string, ExprMatrix>& maps) {
  source.validate();
  target.validate();
  MorphismReport rep;
  const std::size_t m = target.fiber.dim();
  const std::size_t n = source.fiber.dim();
  const auto phi_at = [&](const std::string& chart, const Point& pt) {
    const auto it = maps.find(chart);
    if (it == maps.end()) throw ShapeMismatch("no morphism matrix for chart '" + chart + "'");
    Matrix phi = eval_exact(it->second, source.chart(chart), pt);
    if (phi.rows() != m || phi.cols() != n)
      throw ShapeMismatch("morphism matrix on chart '" + chart + "' must be " + std::to_string(m) + "x" +
                          std::to_string(n));
    return phi;
  };

  for (const auto& c : source.charts) {
    const Chart& tc = target.chart(c.name);
    if (tc.coords != c.coords) throw ShapeMismatch("chart '" + c.name + "' differs between the two bundles");
    for (const auto& pt : c.samples) {
      ++rep.checks;
      const Matrix phi = phi_at(c.name, pt);
      if (!is_homomorphism(phi, source.fiber, target.fiber))
        record(rep.failures, "homomorphism", "phi[" + c.name + "]", pt, 0.0, "does not preserve the brackets");
      if (m != n || !inverse(phi)) record(rep.non_invertible, "non-invertible", "phi[" + c.name + "]", pt, 0.0);
    }
  }
  for (const auto& tf : source.transitions) {
    const TransitionFamily* other = target.transition(tf.from, tf.to);
    if (!other) {
      record(rep.failures, "missing-transition", where(tf), {}, 0.0, "target bundle lacks this transition");
      continue;
    }
    for (const auto& pt : tf.samples) {
      ++rep.checks;
      const Point pj = source.correspond(tf.from, tf.to, pt);
      const Matrix lhs = phi_at(tf.from, pt) * exact_value(source, tf, pt);
      const Matrix rhs = eval_exact(other->matrix, target.chart(tf.from), pt) * phi_at(tf.to, pj);
      const double def = max_abs(lhs - rhs);
      if (def != 0.0 || lhs != rhs)
        record(rep.failures, "compatibility", where(tf), pt, def, "phi_i g_ij != g'_ij phi_j");
    }
  }
  return rep;
}

BundleCohomologyReport bundle_cohomology(const BundleSpec& b, CohomologyKind kind, std::size_t p, EvalMode mode,
                                         std::size_t size_cap) {
  require_cocycle(b, mode);
  BundleCohomologyReport rep;
  rep.kind = kind;
  rep.p = kind == CohomologyKind::H1 ? 0 : kind == CohomologyKind::H23 ? 1 : p;
  const auto compute = [&](const Algebra& fiber, const std::string& chart, const Point& pt) {
    const Representation ad = adjoint(fiber);
    FiberCohomology fc{chart, pt, 0, 0, 0};
    if (kind == CohomologyKind::H1) {
      const H1Result h = h1(fiber, ad);
      fc.dim_h = fc.dim_z = h.dim;
    } else {
      const CohomologyResult r = kind == CohomologyKind::H23 ? h23(fiber, ad) : h_upper(fiber, ad, p, size_cap);
      fc.dim_h = r.dim_h;
      fc.dim_z = r.dim_z;
      fc.dim_b = r.dim_b;
    }
    rep.fibers.push_back(std::move(fc));
  };
  for (const auto& c : b.charts)
    for (const auto& pt : c.samples) compute(fiber_algebra_at(b, c.name, pt), c.name, pt);
  if (mode.is_exact()) {
    // Fibre seen from chart j at an overlap point, pulled back to chart i coordinates:
    // structure constants transported by g_ij. Equals the model exactly when g_ij is an automorphism.
    for (const auto& s : exact_transition_values(b)) {
      const auto ginv = inverse(s.value);
      if (!ginv) continue;
      const std::size_t d = b.fiber.dim();
      Algebra moved(d, b.fiber.name());
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const Vector x = s.value.column(i), y = s.value.column(j);
          const Vector br = *ginv * b.fiber.bracket(x, y);
          for (std::size_t k = 0; k < d; ++k) moved.binary_coeff(i, j, k) = br[k];
          for (std::size_t k = 0; k < d; ++k) {
            const Vector tr = *ginv * b.fiber.triple(x, y, s.value.column(k));
            for (std::size_t l = 0; l < d; ++l) moved.ternary_coeff(i, j, k, l) = tr[l];
          }
        }
      compute(moved, s.tf->from + "->" + s.tf->to, s.point);
    }
  }
  for (const auto& f : rep.fibers)
    rep.constant = rep.constant && f.dim_h == rep.fibers.front().dim_h && f.dim_z == rep.fibers.front().dim_z &&
                   f.dim_b == rep.fibers.front().dim_b;
  return rep;
}

DerBundleReport der_bundle_dims(const BundleSpec& b) {
  require_cocycle(b, EvalMode::exact());
  DerBundleReport rep;
  for (const auto& c : b.charts)
    for (const auto& pt : c.samples)
      rep.fibers.push_back({c.name, pt, derivations(fiber_algebra_at(b, c.name, pt)).dim(), 0, 0});
  for (const auto& f : rep.fibers) rep.constant = rep.constant && f.dim_h == rep.fibers.front().dim_h;

  const std::vector<Matrix> ders = derivation_matrices(b.fiber);
  for (const auto& s : exact_transition_values(b)) {
    const auto sinv = inverse(s.value);
    if (!sinv) {
      record(rep.failures, "automorphism", where(*s.tf), s.point, 0.0, "not invertible");
      continue;
    }
    for (std::size_t t = 0; t < ders.size(); ++t) {
      ++rep.conjugations_checked;
      if (!is_derivation(b.fiber, s.value * ders[t] * *sinv))
        record(rep.failures, "conjugation", where(*s.tf), s.point, 0.0,
               "s T s^-1 is not a derivation for basis element " + std::to_string(t + 1));
    }
  }
  return rep;
}

}  // namespace lya
