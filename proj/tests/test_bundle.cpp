#include "doctest.h"

#include <set>

#include "lya/bundle.hpp"
#include "lya/cli.hpp"
#include "lya/errors.hpp"

using namespace lya;

namespace {

ExprMatrix exprs(std::initializer_list<std::initializer_list<const char*>> rows) {
  ExprMatrix m;
  for (const auto& r : rows) {
    std::vector<Expr> row;
    for (const char* s : r) row.push_back(Expr::parse(s));
    m.push_back(std::move(row));
  }
  return m;
}

Point pt(const char* q) { return {parse_rational(q)}; }

BundleSpec product_bundle(const Algebra& fiber) {
  BundleSpec b;
  b.fiber = fiber;
  b.charts.push_back({"U", {"t"}, {pt("0"), pt("1"), pt("-3/2")}});
  return b;
}

TransitionFamily& g12(BundleSpec& b) {
  for (auto& tf : b.transitions)
    if (tf.from == "U1" && tf.to == "U2") return tf;
  throw std::logic_error("fixture lacks g12");
}

}  // namespace

TEST_CASE("transition evaluation") {
  const BundleSpec b = cli::circle_bundle();
  const auto& tf = b.transitions.front();
  const Chart& u1 = b.chart("U1");
  const Matrix g = std::get<Matrix>(eval_transition(tf, u1, pt("1"), EvalMode::exact()));
  CHECK(g == Matrix::from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
  const Eigen::MatrixXd gf = std::get<Eigen::MatrixXd>(eval_transition(tf, u1, pt("1"), EvalMode::floating()));
  CHECK(gf(1, 1) == doctest::Approx(2.0));
  CHECK_THROWS_AS(eval_exact(exprs({{"1/t"}}), u1, pt("0")), EvalError);
  CHECK_THROWS_AS(eval_exact(exprs({{"t"}}), u1, Point{}), ShapeMismatch);
  CHECK(eval_exact(exprs({{"1", "0"}, {"0", "1"}}), u1, pt("7")) == Matrix::identity(2));
}

TEST_CASE("product bundle passes the cocycle check") {
  const BundleSpec b = product_bundle(example_3dim());
  CHECK(check_cocycle(b).ok());
  const auto coh = bundle_cohomology(b, CohomologyKind::H1);
  CHECK(coh.constant);
  for (const auto& f : coh.fibers) CHECK(f.dim_h == derivations(example_3dim()).dim());
  const auto h23b = bundle_cohomology(b, CohomologyKind::H23);
  const auto single = h23(example_3dim(), adjoint(example_3dim()));
  for (const auto& f : h23b.fibers) {
    CHECK(f.dim_h == single.dim_h);
    CHECK(f.dim_z == single.dim_z);
  }
  CHECK(der_bundle_dims(b).ok());
}

TEST_CASE("circle bundle") {
  const BundleSpec b = cli::circle_bundle();
  const CocycleReport r = check_cocycle(b);
  CHECK(r.ok());
  CHECK(r.checks > 0);
  CHECK(b.correspond("U1", "U2", pt("2")) == pt("1/2"));
  CHECK(b.correspond("U2", "U1", pt("-2")) == pt("-1/2"));

  const auto h1b = bundle_cohomology(b, CohomologyKind::H1);
  CHECK(h1b.constant);
  CHECK(h1b.fibers.size() == 18);  // 10 chart samples and 8 transported overlap fibres
  for (const auto& f : h1b.fibers) CHECK(f.dim_h == 4);
  const auto h23b = bundle_cohomology(b, CohomologyKind::H23);
  CHECK(h23b.constant);
  for (const auto& f : h23b.fibers) CHECK(f.dim_h == 9);

  const DerBundleReport der = der_bundle_dims(b);
  CHECK(der.ok());
  CHECK(der.conjugations_checked == 8 * 4);
}

TEST_CASE("a non-automorphism transition fails at every sample") {
  BundleSpec b = cli::circle_bundle();
  g12(b).matrix = exprs({{"2", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  const CocycleReport r = check_cocycle(b);
  CHECK_FALSE(r.ok());
  std::set<std::string> points;
  for (const auto& f : r.failures)
    if (f.clause == "automorphism" && f.where == "g[U1,U2]") {
      points.insert(to_string(f.point[0]));
      CHECK(f.defect == doctest::Approx(3.0));  // {e1, e2, e1} picks up a factor 4
    }
  CHECK(points == std::set<std::string>{"1", "2", "-1", "-1/2"});
  CHECK_THROWS_AS(bundle_cohomology(b, CohomologyKind::H1), InvalidBundle);
  CHECK_THROWS_AS(der_bundle_dims(b), InvalidBundle);
}

TEST_CASE("identity, inverse and triple clauses") {
  BundleSpec b = product_bundle(abelian(2));
  b.transitions.push_back({"U", "U", exprs({{"1", "t"}, {"0", "1"}}), {pt("1")}, {}});
  CocycleReport r = check_cocycle(b);
  CHECK_FALSE(r.ok());
  // g_UU is probed at the declared overlap sample and at every chart sample; it is the identity only at t = 0.
  std::size_t identity_failures = 0;
  for (const auto& f : r.failures) identity_failures += f.clause == "identity";
  CHECK(identity_failures == 2);

  BundleSpec c = cli::circle_bundle();
  for (auto& tf : c.transitions)
    if (tf.from == "U2") tf.matrix = exprs({{"1", "0", "0"}, {"0", "s^2", "0"}, {"0", "0", "s^2"}});
  r = check_cocycle(c);
  std::set<std::string> clauses;
  for (const auto& f : r.failures) clauses.insert(f.clause);
  CHECK(clauses.count("inverse") == 1);
  CHECK(clauses.count("triple") == 1);
  CHECK(clauses.count("automorphism") == 0);

  BundleSpec d = cli::circle_bundle();
  d.triples.push_back({"U1", "U2", "U3", {pt("1")}});
  d.charts.push_back({"U3", {"t"}, {pt("5")}});
  r = check_cocycle(d);
  CHECK(r.failures.size() == 1);
  CHECK(r.failures.front().clause == "missing-transition");
}

TEST_CASE("float mode handles transcendental transitions") {
  BundleSpec b;
  b.fiber = abelian(2);
  b.charts.push_back({"U1", {"t"}, {pt("0"), pt("1")}});
  b.charts.push_back({"U2", {"t"}, {pt("0"), pt("1")}});
  const std::vector<Point> overlap{pt("1/3"), pt("2"), pt("-5/7")};
  b.transitions.push_back({"U1", "U2", exprs({{"cos(t)", "-sin(t)"}, {"sin(t)", "cos(t)"}}), overlap, {}});
  b.transitions.push_back({"U2", "U1", exprs({{"cos(t)", "sin(t)"}, {"-sin(t)", "cos(t)"}}), overlap, {}});
  b.triples.push_back({"U1", "U2", "U1", overlap});
  CHECK(check_cocycle(b, EvalMode::floating()).ok());
  CHECK_THROWS_AS(check_cocycle(b, EvalMode::exact()), EvalError);
  // a perturbation above the tolerance is caught
  b.transitions[1].matrix[0][0] = Expr::parse("cos(t) + 1/1000");
  CHECK_FALSE(check_cocycle(b, EvalMode::floating(1e-9)).ok());
  CHECK(check_cocycle(b, EvalMode::floating(1e-2)).ok());
}

TEST_CASE("fibre algebra at sample points") {
  const BundleSpec b = cli::circle_bundle();
  CHECK(fiber_algebra_at(b, "U1", pt("2")) == example_3dim());
  CHECK(fiber_algebra_at(b, "U2", pt("1/2")) == example_3dim());
  CHECK_THROWS_AS(fiber_algebra_at(b, "U1", pt("7")), UnknownSample);
  CHECK_THROWS_AS(fiber_algebra_at(b, "U9", pt("0")), InvalidBundle);
  // transport through an evaluated transition commutes with both brackets
  const Matrix g = eval_exact(b.transitions.front().matrix, b.chart("U1"), pt("2"));
  const Algebra a = example_3dim();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(g * a.bracket(unit_vector(3, i), unit_vector(3, j)) == a.bracket(g.column(i), g.column(j)));
      for (std::size_t k = 0; k < 3; ++k)
        CHECK(g * a.triple(unit_vector(3, i), unit_vector(3, j), unit_vector(3, k)) ==
              a.triple(g.column(i), g.column(j), g.column(k)));
    }
}

TEST_CASE("sub-bundles") {
  const BundleSpec b = cli::circle_bundle();
  const auto span = [](std::vector<Vector> v) { return SubspaceBasis::span(3, v); };
  CHECK(check_subbundle(b, span({unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)})).ok());
  CHECK(check_subbundle(b, SubspaceBasis(3)).ok());
  const SubbundleReport center = check_subbundle(b, span({unit_vector(3, 2)}));
  CHECK(center.ok());
  CHECK(center.checks == 8);
  CHECK_FALSE(center.note.empty());
  CHECK_THROWS_AS(check_subbundle(b, span({unit_vector(3, 0), unit_vector(3, 1)})), NotASubalgebra);
  // span{e1 + e3} is closed (brackets vanish on it) but g moves it
  CHECK_FALSE(check_subbundle(b, span({Vector{1, 0, 1}})).ok());
}

TEST_CASE("bundle morphisms") {
  const BundleSpec b = cli::circle_bundle();
  const auto identity = exprs({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  const auto zero = exprs({{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}});
  MorphismReport r = check_bundle_morphism(b, b, {{"U1", identity}, {"U2", identity}});
  CHECK(r.ok());
  CHECK(r.non_invertible.empty());
  r = check_bundle_morphism(b, b, {{"U1", zero}, {"U2", zero}});
  CHECK(r.ok());
  CHECK(r.non_invertible.size() == 10);
  const auto third = exprs({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "2"}});
  r = check_bundle_morphism(b, b, {{"U1", third}, {"U2", third}});
  CHECK_FALSE(r.ok());
  std::size_t hom = 0;
  for (const auto& f : r.failures) hom += f.clause == "homomorphism";
  CHECK(hom == 10);
  CHECK_THROWS_AS(check_bundle_morphism(b, b, {{"U1", identity}}), ShapeMismatch);
}

TEST_CASE("malformed specs are rejected") {
  BundleSpec b = cli::circle_bundle();
  b.charts[0].samples.push_back({});
  CHECK_THROWS_AS(b.validate(), ShapeMismatch);
  b = cli::circle_bundle();
  g12(b).matrix[0].pop_back();
  CHECK_THROWS_AS(b.validate(), ShapeMismatch);
  b = cli::circle_bundle();
  g12(b).matrix[0][0] = Expr::parse("x");
  CHECK_THROWS_AS(b.validate(), UnknownIdentifier);
  b = cli::circle_bundle();
  b.charts[1].samples.clear();
  CHECK_THROWS_AS(b.validate(), InvalidBundle);
  b = cli::circle_bundle();
  b.fiber.set_triple(0, 1, 0, Vector{1, 0, 1});
  CHECK_THROWS_AS(check_cocycle(b), InvalidAlgebra);
}
