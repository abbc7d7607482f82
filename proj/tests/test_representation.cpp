#include "doctest.h"

#include <random>
#include <set>

#include "lya/errors.hpp"
#include "lya/representation.hpp"
#include "support.hpp"

using namespace lya;

namespace {

std::vector<Algebra> corpus() {
  return {example_3dim(), meson(2), meson(3), from_lie(cross_product_lie(), "crossproduct-lie")};
}

}  // namespace

TEST_CASE("adjoint and trivial representations are valid") {
  for (const auto& a : corpus()) {
    CAPTURE(a.name());
    const Representation ad = adjoint(a);
    const RepReport r = check_representation(a, ad);
    CHECK(r.ok());
    CHECK(r.rlyb7.empty());
    CHECK(check_rlyb7(a, ad));
    CHECK(check_representation(a, trivial_rep(a, 2)).ok());
  }
}

TEST_CASE("adjoint maps") {
  const Algebra a = example_3dim();
  const Representation ad = adjoint(a);
  const Vector e1 = unit_vector(3, 0), e2 = unit_vector(3, 1);
  CHECK(ad.rho(0) * e2 == a.bracket(e1, e2));
  CHECK(ad.D(0, 1) * e1 == a.triple(e1, e2, e1));
  // theta(a, b) c = {c, a, b}
  CHECK(ad.theta(1, 0) * e1 == a.triple(e1, e2, e1));
  CHECK(ad.rho_of(Vector{1, 1, 0}) == ad.rho(0) + ad.rho(1));
  Algebra broken = a;
  broken.set_triple(0, 1, 0, Vector{1, 0, 1});
  CHECK_THROWS_AS(adjoint(broken), InvalidAlgebra);
}

TEST_CASE("semi-direct product with the adjoint representation") {
  for (const auto& a : corpus()) {
    CAPTURE(a.name());
    const Algebra s = semidirect(a, adjoint(a));
    CHECK(s.dim() == 2 * a.dim());
    CHECK(check_axioms(s).ok());
  }
}

TEST_CASE("semi-direct validity tracks representation validity on theta perturbations") {
  // Oracle: of the 81 entries of theta for 3dim, exactly these six can be
  // raised by one and still give a representation.
  const std::set<std::string> still_valid{"11:21", "11:22", "11:31", "11:32", "22:31", "22:32"};
  const Algebra a = example_3dim();
  const Representation ad = adjoint(a);
  int agree = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
          Representation p = ad;
          p.theta(i, j)(r, c) += 1;
          const std::string key = std::to_string(i + 1) + std::to_string(j + 1) + ":" + std::to_string(r + 1) +
                                  std::to_string(c + 1);
          CAPTURE(key);
          const bool rep_ok = check_representation(a, p).ok();
          const bool sd_ok = is_valid(semidirect(a, p));
          CHECK(rep_ok == (still_valid.count(key) > 0));
          agree += rep_ok == sd_ok;
        }
  CHECK(agree == 81);
}

TEST_CASE("representation laws are reported by name") {
  const Algebra a = example_3dim();
  Representation p = adjoint(a);
  p.rho(0)(0, 0) += 1;
  const RepReport r = check_representation(a, p);
  CHECK_FALSE(r.ok());
  CHECK(r.count(RepLaw::RLYB1) > 0);
  CHECK(rep_law_name(RepLaw::RLYB4) == "RLYB4");
}

TEST_CASE("twisted semi-direct product shape checks") {
  const Algebra a = example_3dim();
  const Representation ad = adjoint(a);
  CHECK_THROWS_AS(twisted_semidirect(a, ad, CochainPair(2, 3, 3)), ShapeMismatch);
  CHECK_THROWS_AS(twisted_semidirect(a, ad, CochainPair(1, 3, 2)), ShapeMismatch);
  CHECK(twisted_semidirect(a, ad, CochainPair(1, 3, 3)) == semidirect(a, ad));
}
