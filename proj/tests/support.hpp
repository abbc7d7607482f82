#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "lya/algebra.hpp"
#include "lya/cohomology.hpp"
#include "lya/linalg.hpp"

namespace lya::test {

inline std::filesystem::path source_dir() { return LYA_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& name) { return source_dir() / "fixtures" / (name + ".json"); }

// Small rationals p/q with |p| <= 5, 1 <= q <= 4.
inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  Vector v(n);
  for (auto& x : v) x = random_rational(rng);
  return v;
}

inline CochainPair random_cochain(std::mt19937_64& rng, std::size_t p, std::size_t d, std::size_t e) {
  CochainPair c(p, d, e);
  for (auto& x : c.f.coeffs()) x = random_rational(rng);
  for (auto& x : c.g.coeffs()) x = random_rational(rng);
  return c;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_rational(rng);
  return m;
}

}  // namespace lya::test
