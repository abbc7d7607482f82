// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "lya/bundle.hpp"
#include "lya/cli.hpp"
#include "lya/cohomology.hpp"
#include "lya/representation.hpp"
#include "support.hpp"

using namespace lya;
using json = json_io::json;
using lya::test::fixture;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " " << id << ": " << what << " (" << detail << ")" << std::endl;
  failures += !ok;
}

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::vector<std::pair<std::string, Algebra>> corpus() {
  return {{"3dim", example_3dim()},
          {"meson2", meson(2)},
          {"meson3", meson(3)},
          {"crossproduct-lie", from_lie(cross_product_lie(), "crossproduct-lie")}};
}

// Adds one to component `comp` (0-based) of the entry keyed by `key` (1-based
// indices) in the "binary" or "ternary" list, creating the entry if absent.
json perturb(json a, const std::string& table, const std::vector<int>& key, int comp) {
  json& list = a[table];
  for (auto& entry : list) {
    bool match = true;
    for (std::size_t s = 0; s < key.size(); ++s) match = match && entry[s] == key[s];
    if (!match) continue;
    json& v = entry[key.size()][comp];
    v = to_string(json_io::rational_from(v) + 1);
    return a;
  }
  json entry = json::array();
  for (int k : key) entry.push_back(k);
  json v = json::array();
  for (int s = 0; s < a["dim"].get<int>(); ++s) v.push_back(s == comp ? "1" : "0");
  entry.push_back(v);
  list.push_back(entry);
  return a;
}

int check_json(const json& a) {
  const auto tmp = std::filesystem::temp_directory_path() / "lya_acceptance_perturbed.json";
  std::ofstream(tmp) << a.dump();
  const int code = run_cli({"check", tmp.string()});
  std::filesystem::remove(tmp);
  return code;
}

void criterion1() {
  bool ok = true;
  std::ostringstream detail;
  for (const char* name : {"3dim", "meson2", "meson3", "crossproduct-lie"}) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string out;
    const int code = run_cli({"check", fixture(name).string()}, &out);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const bool empty = code == 0 && json::parse(out)["payload"]["violations"].empty();
    ok = ok && empty && ms < 1000.0;
    detail << name << " exit " << code << " " << static_cast<int>(ms) << "ms; ";
  }
  report(1, ok, "bundled algebras pass check", detail.str());
}

void criterion2() {
  const json base = cli::example_json("3dim");
  struct Site {
    std::string table;
    std::vector<int> key;
    int comp;
    std::string label;
  };
  const std::vector<Site> sites{{"binary", {1, 2}, 0, "[e1,e2] e1"},
                                {"binary", {2, 3}, 0, "[e2,e3] e1"},
                                {"ternary", {1, 2, 1}, 0, "{e1,e2,e1} e1"}};
  bool ok = true;
  std::ostringstream detail;
  for (const auto& s : sites) {
    const json p = perturb(base, s.table, s.key, s.comp);
    const int code = check_json(p);
    const AxiomReport r = check_axioms(json_io::algebra_from_json(p));
    ok = ok && code == 1 && !r.ok();
    detail << s.label << " exit " << code << "; ";
  }
  // full scan over the 36 independent constants, for information
  int broken = 0, total = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      for (int c = 0; c < 3; ++c) {
        ++total;
        broken += !is_valid(json_io::algebra_from_json(perturb(base, "binary", {i, j}, c)));
        for (int k = 1; k <= 3; ++k) {
          ++total;
          broken += !is_valid(json_io::algebra_from_json(perturb(base, "ternary", {i, j, k}, c)));
        }
      }
  detail << "full scan " << broken << "/" << total << " break";
  report(2, ok, "+1 perturbations of 3dim are detected", detail.str());
}

void criterion3() {
  std::mt19937_64 rng(1001);
  bool ok = true;
  int checked = 0;
  for (const auto& [name, a] : corpus()) {
    const Representation r = adjoint(a);
    for (std::size_t p : {1u, 2u}) {
      if (CochainPair(p + 2, a.dim(), r.module_dim()).size() > kDefaultSizeCap) continue;
      for (int t = 0; t < 20; ++t) {
        ok = ok && delta(a, r, delta(a, r, test::random_cochain(rng, p, a.dim(), r.module_dim()))).is_zero();
        ++checked;
      }
    }
  }
  report(3, ok, "delta o delta = 0 exactly", std::to_string(checked) + " random cochains at p = 1, 2");
}

void criterion4() {
  std::mt19937_64 rng(1002);
  bool ok = true;
  int checked = 0;
  for (const auto& [name, a] : corpus()) {
    const Representation r = adjoint(a);
    for (int t = 0; t < 20; ++t) {
      const Cochain f = cochain_from_map(test::random_matrix(rng, r.module_dim(), a.dim()));
      ok = ok && delta_star(a, r, delta_zero(a, r, f)).is_zero();
      ++checked;
    }
  }
  report(4, ok, "delta_star o delta_zero = 0 exactly", std::to_string(checked) + " random 1-cochains");
}

void criterion5() {
  bool ok = true;
  std::ostringstream detail;
  for (const auto& a : {example_3dim(), meson(2)}) {
    const std::size_t h = h1(a, adjoint(a)).dim, der = derivations(a).dim();
    ok = ok && h == der;
    detail << a.name() << " h1 " << h << " der " << der << "; ";
  }
  report(5, ok, "H1 = Der with adjoint coefficients", detail.str());
}

void criterion6() {
  const Algebra a = example_3dim();
  const Representation ad = adjoint(a);
  const bool base_ok = check_axioms(semidirect(a, ad)).ok();
  int sd_fail = 0, disagreements = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> idx(0, 2), num(1, 5), sign(0, 1), den(1, 5);
    const int i = idx(rng), j = idx(rng), r = idx(rng), c = idx(rng);
    Rational delta(num(rng) * (sign(rng) ? 1 : -1), den(rng));
    delta.canonicalize();
    Representation p = ad;
    p.theta(i, j)(r, c) += delta;
    const bool rep_ok = check_representation(a, p).ok();
    const bool sd_ok = check_axioms(semidirect(a, p)).ok();
    sd_fail += !sd_ok;
    disagreements += rep_ok != sd_ok;
  }
  const bool ok = base_ok && sd_fail >= 95 && disagreements == 0;
  report(6, ok, "semidirect product valid iff representation valid",
         "base " + std::string(base_ok ? "valid" : "invalid") + "; " + std::to_string(sd_fail) +
             "/100 perturbed products fail (need >= 95); " + std::to_string(disagreements) +
             " biconditional disagreements");
}

void criterion7() {
  const Algebra a = example_3dim();
  const Representation r = adjoint(a);
  const CohomologyResult res = h23(a, r);
  bool basis_ok = true;
  for (const auto& v : res.z.vectors())
    basis_ok = basis_ok && check_axioms(twisted_semidirect(a, r, CochainPair::unflatten(1, 3, 3, v))).ok();
  std::mt19937_64 rng(1007);
  int drawn = 0, failing = 0;
  while (drawn < 20) {
    const CochainPair c = test::random_cochain(rng, 1, 3, 3);
    if (res.z.contains(c.flatten())) continue;
    ++drawn;
    failing += !check_axioms(twisted_semidirect(a, r, c)).ok();
  }
  report(7, basis_ok && failing >= 19, "twisted semidirect product tracks the cocycle condition",
         std::to_string(res.z.dim()) + " basis cocycles " + (basis_ok ? "all valid" : "NOT all valid") + "; " +
             std::to_string(failing) + "/20 non-cocycles fail");
}

void criterion8() {
  const Algebra a = abelian(2);
  const Representation r = trivial_rep(a, 1);
  const std::size_t h23_dim = h23(a, r).dim_h, h45 = h_upper(a, r, 2).dim_h;
  report(8, h23_dim == 3 && h45 == 3, "trivial coefficients on abelian d=2",
         "H(2,3) " + std::to_string(h23_dim) + ", H(4,5) " + std::to_string(h45));
}

void criterion9() {
  const BundleSpec good = cli::circle_bundle();
  const CocycleReport r = check_cocycle(good, EvalMode::exact());
  BundleSpec bad = good;
  TransitionFamily* g12 = nullptr;
  for (auto& tf : bad.transitions)
    if (tf.from == "U1" && tf.to == "U2") g12 = &tf;
  std::vector<Point> missed;
  if (g12) {
    for (auto& row : g12->matrix)
      for (auto& e : row) e = Expr::parse("0");
    g12->matrix[0][0] = Expr::parse("2");
    g12->matrix[1][1] = Expr::parse("1");
    g12->matrix[2][2] = Expr::parse("1");
    const CocycleReport rb = check_cocycle(bad, EvalMode::exact());
    for (const auto& pt : g12->samples) {
      bool hit = false;
      for (const auto& f : rb.failures)
        hit = hit || (f.clause == "automorphism" && f.where == "g[U1,U2]" && f.point == pt && f.defect > 0);
      if (!hit) missed.push_back(pt);
    }
  }
  report(9, r.ok() && g12 && missed.empty(), "circle bundle cocycle check",
         std::to_string(r.checks) + " checks on the fixture, " + std::to_string(r.failures.size()) +
             " failures; diag(2,1,1) misses " + std::to_string(missed.size()) + " sample points");
}

void criterion10() {
  const BundleSpec b = cli::circle_bundle();
  const Algebra fiber = b.fiber;
  const std::size_t single_h1 = h1(fiber, adjoint(fiber)).dim;
  const std::size_t single_h23 = h23(fiber, adjoint(fiber)).dim_h;
  bool ok = single_h1 == derivations(fiber).dim();
  std::size_t n1 = 0, n23 = 0;
  for (const auto& f : bundle_cohomology(b, CohomologyKind::H1).fibers) {
    ok = ok && f.dim_h == single_h1;
    ++n1;
  }
  for (const auto& f : bundle_cohomology(b, CohomologyKind::H23).fibers) {
    ok = ok && f.dim_h == single_h23;
    ++n23;
  }
  report(10, ok && n1 > 0 && n23 > 0, "fibrewise constancy on the circle bundle",
         "h1 = " + std::to_string(single_h1) + " at " + std::to_string(n1) + " fibres, h23 = " +
             std::to_string(single_h23) + " at " + std::to_string(n23) + " fibres");
}

void criterion11() {
  const BundleSpec b = cli::circle_bundle();
  const std::vector<Matrix> basis = derivation_matrices(b.fiber);
  int checked = 0, bad = 0;
  for (const auto& tf : b.transitions) {
    const Chart& from = b.chart(tf.from);
    for (const auto& pt : tf.samples) {
      const Matrix s = eval_exact(tf.matrix, from, pt);
      const auto s_inv = inverse(s);
      for (const auto& t : basis) {
        ++checked;
        bad += !s_inv || !is_derivation(b.fiber, s * t * *s_inv);
      }
    }
  }
  const DerBundleReport lib = der_bundle_dims(b);
  report(11, bad == 0 && checked > 0 && lib.ok(), "conjugated derivations stay derivations",
         std::to_string(checked) + " conjugates s T s^-1 checked, " + std::to_string(bad) + " failures");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8,
                                                    criterion9, criterion10, criterion11};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, "threw", e.what());
    }
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
