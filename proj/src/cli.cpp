#include "lya/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>

#include "lya/cohomology.hpp"
#include "lya/errors.hpp"
#include "lya/representation.hpp"

namespace lya::cli {

using json_io::json;

namespace {

struct Outcome {
  std::string status;  // pass | fail | error
  json payload = json::object();
  std::vector<std::string> diagnostics;
  int code = kPass;
};

Outcome verdict(bool ok, json payload) {
  Outcome o;
  o.status = ok ? "pass" : "fail";
  o.code = ok ? kPass : kFail;
  o.payload = std::move(payload);
  return o;
}

Algebra load_algebra(const std::string& path) { return json_io::algebra_from_json(json_io::load_file(path)); }

Representation load_rep(const Algebra& a, const std::string& which, std::size_t trivial_dim) {
  if (which == "adjoint") return adjoint(a);
  if (which == "trivial") return trivial_rep(a, trivial_dim);
  return json_io::representation_from_json(json_io::load_file(which), a.dim());
}

double parse_tolerance(const std::string& text) {
  double tol = 0.0;
  if (text.find('/') != std::string::npos) {
    tol = parse_rational(text).get_d();
  } else {
    std::size_t used = 0;
    try {
      tol = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size()) throw ParseError("--tol expects a rational or decimal, got '" + text + "'");
  }
  if (!(tol > 0.0)) throw ParseError("--tol must be positive");
  return tol;
}

Algebra example_algebra(const std::string& name) {
  if (name == "3dim") return example_3dim();
  if (name == "meson2") return meson(2);
  if (name == "meson3") return meson(3);
  if (name == "crossproduct-lie") return from_lie(cross_product_lie(), "crossproduct-lie");
  if (name == "abelian2") return abelian(2);
  throw UnknownExample("unknown example '" + name + "'");
}

}  // namespace

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"3dim", "meson2", "meson3", "crossproduct-lie", "abelian2",
                                              "circle-bundle"};
  return names;
}

BundleSpec circle_bundle() {
  BundleSpec b;
  b.fiber = example_3dim();
  const auto q = [](const char* s) { return parse_rational(s); };
  const auto diag = [](const std::string& a, const std::string& x) {
    return ExprMatrix{{Expr::parse(a), Expr::parse("0"), Expr::parse("0")},
                      {Expr::parse("0"), Expr::parse(x), Expr::parse("0")},
                      {Expr::parse("0"), Expr::parse("0"), Expr::parse(x)}};
  };
  // Two stereographic charts of the circle; on the overlap the coordinates are related by s = 1/t.
  b.charts.push_back({"U1", {"t"}, {{q("0")}, {q("1")}, {q("2")}, {q("-1")}, {q("-1/2")}}});
  b.charts.push_back({"U2", {"s"}, {{q("0")}, {q("1")}, {q("1/2")}, {q("-1")}, {q("-2")}}});
  const std::vector<Point> t_side{{q("1")}, {q("2")}, {q("-1")}, {q("-1/2")}};
  const std::vector<Point> s_side{{q("1")}, {q("1/2")}, {q("-1")}, {q("-2")}};
  b.transitions.push_back({"U1", "U2", diag("1", "1 + t^2"), t_side, s_side});
  b.transitions.push_back({"U2", "U1", diag("1", "s^2/(1 + s^2)"), s_side, t_side});
  b.triples.push_back({"U1", "U2", "U1", t_side});
  b.triples.push_back({"U2", "U1", "U2", s_side});
  b.fiber.set_name("3dim");
  return b;
}

json example_json(const std::string& name) {
  if (name == "circle-bundle") return json_io::bundle_to_json(circle_bundle());
  Algebra a = example_algebra(name);
  a.set_name(name);
  return json_io::algebra_to_json(a);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with Lie-Yamaguti algebras", "lya"};
  app.require_subcommand(1);

  std::string out_path;
  std::size_t cap = kDefaultSizeCap;
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--cap", cap, "largest coboundary target dimension to attempt");

  std::string input, rep_spec = "adjoint", cochain_path, mode = "exact", tol_text = "1e-9", which = "h1",
                     example;
  std::size_t p = 1, trivial_dim = 1;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--cap", cap, "largest coboundary target dimension to attempt");
  };
  const auto add_rep = [&](CLI::App* sub) {
    sub->add_option("--rep", rep_spec, "adjoint | trivial | PATH to a representation JSON");
    sub->add_option("--trivial-dim", trivial_dim, "module dimension for --rep trivial");
  };

  auto* check = app.add_subcommand("check", "check the LY axioms");
  auto* ders = app.add_subcommand("derivations", "basis of the derivation algebra");
  auto* coh = app.add_subcommand("cohomology", "cohomology with coefficients (p = 0: H1, 1: H(2,3), >= 2: H(2p,2p+1))");
  auto* repc = app.add_subcommand("rep-check", "check the representation laws");
  auto* semi = app.add_subcommand("semidirect", "semi-direct product with a representation");
  auto* twist = app.add_subcommand("twist", "semi-direct product twisted by a (2,3)-cochain");
  auto* bchk = app.add_subcommand("bundle-check", "cocycle and automorphism checks of a bundle");
  auto* bcoh = app.add_subcommand("bundle-cohomology", "fibrewise cohomology with adjoint coefficients");
  auto* exs = app.add_subcommand("examples", "print a bundled fixture");

  for (auto* sub : {check, ders, coh, repc, semi, twist, bchk, bcoh}) {
    sub->add_option("input", input, "input JSON")->required();
    add_common(sub);
  }
  add_common(exs);
  for (auto* sub : {coh, repc, semi, twist}) add_rep(sub);
  coh->add_option("--p", p, "cohomology level");
  twist->add_option("--cochain", cochain_path, "cochain JSON")->required();
  for (auto* sub : {bchk, bcoh}) {
    sub->add_option("--mode", mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--tol", tol_text, "float tolerance (rational or decimal)");
  }
  bcoh->add_option("--which", which, "h1 | h23 | upper | der")->check(CLI::IsMember({"h1", "h23", "upper", "der"}));
  bcoh->add_option("--p", p, "level for --which upper");
  exs->add_option("name", example, "fixture name")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "lya: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string command = cmd->get_name();

  const auto emit = [&](const json& doc) {
    if (out_path.empty()) {
      out << doc.dump(2) << "\n";
      return true;
    }
    std::ofstream f(out_path);
    if (!f) {
      err << "lya: cannot write '" << out_path << "'\n";
      return false;
    }
    f << doc.dump(2) << "\n";
    return true;
  };

  Outcome o;
  try {
    const auto eval_mode = [&] {
      return mode == "float" ? EvalMode::floating(parse_tolerance(tol_text)) : EvalMode::exact();
    };
    if (command == "examples") {
      const json doc = example_json(example);
      return emit(doc) ? kPass : kUsage;
    } else if (command == "check") {
      const Algebra a = load_algebra(input);
      const AxiomReport r = check_axioms(a);
      o = verdict(r.ok(), json_io::axiom_report_to_json(r));
      o.payload["name"] = a.name();
      o.payload["dim"] = a.dim();
      for (const auto& v : r.violations) {
        std::string t;
        for (auto i : v.tuple) t += (t.empty() ? "" : ",") + std::to_string(i + 1);
        o.diagnostics.push_back(std::string(axiom_name(v.axiom)) + " fails at (" + t + ")");
        if (o.diagnostics.size() == 20) break;
      }
    } else if (command == "derivations") {
      const Algebra a = load_algebra(input);
      json basis = json::array();
      for (const auto& m : derivation_matrices(a)) basis.push_back(json_io::matrix_to_json(m));
      o = verdict(true, json{{"dim", basis.size()}, {"basis", basis}});
    } else if (command == "cohomology") {
      const Algebra a = load_algebra(input);
      const Representation r = load_rep(a, rep_spec, trivial_dim);
      if (p == 0) {
        const H1Result h = h1(a, r);
        o = verdict(true, json_io::h1_to_json(h));
      } else {
        const CohomologyResult res = p == 1 ? h23(a, r) : h_upper(a, r, p, cap);
        json payload = json_io::cohomology_to_json(res);
        payload[p == 1 ? "dimH23" : "dimH" + std::to_string(2 * p) + "_" + std::to_string(2 * p + 1)] = res.dim_h;
        o = verdict(res.delta_squared_zero, std::move(payload));
        if (!res.delta_squared_zero) o.diagnostics.push_back("delta o delta is not zero");
      }
    } else if (command == "rep-check") {
      const Algebra a = load_algebra(input);
      const RepReport r = check_representation(a, load_rep(a, rep_spec, trivial_dim));
      o = verdict(r.ok(), json_io::rep_report_to_json(r));
    } else if (command == "semidirect") {
      const Algebra a = load_algebra(input);
      const Representation r = load_rep(a, rep_spec, trivial_dim);
      const Algebra s = semidirect(a, r);
      const AxiomReport ar = check_axioms(s);
      const bool rep_ok = check_representation(a, r).ok();
      o = verdict(ar.ok(), json{{"algebra", json_io::algebra_to_json(s)},
                                {"axioms", json_io::axiom_report_to_json(ar)},
                                {"representation_valid", rep_ok},
                                {"iff_consistent", rep_ok == ar.ok()}});
      if (rep_ok != ar.ok()) o.diagnostics.push_back("semi-direct validity disagrees with representation validity");
    } else if (command == "twist") {
      const Algebra a = load_algebra(input);
      const Representation r = load_rep(a, rep_spec, trivial_dim);
      const CochainPair tau = json_io::cochain_from_json(json_io::load_file(cochain_path), a.dim(), r.module_dim());
      const Algebra s = twisted_semidirect(a, r, tau);
      const AxiomReport ar = check_axioms(s);
      const bool cocycle = delta(a, r, tau).is_zero() && delta_star(a, r, tau).is_zero();
      o = verdict(ar.ok(), json{{"algebra", json_io::algebra_to_json(s)},
                                {"axioms", json_io::axiom_report_to_json(ar)},
                                {"is_cocycle", cocycle}});
    } else if (command == "bundle-check") {
      const BundleSpec b = json_io::bundle_from_json(json_io::load_file(input));
      const CocycleReport r = check_cocycle(b, eval_mode());
      o = verdict(r.ok(), json_io::cocycle_report_to_json(r));
      o.payload["mode"] = mode;
      for (const auto& f : r.failures) {
        o.diagnostics.push_back(f.clause + " fails at " + f.where + (f.detail.empty() ? "" : ": " + f.detail));
        if (o.diagnostics.size() == 20) break;
      }
    } else if (command == "bundle-cohomology") {
      const BundleSpec b = json_io::bundle_from_json(json_io::load_file(input));
      if (which == "der") {
        const DerBundleReport r = der_bundle_dims(b);
        o = verdict(r.ok(), json_io::der_bundle_to_json(r));
      } else {
        const CohomologyKind kind = which == "h1" ? CohomologyKind::H1
                                    : which == "h23" ? CohomologyKind::H23
                                                     : CohomologyKind::Upper;
        const BundleCohomologyReport r = bundle_cohomology(b, kind, p, eval_mode(), cap);
        o = verdict(r.constant, json_io::bundle_cohomology_to_json(r));
        if (!r.constant) o.diagnostics.push_back("fibre dimensions vary across samples");
      }
    }
  } catch (const SizeCapExceeded& e) {
    o = {"error", json::object(), {std::string(e.kind()) + ": " + e.what()}, kCapExceeded};
  } catch (const CocycleContainmentFailure& e) {
    o = {"error", json::object(), {std::string(e.kind()) + ": " + e.what()}, kFail};
  } catch (const InvalidBundle& e) {
    o = {"fail", json::object(), {std::string(e.kind()) + ": " + e.what()}, kFail};
  } catch (const Error& e) {
    o = {"error", json::object(), {std::string(e.kind()) + ": " + e.what()}, kUsage};
  } catch (const json::exception& e) {
    o = {"error", json::object(), {std::string("ParseError: ") + e.what()}, kUsage};
  }

  const json report{{"command", command}, {"status", o.status}, {"payload", o.payload}, {"diagnostics", o.diagnostics}};
  if (!emit(report)) return kUsage;
  err << "lya " << command << ": " << o.status;
  if (!o.diagnostics.empty()) err << " (" << o.diagnostics.front() << ")";
  err << "\n";
  return o.code;
}

}  // namespace lya::cli
