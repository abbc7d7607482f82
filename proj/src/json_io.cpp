#include "lya/json_io.hpp"

#include <fstream>
#include <sstream>

#include "lya/errors.hpp"

namespace lya::json_io {

namespace {

std::size_t index_from(const json& j, std::size_t dim, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " index must be an integer");
  const auto v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > dim)
    throw ParseError(std::string(what) + " index " + std::to_string(v) + " out of range 1.." + std::to_string(dim));
  return static_cast<std::size_t>(v - 1);
}

Vector vector_from(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw ParseError(std::string(what) + ": expected an array of " + std::to_string(n) + " rationals");
  Vector v;
  v.reserve(n);
  for (const auto& q : j) v.push_back(rational_from(q));
  return v;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_from(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

json tuple_json(std::span<const std::size_t> t) {
  json out = json::array();
  for (auto i : t) out.push_back(i + 1);
  return out;
}

json point_json(const Point& p) { return vector_to_json(p); }

std::vector<Point> points_from(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of points");
  std::vector<Point> out;
  for (const auto& p : j) {
    if (!p.is_array()) throw ParseError(std::string(what) + ": each point is an array of rationals");
    out.push_back(vector_from(p, p.size(), what));
  }
  return out;
}

json points_json(const std::vector<Point>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(point_json(p));
  return out;
}

json cochain_entries(const Cochain& c) {
  json out = json::array();
  const std::size_t e = c.module_dim();
  for (std::size_t t = 0; t < c.tuple_count(); ++t) {
    const auto v = c.coeffs().subspan(t * e, e);
    if (is_zero(v)) continue;
    json entry = tuple_json(c.tuple_at(t));
    entry.push_back(vector_to_json(v));
    out.push_back(std::move(entry));
  }
  return out;
}

void fill_cochain(const json& j, Cochain& c, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("cochain '") + what + "' must be an array");
  const std::size_t n = c.degree();
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != n + 1)
      throw ParseError(std::string("cochain '") + what + "' entries need " + std::to_string(n) +
                       " indices and a value");
    std::vector<std::size_t> args;
    for (std::size_t i = 0; i < n; ++i) args.push_back(index_from(entry[i], c.algebra_dim(), what));
    for (std::size_t i = 0; i + 1 < n; i += 2)
      if (args[i] >= args[i + 1])
        throw ParseError(std::string("cochain '") + what + "': each argument pair must be strictly increasing");
    const Vector v = vector_from(entry[n], c.module_dim(), what);
    auto slot = c.value(args);
    for (std::size_t k = 0; k < v.size(); ++k) slot[k] = v[k];
  }
}

json failure_json(const BundleFailure& f) {
  json out{{"clause", f.clause}, {"where", f.where}, {"point", point_json(f.point)}, {"defect", f.defect}};
  if (!f.detail.empty()) out["detail"] = f.detail;
  return out;
}

json fibers_json(const std::vector<FiberCohomology>& fibers, bool der) {
  json out = json::array();
  for (const auto& f : fibers) {
    json e{{"chart", f.chart}, {"point", point_json(f.point)}};
    if (der) {
      e["dimDer"] = f.dim_h;
    } else {
      e["dimZ"] = f.dim_z;
      e["dimB"] = f.dim_b;
      e["dimH"] = f.dim_h;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

json to_json(const Rational& q) { return to_string(q); }

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw ParseError("expected a rational string or an integer, got " + j.dump());
}

json vector_to_json(std::span<const Rational> v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Vector row = vector_from(j[r], cols, "matrix row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

json algebra_to_json(const Algebra& a) {
  const std::size_t d = a.dim();
  json binary = json::array();
  json ternary = json::array();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const auto v = a.binary().basis_product(i, j);
      if (!is_zero(v)) binary.push_back(json{i + 1, j + 1, vector_to_json(v)});
      for (std::size_t k = 0; k < d; ++k) {
        const auto w = a.ternary().basis_product(i, j, k);
        if (!is_zero(w)) ternary.push_back(json{i + 1, j + 1, k + 1, vector_to_json(w)});
      }
    }
  return json{{"name", a.name()}, {"dim", d}, {"binary", binary}, {"ternary", ternary}};
}

Algebra algebra_from_json(const json& j) {
  const std::size_t d = size_from(j, "dim");
  Algebra a(d, j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "algebra");
  if (j.contains("binary")) {
    const json& bin = j["binary"];
    if (!bin.is_array()) throw ParseError("'binary' must be an array");
    for (const auto& e : bin) {
      if (!e.is_array() || e.size() != 3) throw ParseError("binary entries are [i, j, [coefficients]]");
      const std::size_t x = index_from(e[0], d, "binary");
      const std::size_t y = index_from(e[1], d, "binary");
      if (x >= y) throw ParseError("binary entries must have i < j (the rest follows by antisymmetry)");
      a.set_bracket(x, y, vector_from(e[2], d, "binary value"));
    }
  }
  if (j.contains("ternary")) {
    const json& ter = j["ternary"];
    if (!ter.is_array()) throw ParseError("'ternary' must be an array");
    for (const auto& e : ter) {
      if (!e.is_array() || e.size() != 4) throw ParseError("ternary entries are [i, j, k, [coefficients]]");
      const std::size_t x = index_from(e[0], d, "ternary");
      const std::size_t y = index_from(e[1], d, "ternary");
      const std::size_t z = index_from(e[2], d, "ternary");
      if (x >= y) throw ParseError("ternary entries must have i < j (the rest follows by antisymmetry)");
      a.set_triple(x, y, z, vector_from(e[3], d, "ternary value"));
    }
  }
  return a;
}

json representation_to_json(const Representation& r) {
  const std::size_t d = r.algebra_dim();
  json rho = json::array();
  json D = json::array();
  json theta = json::array();
  for (std::size_t i = 0; i < d; ++i) {
    rho.push_back(matrix_to_json(r.rho(i)));
    json drow = json::array();
    json trow = json::array();
    for (std::size_t j = 0; j < d; ++j) {
      drow.push_back(matrix_to_json(r.D(i, j)));
      trow.push_back(matrix_to_json(r.theta(i, j)));
    }
    D.push_back(std::move(drow));
    theta.push_back(std::move(trow));
  }
  return json{{"e", r.module_dim()}, {"rho", rho}, {"D", D}, {"theta", theta}};
}

Representation representation_from_json(const json& j, std::size_t d) {
  const std::size_t e = size_from(j, "e");
  Representation r(d, e);
  const auto square = [e](const json& m, const char* what) {
    Matrix out = matrix_from_json(m);
    if (out.rows() != e || out.cols() != e)
      throw ParseError(std::string(what) + " matrices must be " + std::to_string(e) + "x" + std::to_string(e));
    return out;
  };
  const json& rho = field(j, "rho");
  const json& D = field(j, "D");
  const json& theta = field(j, "theta");
  if (!rho.is_array() || rho.size() != d) throw ParseError("'rho' needs one matrix per basis element");
  if (!D.is_array() || D.size() != d || !theta.is_array() || theta.size() != d)
    throw ParseError("'D' and 'theta' need a d x d grid of matrices");
  for (std::size_t i = 0; i < d; ++i) {
    r.rho(i) = square(rho[i], "rho");
    if (!D[i].is_array() || D[i].size() != d || !theta[i].is_array() || theta[i].size() != d)
      throw ParseError("'D' and 'theta' need a d x d grid of matrices");
    for (std::size_t k = 0; k < d; ++k) {
      r.D(i, k) = square(D[i][k], "D");
      r.theta(i, k) = square(theta[i][k], "theta");
    }
  }
  return r;
}

json cochain_to_json(const CochainPair& c) {
  return json{{"p", c.p}, {"f", cochain_entries(c.f)}, {"g", cochain_entries(c.g)}};
}

CochainPair cochain_from_json(const json& j, std::size_t d, std::size_t e) {
  const std::size_t p = j.contains("p") ? size_from(j, "p") : 1;
  if (p == 0) throw ParseError("cochain level p must be at least 1");
  CochainPair c(p, d, e);
  if (j.contains("f")) fill_cochain(j["f"], c.f, "f");
  if (j.contains("g")) fill_cochain(j["g"], c.g, "g");
  return c;
}

json bundle_to_json(const BundleSpec& b) {
  json charts = json::array();
  for (const auto& c : b.charts)
    charts.push_back(json{{"name", c.name}, {"coords", c.coords}, {"samples", points_json(c.samples)}});
  json transitions = json::array();
  for (const auto& tf : b.transitions) {
    json m = json::array();
    for (const auto& row : tf.matrix) {
      json r = json::array();
      for (const auto& e : row) r.push_back(e.source());
      m.push_back(std::move(r));
    }
    json t{{"from", tf.from}, {"to", tf.to}, {"matrix", m}, {"samples", points_json(tf.samples)}};
    if (!tf.to_samples.empty()) t["to_samples"] = points_json(tf.to_samples);
    transitions.push_back(std::move(t));
  }
  json triples = json::array();
  for (const auto& t : b.triples)
    triples.push_back(json{{"i", t.i}, {"j", t.j}, {"k", t.k}, {"samples", points_json(t.samples)}});
  return json{{"fiber", algebra_to_json(b.fiber)}, {"charts", charts}, {"transitions", transitions},
              {"triples", triples}};
}

BundleSpec bundle_from_json(const json& j) {
  const auto str = [](const json& o, const char* key) {
    const json& v = field(o, key);
    if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  };
  BundleSpec b;
  b.fiber = algebra_from_json(field(j, "fiber"));
  for (const auto& c : field(j, "charts")) {
    Chart chart;
    chart.name = str(c, "name");
    for (const auto& id : field(c, "coords")) {
      if (!id.is_string()) throw ParseError("chart coordinates must be identifier strings");
      chart.coords.push_back(id.get<std::string>());
    }
    chart.samples = points_from(field(c, "samples"), "chart samples");
    b.charts.push_back(std::move(chart));
  }
  if (j.contains("transitions"))
    for (const auto& t : j["transitions"]) {
      TransitionFamily tf;
      tf.from = str(t, "from");
      tf.to = str(t, "to");
      for (const auto& row : field(t, "matrix")) {
        if (!row.is_array()) throw ParseError("transition matrix rows must be arrays");
        std::vector<Expr> r;
        for (const auto& e : row) {
          if (e.is_string()) {
            r.push_back(Expr::parse(e.get<std::string>()));
          } else if (e.is_number_integer()) {
            r.push_back(Expr::parse(std::to_string(e.get<long long>())));
          } else {
            throw ParseError("transition entries must be expression strings");
          }
        }
        tf.matrix.push_back(std::move(r));
      }
      tf.samples = points_from(field(t, "samples"), "transition samples");
      if (t.contains("to_samples")) tf.to_samples = points_from(t["to_samples"], "transition to_samples");
      b.transitions.push_back(std::move(tf));
    }
  if (j.contains("triples"))
    for (const auto& t : j["triples"])
      b.triples.push_back({str(t, "i"), str(t, "j"), str(t, "k"), points_from(field(t, "samples"), "triple samples")});
  return b;
}

json axiom_report_to_json(const AxiomReport& r) {
  json counts = json::object();
  for (Axiom ax : {Axiom::LY1, Axiom::LY2, Axiom::LY3, Axiom::LY4, Axiom::LY5, Axiom::LY6})
    counts[std::string(axiom_name(ax))] = r.count(ax);
  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back(
        json{{"axiom", axiom_name(v.axiom)}, {"tuple", tuple_json(v.tuple)}, {"defect", vector_to_json(v.defect)}});
  return json{{"ok", r.ok()}, {"counts", counts}, {"violations", violations}};
}

json rep_report_to_json(const RepReport& r) {
  json counts = json::object();
  for (RepLaw law : {RepLaw::RLYB1, RepLaw::RLYB2, RepLaw::RLYB3, RepLaw::RLYB4, RepLaw::RLYB5, RepLaw::RLYB6})
    counts[std::string(rep_law_name(law))] = r.count(law);
  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back(
        json{{"law", rep_law_name(v.law)}, {"tuple", tuple_json(v.tuple)}, {"defect", matrix_to_json(v.defect)}});
  return json{{"ok", r.ok()}, {"counts", counts}, {"violations", violations}, {"rlyb7_holds", r.rlyb7.empty()}};
}

json cohomology_to_json(const CohomologyResult& r) {
  return json{{"p", r.p},        {"dimZ", r.dim_z}, {"dimB", r.dim_b}, {"dimH", r.dim_h},
              {"delta_squared_zero", r.delta_squared_zero}, {"z_reading", r.z_reading}};
}

json h1_to_json(const H1Result& r) {
  json basis = json::array();
  for (const auto& v : r.cocycles.vectors()) basis.push_back(vector_to_json(v));
  return json{{"p", 0}, {"dimH1", r.dim}, {"cocycles", basis}};
}

json bundle_failures_to_json(const std::vector<BundleFailure>& f) {
  json out = json::array();
  for (const auto& x : f) out.push_back(failure_json(x));
  return out;
}

json cocycle_report_to_json(const CocycleReport& r) {
  return json{{"ok", r.ok()}, {"checks", r.checks}, {"failures", bundle_failures_to_json(r.failures)}};
}

json bundle_cohomology_to_json(const BundleCohomologyReport& r) {
  const char* which = r.kind == CohomologyKind::H1 ? "h1" : r.kind == CohomologyKind::H23 ? "h23" : "upper";
  return json{{"which", which}, {"p", r.p}, {"constant", r.constant}, {"fibers", fibers_json(r.fibers, false)}};
}

json der_bundle_to_json(const DerBundleReport& r) {
  return json{{"ok", r.ok()},
              {"constant", r.constant},
              {"conjugations_checked", r.conjugations_checked},
              {"fibers", fibers_json(r.fibers, true)},
              {"failures", bundle_failures_to_json(r.failures)}};
}

}  // namespace lya::json_io
