#pragma once

// JSON encodings of algebras, representations, cochains, bundles and reports.
// Indices are 1-based on the wire and rationals travel as strings "p/q".

#include <filesystem>
#include "json.hpp"

#include "lya/algebra.hpp"
#include "lya/bundle.hpp"
#include "lya/cohomology.hpp"
#include "lya/representation.hpp"

namespace lya::json_io {

using json = nlohmann::ordered_json;

/// Reads and parses a file; ParseError on I/O or syntax problems.
json load_file(const std::filesystem::path& path);

json to_json(const Rational& q);
/// Accepts "p/q" strings and JSON integers.
Rational rational_from(const json& j);

json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const json& j);

json representation_to_json(const Representation& r);
Representation representation_from_json(const json& j, std::size_t algebra_dim);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json vector_to_json(std::span<const Rational> v);

/// {"p", "f": [[i, j, ..., [v...]]...], "g": [...]} with nonzero canonical entries only.
json cochain_to_json(const CochainPair& c);
CochainPair cochain_from_json(const json& j, std::size_t algebra_dim, std::size_t module_dim);

json bundle_to_json(const BundleSpec& b);
BundleSpec bundle_from_json(const json& j);

json axiom_report_to_json(const AxiomReport& r);
json rep_report_to_json(const RepReport& r);
json cohomology_to_json(const CohomologyResult& r);
json h1_to_json(const H1Result& r);
json bundle_failures_to_json(const std::vector<BundleFailure>& f);
json cocycle_report_to_json(const CocycleReport& r);
json bundle_cohomology_to_json(const BundleCohomologyReport& r);
json der_bundle_to_json(const DerBundleReport& r);

}  // namespace lya::json_io
