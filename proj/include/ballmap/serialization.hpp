#pragma once

#include <string>

#include <json.hpp>

#include "ballmap/ball_map.hpp"
#include "ballmap/constructions.hpp"
#include "ballmap/normal_form.hpp"

namespace ballmap {

using Json = nlohmann::json;

// JSON shapes (schema version 1, field "v" on top-level documents):
//   polynomial  {"n", "terms": [{"e": [ints], "re", "im"}, ...]}  graded-lex
//   form        {"n", "d", "entries": [{"a", "b", "re", "im"}, ...]}  upper
//               triangle including the diagonal
//   map         {"v", "n", "N", "numerator": [polynomial...],
//                "denominator": polynomial}
//   unitary     {"v", "rows", "cols", "data": [{"re", "im"}, ...]} row-major
//   spec        {"v", "n", "forms": [form, ...]}
// Readers accept a missing "v" and reject any other version.

Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json real_form_to_json(const RealForm& r);
RealForm real_form_from_json(const Json& j);

Json map_to_json(const RationalBallMap& f);
RationalBallMap map_from_json(const Json& j);

Json unitary_to_json(const Eigen::MatrixXcd& u);
Eigen::MatrixXcd unitary_from_json(const Json& j);

Json invariant_spec_to_json(const InvariantPolynomialSpec& spec);
InvariantPolynomialSpec invariant_spec_from_json(const Json& j);

Json properness_to_json(const PropernessReport& report);
const char* lowest_terms_label(LowestTerms verdict);

Json normal_form_report_to_json(const NormalFormReport& report);
Json normalization_to_json(const NormalizationCertificate& cert);
Json construction_to_json(const ConstructionResult& result);

// Reads a whole file as JSON; throws std::invalid_argument with the parse
// error message on failure.
Json read_json_file(const std::string& path);

// Writes with 2-space indentation and a trailing newline so identical data
// gives identical bytes.
void write_json_file(const std::string& path, const Json& j);

}  // namespace ballmap
