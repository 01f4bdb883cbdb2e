#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orthokit/claims.hpp"
#include "orthokit/hh_integrals.hpp"
#include "orthokit/mapping.hpp"
#include "orthokit/norm.hpp"
#include "orthokit/relations.hpp"
#include "orthokit/solvers.hpp"
#include "orthokit/vector.hpp"

namespace orthokit {

using Json = nlohmann::ordered_json;

// Doubles are written as JSON numbers when finite and as the strings
// "inf", "-inf", "nan" otherwise. Readers accept both forms.
Json number_to_json(double v);
double number_from_json(const Json& j);

Json to_json(const std::vector<double>& v);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const NormSpec& spec);
Json to_json(const HHValues& hv);
Json to_json(const OrthoVerdict& v);
Json to_json(const MapProfile& p);
Json to_json(const BoundsReport& r);
Json to_json(const Condition11Result& r);
Json to_json(const Condition17Report& r);
Json to_json(const Embedding& e);
Json to_json(const RootResult& r);
Json to_json(const LineMinimum& r);
Json to_json(const BetaMinimum& r);
Json to_json(const Universe& u);
Json to_json(const Witness& w);
Json to_json(const ClaimReport& r);

// Readers throw InvalidArgument on malformed input.
std::vector<double> doubles_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
NormSpec norm_spec_from_json(const Json& j);
HHValues hh_values_from_json(const Json& j);
OrthoVerdict verdict_from_json(const Json& j);
MapProfile map_profile_from_json(const Json& j);
BoundsReport bounds_report_from_json(const Json& j);
Condition11Result condition11_from_json(const Json& j);
Condition17Report condition17_from_json(const Json& j);
Embedding embedding_from_json(const Json& j);
RootResult root_result_from_json(const Json& j);
LineMinimum line_minimum_from_json(const Json& j);
BetaMinimum beta_minimum_from_json(const Json& j);
Universe universe_from_json(const Json& j);
Witness witness_from_json(const Json& j);
ClaimReport claim_report_from_json(const Json& j);

/// Parses JSON text, throwing InvalidArgument with the parser message.
Json parse_json(std::string_view text);

/// Command-line norm syntax: lp:<p|inf>, wlp:<p>:<w1,w2,...>, ip:<gram file>.
NormSpec parse_norm_arg(std::string_view text);

/// A matrix file in JSON (array of rows) or CSV (one row per line).
Matrix read_matrix_file(const std::string& path);
Matrix parse_matrix_text(std::string_view text);

}  // namespace orthokit
