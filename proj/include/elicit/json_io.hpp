#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "elicit/payments.hpp"
#include "elicit/property.hpp"
#include "elicit/report.hpp"
#include "elicit/scoring.hpp"
#include "elicit/types.hpp"

namespace elicit::json_io {

using Json = nlohmann::json;

/// Compact JSON with sorted keys and doubles printed with 17 significant digits.
std::string dump(const Json& j);

/// Reads and parses a file; throws InvalidInput on I/O or syntax errors.
Json read_file(const std::string& path);

Vector to_vector(const Json& j, const char* what = "vector");
std::vector<Vector> to_vectors(const Json& j, const char* what = "vector list");
/// Accepts a real or the string "-inf".
ExtendedReal to_extended(const Json& j);

Json from_extended(ExtendedReal x);
Json from_vectors(const std::vector<Vector>& vs);

/// {"maxAffine":[{"a":[..],"b":..}]} or {"analytic":"squaredNorm"|"negEntropy"},
/// with an optional "box":{"lower":[..],"upper":[..]}.
ConvexSpec to_convex(const Json& j);
Json from_convex(const ConvexSpec& g);

/// {"dim":n,"points":[[..]]}; a bare list of points is also accepted.
TypeSpace to_type_space(const Json& j);
Json from_type_space(const TypeSpace& ts);

Json from_report(const CheckReport& r);

/// {"rows":[{"linear":[..],"constant":x}]}
ScoreTable to_score_table(const Json& j);
Json from_score_table(const ScoreTable& s);

/// {"n_outcomes":m,"rows":[{"report":[..],"payoffs":[..]}]}
OutcomeScoreTable to_outcome_table(const Json& j);
Json from_outcome_table(const OutcomeScoreTable& t);

/// {"sites":[[..]],"weights":[..]}
PowerDiagram to_diagram(const Json& j);
Json from_diagram(const PowerDiagram& d);

/// {"points":[[..]],"labels":[..]}
LabeledSample to_sample(const Json& j);

}  // namespace elicit::json_io
