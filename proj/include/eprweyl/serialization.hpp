#pragma once

#include <vector>

#include <json.hpp>

#include "eprweyl/phase_point.hpp"
#include "eprweyl/weyl_polynomial.hpp"

namespace eprweyl {

using Json = nlohmann::json;

// Points are arrays of rational strings: ["1", "-1/2"].
Json point_to_json(const PhasePoint& x);
PhasePoint point_from_json(const Json& j);

Json points_to_json(const std::vector<PhasePoint>& points);
std::vector<PhasePoint> points_from_json(const Json& j);

// Polynomials are arrays of {"point": [...], "re": x, "im": y}. Dimension is
// inferred from the point length; an empty array needs expected_dim.
Json polynomial_to_json(const WeylPolynomial& p);
WeylPolynomial polynomial_from_json(const Json& j, int expected_dim = 0);

/// Reads and parses a JSON file; throws UsageError on I/O or syntax errors.
Json read_json_file(const std::string& path);

} // namespace eprweyl
