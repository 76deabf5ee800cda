#include "eprweyl/serialization.hpp"

#include <fstream>

#include "eprweyl/errors.hpp"

namespace eprweyl {

Json point_to_json(const PhasePoint& x) {
    Json j = Json::array();
    for (const auto& c : x.coords()) j.push_back(c.to_string());
    return j;
}

PhasePoint point_from_json(const Json& j) {
    if (!j.is_array()) throw UsageError("point must be an array of rational strings");
    std::vector<Rational> coords;
    for (const auto& c : j) {
        if (c.is_string())
            coords.push_back(Rational::parse(c.get<std::string>()));
        else if (c.is_number_integer())
            coords.emplace_back(c.get<std::int64_t>());
        else
            throw UsageError("point coordinate must be a rational string or integer");
    }
    return PhasePoint(std::span<const Rational>(coords));
}

Json points_to_json(const std::vector<PhasePoint>& points) {
    Json j = Json::array();
    for (const auto& x : points) j.push_back(point_to_json(x));
    return j;
}

std::vector<PhasePoint> points_from_json(const Json& j) {
    if (!j.is_array()) throw UsageError("point list must be an array");
    std::vector<PhasePoint> out;
    out.reserve(j.size());
    for (const auto& p : j) out.push_back(point_from_json(p));
    return out;
}

Json polynomial_to_json(const WeylPolynomial& p) {
    Json j = Json::array();
    for (const auto& [x, c] : p.terms())
        j.push_back({{"point", point_to_json(x)}, {"re", c.real()}, {"im", c.imag()}});
    return j;
}

WeylPolynomial polynomial_from_json(const Json& j, int expected_dim) {
    if (!j.is_array()) throw UsageError("polynomial must be an array of terms");
    int dim = expected_dim;
    std::vector<std::pair<PhasePoint, Complex>> terms;
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("point"))
            throw UsageError("polynomial term must be an object with a 'point' field");
        PhasePoint x = point_from_json(t.at("point"));
        const double re = t.value("re", 0.0);
        const double im = t.value("im", 0.0);
        if (dim == 0) dim = x.dim();
        if (x.dim() != dim) throw UsageError("polynomial terms have inconsistent dimensions");
        terms.emplace_back(std::move(x), Complex(re, im));
    }
    if (dim == 0) throw UsageError("cannot infer dimension of an empty polynomial");
    WeylPolynomial p(dim);
    for (const auto& [x, c] : terms) p.add_term(x, c);
    return p;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError("'" + path + "': " + e.what());
    }
}

} // namespace eprweyl
