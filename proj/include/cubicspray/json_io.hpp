#pragma once
// JSON forms of points, lines, line sets, cubics and spray certificates.
// Rational scalars are "p/q" strings, complex scalars [re, im] pairs.

#include <string_view>

#include <json.hpp>

#include "cubicspray/spray.hpp"

namespace cubicspray {

using json = nlohmann::json;

json scalar_json(const Rational& v);
json scalar_json(const Complex& v);

template <class T>
json vector_json(const Vec<T>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(scalar_json(e));
  return a;
}
template <class T>
json point_json(const ProjectivePoint<T>& p) {
  return vector_json(p.coords());
}
template <class T>
json matrix_json(const Mat<T>& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(vector_json(row));
  return a;
}

struct ParsedScalar {
  std::optional<Rational> exact;
  Complex numeric;
};
/// "p/q" or decimal string, integer, float, or [re, im].
ParsedScalar parse_scalar(const json& v);

/// A point given as a JSON array, or as rationals separated by commas or colons
/// ("3,4,5,-6,0" or "(0:1:-1:0:0)").
/// `exact` is set when every coordinate is rational.
struct ParsedVector {
  std::optional<Vec<Rational>> exact;
  Vec<Complex> numeric;
};
ParsedVector parse_vector(const json& j);
ParsedVector parse_vector_text(std::string_view text);
Complex complex_from_json(const json& j);
Mat<Complex> complex_matrix_from_json(const json& j);

json line_json(const ProjectiveLine<Complex>& l);
ProjectiveLine<Complex> line_from_json(const json& j);

json line_set_json(const LineSet& s);
json spanning_lines_json(const SpanningLines& s, const ProjectivePoint<Complex>& center);

template <class T>
json divisor_json(const DivisorOnLine<T>& d) {
  json pts = json::array();
  for (const auto& [p, m] : d.points) pts.push_back({{"point", point_json(p)}, {"multiplicity", m}});
  return pts;
}

template <class T>
json cubic_json(const HomogeneousCubic<T>& f, const std::optional<Vec<Rational>>& base_point = std::nullopt) {
  json coeffs = json::array();
  for (const auto& [m, c] : f.coefficients())
    coeffs.push_back({{"mono", {m[0], m[1], m[2]}}, {"val", scalar_json(c)}});
  json doc = {{"dim", f.dim()}, {"coeffs", coeffs}};
  if (base_point) doc["base_point"] = vector_json(*base_point);
  return doc;
}

json genericity_json(const GenericityFlags& f);

/// `cubic` is embedded verbatim as the "cubic" field.
json certificate_json(const SprayCertificate& c, const json& cubic);
/// Reads the certificate fields back; the caller parses c["cubic"] itself.
SprayCertificate certificate_from_json(const json& j);

json conic_report_json(const ConicReport& r);

}  // namespace cubicspray
