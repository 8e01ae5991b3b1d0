#include "cubicspray/json_io.hpp"

#include <algorithm>
#include <sstream>

#include "cubicspray/errors.hpp"
#include "cubicspray/version.hpp"

namespace cubicspray {

json scalar_json(const Rational& v) { return format_rational(v); }
json scalar_json(const Complex& v) { return json::array({v.real() + 0.0, v.imag() + 0.0}); }

ParsedScalar parse_scalar(const json& v) {
  if (v.is_string()) {
    Rational r = parse_rational(v.get<std::string>());
    return {r, to_complex(r)};
  }
  if (v.is_number_integer()) {
    Rational r(v.dump());
    return {r, to_complex(r)};
  }
  if (v.is_number_float()) return {std::nullopt, Complex(v.get<double>(), 0.0)};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    const Complex c(v[0].get<double>(), v[1].get<double>());
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) fail(ErrorKind::Input, "non-finite value");
    return {std::nullopt, c};
  }
  fail(ErrorKind::Input, "malformed document: value must be \"p/q\", a decimal string, or [re, im]");
}

Complex complex_from_json(const json& j) { return parse_scalar(j).numeric; }

ParsedVector parse_vector(const json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::Input, "malformed point: expected a non-empty array");
  ParsedVector out;
  Vec<Rational> exact;
  bool all_exact = true;
  for (const auto& e : j) {
    ParsedScalar s = parse_scalar(e);
    out.numeric.push_back(s.numeric);
    if (s.exact)
      exact.push_back(*s.exact);
    else
      all_exact = false;
  }
  if (all_exact) out.exact = std::move(exact);
  return out;
}

ParsedVector parse_vector_text(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\n");
  if (first != std::string_view::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      fail(ErrorKind::Input, std::string("malformed point: ") + e.what());
    }
    return parse_vector(j);
  }
  json j = json::array();
  std::string item;
  std::string flat(text);
  std::replace(flat.begin(), flat.end(), ':', ',');
  std::stringstream ss{flat};
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t()");
    const auto e = item.find_last_not_of(" \t()");
    if (b == std::string::npos) fail(ErrorKind::Input, "malformed point: empty coordinate");
    j.push_back(item.substr(b, e - b + 1));
  }
  return parse_vector(j);
}

Mat<Complex> complex_matrix_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::Input, "malformed matrix");
  Mat<Complex> m;
  for (const auto& row : j) m.push_back(parse_vector(row).numeric);
  return m;
}

json line_json(const ProjectiveLine<Complex>& l) {
  return {{"base", point_json(l.base())}, {"dir", vector_json(l.dir())}};
}

ProjectiveLine<Complex> line_from_json(const json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("dir")) fail(ErrorKind::Input, "malformed line");
  return ProjectiveLine<Complex>(ProjectivePoint<Complex>(parse_vector(j["base"]).numeric),
                                 parse_vector(j["dir"]).numeric);
}

json line_set_json(const LineSet& s) {
  json lines = json::array();
  for (const auto& l : s.lines) {
    json e = line_json(l.line);
    e["multiplicity"] = l.multiplicity;
    e["residual"] = l.residual;
    lines.push_back(std::move(e));
  }
  return {{"center", point_json(s.center)},
          {"eckardt", s.infinite},
          {"lines", lines},
          {"total_multiplicity", s.total_multiplicity()}};
}

json spanning_lines_json(const SpanningLines& s, const ProjectivePoint<Complex>& center) {
  json lines = json::array();
  for (const auto& l : s.lines) lines.push_back(line_json(l));
  return {{"center", point_json(center)},
          {"mode", "spanning"},
          {"lines", lines},
          {"rank", s.rank.rank},
          {"singular_values", s.rank.singular_values},
          {"slices", s.slices}};
}

json genericity_json(const GenericityFlags& f) {
  return {{"x_in_U_u", f.x_in_U_u}, {"y_in_U_u", f.y_in_U_u}, {"u_in_U_x", f.u_in_U_x}, {"y_in_U_x", f.y_in_U_x}};
}

json certificate_json(const SprayCertificate& c, const json& cubic) {
  json orbits = json::array();
  for (const auto& o : c.orbits)
    orbits.push_back({{"line", line_json(o.line)}, {"z", vector_json(o.z)}, {"tangent", vector_json(o.tangent)}});
  json j;
  j["cubic"] = cubic;
  j["tool_version"] = kToolVersion;
  j["backend"] = backend_name(Backend::Complex);
  j["seed"] = c.seed;
  j["y"] = point_json(c.setup.y);
  j["x"] = point_json(c.setup.x);
  j["u"] = point_json(c.setup.u);
  j["divisor"] = divisor_json(c.setup.divisor);
  j["genericity"] = genericity_json(c.setup.flags);
  j["setup_attempts"] = c.setup.attempts;
  j["orbits"] = orbits;
  j["tangent_matrix"] = matrix_json(c.tangent_matrix);
  j["rank"] = c.rank.rank;
  j["determinant"] = c.determinant ? json(format_rational(*c.determinant)) : json(nullptr);
  j["singular_values"] = c.rank.singular_values.empty() ? json(nullptr) : json(c.rank.singular_values);
  j["differential_residual"] = c.differential_residual;
  j["rank_attempts"] = c.rank_attempts;
  j["slices"] = c.slices;
  j["counterexample_candidate"] = c.counterexample_candidate;
  j["verified"] = c.verified;
  return j;
}

SprayCertificate certificate_from_json(const json& j) {
  try {
    const ProjectivePoint<Complex> y(parse_vector(j.at("y")).numeric);
    const ProjectivePoint<Complex> x(parse_vector(j.at("x")).numeric);
    const ProjectivePoint<Complex> u(parse_vector(j.at("u")).numeric);
    DivisorOnLine<Complex> div{ProjectiveLine<Complex>(y, x.coords(), 0.0), {}, false};
    for (const auto& e : j.at("divisor"))
      div.points.emplace_back(ProjectivePoint<Complex>(parse_vector(e.at("point")).numeric),
                              e.at("multiplicity").get<int>());
    SprayCertificate c{j.at("seed").get<std::uint64_t>(), SpraySetup<Complex>{y, x, u, std::move(div)}};
    if (j.contains("genericity")) {
      const auto& g = j["genericity"];
      c.setup.flags = {g.at("x_in_U_u").get<bool>(), g.at("y_in_U_u").get<bool>(), g.at("u_in_U_x").get<bool>(),
                       g.at("y_in_U_x").get<bool>()};
    }
    for (const auto& o : j.at("orbits"))
      c.orbits.push_back({line_from_json(o.at("line")), parse_vector(o.at("z")).numeric,
                          parse_vector(o.at("tangent")).numeric});
    c.tangent_matrix = complex_matrix_from_json(j.at("tangent_matrix"));
    c.rank.rank = j.at("rank").get<int>();
    if (j.contains("singular_values") && j["singular_values"].is_array())
      c.rank.singular_values = j["singular_values"].get<std::vector<double>>();
    if (j.contains("determinant") && j["determinant"].is_string())
      c.determinant = parse_rational(j["determinant"].get<std::string>());
    c.differential_residual = j.value("differential_residual", 0.0);
    c.rank_attempts = j.value("rank_attempts", 0);
    c.slices = j.value("slices", 0);
    c.counterexample_candidate = j.value("counterexample_candidate", false);
    c.verified = j.at("verified").get<bool>();
    return c;
  } catch (const json::exception& e) {
    fail(ErrorKind::Input, std::string("malformed certificate: ") + e.what());
  }
}

json conic_report_json(const ConicReport& r) {
  json samples = json::array();
  for (const auto& p : r.samples) samples.push_back(point_json(p));
  return {{"u", point_json(r.u_prime)},
          {"line", line_json(r.line)},
          {"y", point_json(r.y_prime)},
          {"z", vector_json(r.z_prime)},
          {"samples", samples},
          {"membership_residual", r.membership_residual},
          {"plane_rank", r.plane_rank},
          {"plane_singular_values", r.plane_singular_values},
          {"moment_rank", r.moment_rank},
          {"moment_singular_values", r.moment_singular_values},
          {"conic_residual", r.conic_residual},
          {"verdict", r.is_conic ? "conic" : "not a conic"}};
}

}  // namespace cubicspray
