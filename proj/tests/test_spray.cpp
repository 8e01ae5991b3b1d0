#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicspray/errors.hpp"
#include "cubicspray/json_io.hpp"
#include "cubicspray/spray.hpp"
#include "support.hpp"

using namespace cubicspray;
using namespace cubicspray::testing;

namespace {

bool has_reason(const VerifyResult& v, const std::string& r) {
  for (const auto& s : v.reasons)
    if (s == r) return true;
  return false;
}

}  // namespace

TEST_CASE("complex setup at (0:1:-1:0:0)") {
  const auto X = fermat_c();
  const auto y = pc({0, 1, -1, 0, 0});
  const auto setup = pick_setup(X, y, 1);
  CHECK(setup.flags.all());
  CHECK(setup.divisor.reduced());
  CHECK(contains(X, setup.x));
  CHECK(contains(X, setup.u));
  CHECK(proj_equal(third_point(X, setup.u, setup.x), y, 1e-8));
  CHECK(genericity(X, setup.y, setup.x, setup.u).all());
  // deterministic per seed
  const auto again = pick_setup(X, y, 1);
  CHECK(again.x == setup.x);
  CHECK(again.u == setup.u);
}

TEST_CASE("rational setups stay exact") {
  const auto X = fermat_q();
  const auto y = random_point_on_cubic(X.form(), rv({3, 4, 5, -6, 0}), 2);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto setup = pick_setup(X, y, s);
    CHECK(setup.flags.all());
    CHECK(setup.divisor.reduced());
    CHECK(X.form().evaluate(setup.x.coords()) == 0);
    CHECK(X.form().evaluate(setup.u.coords()) == 0);
    CHECK(third_point(X, setup.u, setup.x) == y);
  }
}

TEST_CASE("orbits stay on X and pass through y at t = 0") {
  const auto X = fermat_c();
  const auto y = pc({3, 4, 5, -6, 0});
  const auto setup = pick_setup(X, y, 4);
  const auto lines = spanning_lines(X, setup.x, 4).lines;
  const TangentFrame<Complex> frame_y = tangent_frame(X, y);
  for (const auto& l : lines) {
    const Vec<Complex> z = tangent_point_z(X.polar(), setup.u.coords(), setup.x.coords(), l.dir());
    CHECK(l.contains(z, 1e-8));
    CHECK(X.negligible(X.polar()(z, setup.u.coords(), setup.u.coords()), z, setup.u.coords(), setup.u.coords()));
    CHECK(proj_equal(orbit_point(X, setup.u, setup.x.coords(), z, Complex(0.0)), y, 1e-8));
    for (double t : {0.3, -1.1, 2.5, 0.01, 7.0}) {
      const auto p = orbit_point(X, setup.u, setup.x.coords(), z, Complex(t, 0.5 * t));
      CHECK(contains(X, p));
    }
    const auto tan = orbit_tangent(X, setup.u, setup.x.coords(), z, frame_y);
    CHECK(tan.size() == 3);
    CHECK(finite_difference_error(X, setup.u, setup.x.coords(), z, frame_y) < 1e-6);
  }
}

TEST_CASE("exact orbit velocity matches a difference quotient") {
  const auto X = fermat_q();
  const auto y = random_point_on_cubic(X.form(), rv({3, 4, 5, -6, 0}), 9);
  const auto setup = pick_setup(X, y, 3);
  const Vec<Rational> w = rv({1, 2, -1, 0, 3});
  const auto z = tangent_point_z(X.polar(), setup.u.coords(), setup.x.coords(), w);
  // The raw orbit map is quadratic in t: g(t) = g0 + g1 t + g2 t^2, so
  // (g(h) - g(-h)) / 2h equals g1 exactly.
  auto raw = [&](const Rational& t) {
    return third_point_raw(X.polar(), setup.u.coords(), axpby(Rational(1), setup.x.coords(), t, z));
  };
  const Rational h(1, 3);
  const auto diff = axpby(Rational(3, 2), raw(h), Rational(-3, 2), raw(-h));
  CHECK(diff == orbit_velocity(X.polar(), setup.u.coords(), setup.x.coords(), z));
}

TEST_CASE("certificates on the fermat threefold") {
  const auto X = fermat_c();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto y = random_point_on_cubic(X.form(), derive_seed(s, 1));
    const auto cert = build_certificate(X, y, s);
    CHECK(cert.rank.rank == 3);
    CHECK(cert.verified);
    CHECK(!cert.counterexample_candidate);
    CHECK(cert.orbits.size() == 3);
    CHECK(cert.differential_residual < 1e-8);
    CHECK(verify_certificate(X, cert).ok);
  }
}

TEST_CASE("certificate on the fermat fourfold") {
  const auto X = fermat_c(4);
  const auto y = random_point_on_cubic(X.form(), 5);
  const auto cert = build_certificate(X, y, 5);
  CHECK(cert.rank.rank == 4);
  CHECK(cert.verified);
}

TEST_CASE("tampered certificates are rejected") {
  const auto X = fermat_c();
  const auto cert = build_certificate(X, pc({0, 1, -1, 0, 0}), 1);
  REQUIRE(cert.verified);

  auto moved_u = cert;
  moved_u.setup.u = pc({1, 2, 3, 4, 5});
  const auto v1 = verify_certificate(X, moved_u);
  CHECK(!v1.ok);
  CHECK(has_reason(v1, "u not on X"));

  auto bent_line = cert;
  bent_line.orbits[0].line = ProjectiveLine<Complex>(cert.setup.x, cv({1, 2, 3, 4, 5}));
  const auto v2 = verify_certificate(X, bent_line);
  CHECK(!v2.ok);
  CHECK(has_reason(v2, "line incidence"));

  auto wrong_tangent = cert;
  wrong_tangent.orbits[1].tangent[0] += 1.0;
  CHECK(!verify_certificate(X, wrong_tangent).ok);

  auto short_orbits = cert;
  short_orbits.orbits.pop_back();
  CHECK(has_reason(verify_certificate(X, short_orbits), "orbit count"));
}

TEST_CASE("certificate json round trip") {
  const auto X = fermat_c();
  const auto cert = build_certificate(X, pc({0, 1, -1, 0, 0}), 1);
  const json doc = certificate_json(cert, cubic_json(fermat_cubic(3)));
  CHECK(doc["rank"] == 3);
  CHECK(doc["verified"] == true);
  CHECK(doc["determinant"].is_null());
  const auto back = certificate_from_json(json::parse(doc.dump()));
  CHECK(verify_certificate(X, back).ok);
  json broken = doc;
  broken.erase("orbits");
  CHECK_THROWS_AS(certificate_from_json(broken), Error);
}

TEST_CASE("orbits through a general y' are plane conics") {
  const auto X = fermat_c();
  const auto setup = pick_setup(X, pc({3, 4, 5, -6, 0}), 2);
  const auto l = spanning_lines(X, setup.x, 2).lines.front();
  int checked = 0;
  for (std::uint64_t s = 0; s < 8 && checked < 3; ++s) {
    const auto y_prime = random_point_on_cubic(X.form(), derive_seed(s, 77));
    if (!genericity(X, y_prime, setup.x, third_point(X, setup.x, y_prime)).all()) continue;
    const ConicReport r = conic_orbit_check(X, l, y_prime, s);
    CHECK(r.is_conic);
    CHECK(r.plane_rank == 3);
    CHECK(r.moment_rank == 5);
    CHECK(r.conic_residual < 1e-9);
    CHECK(r.samples.size() == 9);
    ++checked;
  }
  CHECK(checked == 3);

  try {
    conic_orbit_check(X, l, random_point_on_cubic(X.form(), 1), 1, 5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
    CHECK(std::string(e.what()).find("insufficient samples") != std::string::npos);
  }
}
