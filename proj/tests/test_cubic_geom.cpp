#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "cubicspray/errors.hpp"
#include "support.hpp"

using namespace cubicspray;
using namespace cubicspray::testing;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("membership and smoothness") {
  const auto X = fermat_q();
  CHECK(contains(X, pq({3, 4, 5, -6, 0})));
  CHECK(!contains(X, pq({3, 4, 5, 6, 0})));
  CHECK(check_smooth_at(X, pq({3, 4, 5, -6, 0})));
  CHECK(kind_of([&] { tangent_hyperplane(X, pq({1, 1, 1, 1, 1})); }) == ErrorKind::Input);

  // x0^3 + x1^2 x2 is singular at (0:0:1:0)
  const CubicHypersurface<Rational> cusp(
      HomogeneousCubic<Rational>(4, {{make_monomial(0, 0, 0), 1}, {make_monomial(1, 1, 2), 1}}));
  CHECK(!check_smooth_at(cusp, pq({0, 0, 1, 0})));
  CHECK(kind_of([&] { tangent_hyperplane(cusp, pq({0, 0, 1, 0})); }) == ErrorKind::Input);
}

TEST_CASE("tangent frames") {
  const auto Xc = fermat_c();
  const auto y = pc({3, 4, 5, -6, 0});
  const auto th = tangent_hyperplane(Xc, y);
  REQUIRE(th.frame.basis.size() == 3);
  CHECK(span_rank(th.frame.basis, 1e-10).rank == 3);
  for (const auto& w : th.frame.basis) {
    CHECK(std::abs(dot(th.covector, w)) < 1e-10);
    CHECK(std::abs(hermitian_dot(y.coords(), w)) < 1e-10);
  }
  const auto w = th.frame.basis[1];
  const auto red = reduce_to_frame(th.frame, axpby(Complex(2.0), w, Complex(0, 5), y.coords()));
  CHECK(std::abs(red[1] - 2.0) < 1e-10);
  CHECK(std::abs(red[0]) < 1e-10);

  const auto Xq = fermat_q();
  const auto tq = tangent_hyperplane(Xq, pq({3, 4, 5, -6, 0}));
  REQUIRE(tq.frame.basis.size() == 3);
  for (const auto& v : tq.frame.basis) CHECK(dot(tq.covector, v) == 0);
  Mat<Rational> rows = tq.frame.basis;
  rows.push_back(rv({3, 4, 5, -6, 0}));
  CHECK(span_rank(rows).rank == 4);
}

TEST_CASE("S_u, S*_u and C_u on the fermat threefold") {
  const auto X = fermat_q();
  const auto u = pq({1, -1, 0, 0, 0});
  const auto on_line = pq({0, 0, 1, -1, 0});
  const auto off = pq({1, 0, -1, 0, 0});
  CHECK(in_S(X, u, on_line));
  CHECK(!in_S(X, u, off));
  CHECK(in_S_star(X, u, on_line));
  CHECK(!in_S_star(X, u, off));
  CHECK(in_C(X, u, on_line));
  CHECK(!in_C(X, u, off));
  CHECK(in_C(X, u, u));

  const auto Xc = fermat_c();
  CHECK(in_C(Xc, pc({1, -1, 0, 0, 0}), pc({0, 0, 1, -1, 0})));
  CHECK(!in_C(Xc, pc({1, -1, 0, 0, 0}), pc({1, 0, -1, 0, 0})));
}

TEST_CASE("third point") {
  const auto X = fermat_q();
  const auto u = pq({1, -1, 0, 0, 0});
  CHECK(third_point(X, u, pq({1, 0, -1, 0, 0})) == pq({0, 1, -1, 0, 0}));
  CHECK(kind_of([&] { third_point(X, u, pq({0, 0, 1, -1, 0})); }) == ErrorKind::Indeterminate);
  CHECK(kind_of([&] { third_point(X, u, pq({1, 0, 0, 0, 0})); }) == ErrorKind::Input);

  const auto Xc = fermat_c();
  const auto y = third_point(Xc, pc({1, -1, 0, 0, 0}), pc({1, 0, -1, 0, 0}));
  CHECK(proj_equal(y, pc({0, 1, -1, 0, 0})));
}

TEST_CASE("involution and fixed points on a random rational cubic") {
  const auto X = fermat_q();
  const Vec<Rational> base = rv({3, 4, 5, -6, 0});
  int checked = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto u = random_point_on_cubic(X.form(), base, derive_seed(s, 1));
    const auto x = random_point_on_cubic(X.form(), u.coords(), derive_seed(s, 2));
    // x is on a tangent line at u, so x in S_u and tau_u contracts it onto u
    if (in_C(X, u, x)) continue;
    CHECK(in_S(X, u, x));
    CHECK(third_point(X, u, x) == u);
    // the same pair seen from x: u is in S*_x and fixed by tau_x
    CHECK(in_S_star(X, x, u));
    CHECK(third_point(X, x, u) == u);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("bezout divisor") {
  const auto X = fermat_q();
  const auto a = pq({1, 0, -1, 0, 0});
  const auto b = pq({1, -1, 0, 0, 0});
  const auto d = bezout_divisor(X, a, b);
  CHECK(d.reduced());
  CHECK(d.degree() == 3);
  bool found = false;
  for (const auto& [p, m] : d.points) found = found || p == pq({0, 1, -1, 0, 0});
  CHECK(found);

  const auto on = bezout_divisor(X, pq({1, -1, 0, 0, 0}), pq({0, 0, 1, -1, 0}));
  CHECK(on.contained);
  CHECK(!on.reduced());

  const auto Xc = fermat_c();
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const ProjectivePoint<Complex> p(rng.complex_vector(5)), q(rng.complex_vector(5));
    const auto dc = bezout_divisor(Xc, p, q);
    CHECK((dc.contained || dc.degree() == 3));
    for (const auto& [pt, m] : dc.points) CHECK(contains(Xc, pt));
  }
}

TEST_CASE("six lines through (3:4:5:-6:0)") {
  const auto X = fermat_c();
  const auto x = pc({3, 4, 5, -6, 0});
  const LineSet ls = lines_through(X, x, 0);
  CHECK(!ls.infinite);
  CHECK(ls.total_multiplicity() == 6);
  CHECK(ls.lines.size() == 6);
  for (const auto& l : ls.lines) {
    CHECK(l.residual < 1e-9);
    CHECK(line_residual(X, l.line.base().coords(), l.line.dir()) < 1e-9);
    CHECK(l.line.contains(x.coords(), 1e-8));
  }
  // seed changes only the internal coordinates
  CHECK(lines_through(X, x, 12).total_multiplicity() == 6);
  CHECK(!is_eckardt(X, x));
  CHECK(!is_eckardt(fermat_q(), pq({3, 4, 5, -6, 0})));
}

TEST_CASE("eckardt points of the fermat threefold") {
  const auto X = fermat_c();
  CHECK(lines_through(X, pc({1, -1, 0, 0, 0})).infinite);
  CHECK(is_eckardt(X, pc({1, 0, -1, 0, 0})));
  CHECK(is_eckardt(fermat_q(), pq({1, 0, -1, 0, 0})));
  CHECK(is_eckardt(fermat_q(), pq({0, 0, 0, 1, -1})));
  const Complex w = std::polar(1.0, std::numbers::pi / 3.0);
  CHECK(is_eckardt(X, ProjectivePoint<Complex>(Vec<Complex>{0.0, 1.0, 0.0, w, 0.0})));
  CHECK(kind_of([&] { lines_through(fermat_c(4), ProjectivePoint<Complex>(cv({1, -1, 0, 0, 0, 0}))); }) ==
        ErrorKind::Input);
}

TEST_CASE("lines through u lie in S_u and S*_u") {
  const auto X = fermat_c();
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto u = random_point_on_cubic(X.form(), s);
    const LineSet ls = lines_through(X, u, s);
    REQUIRE(!ls.infinite);
    Rng rng(s);
    for (const auto& l : ls.lines) {
      const ProjectivePoint<Complex> p(axpby(Complex(1.0), u.coords(), rng.complex_normal(), l.line.dir()));
      CHECK(in_S(X, u, p));
      CHECK(in_S_star(X, u, p));
      CHECK(in_C(X, u, p));
    }
  }
}

TEST_CASE("spanning lines") {
  const auto X3 = fermat_c();
  const auto s3 = spanning_lines(X3, pc({3, 4, 5, -6, 0}), 1);
  CHECK(s3.lines.size() == 3);
  CHECK(s3.rank.rank == 3);

  const auto X4 = fermat_c(4);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto x = random_point_on_cubic(X4.form(), seed);
    const auto s4 = spanning_lines(X4, x, seed);
    CHECK(s4.lines.size() == 4);
    CHECK(s4.rank.rank == 4);
    CHECK(s4.slices >= 1);
    for (const auto& l : s4.lines) CHECK(line_residual(X4, l.base().coords(), l.dir()) < 1e-9);
  }
}
