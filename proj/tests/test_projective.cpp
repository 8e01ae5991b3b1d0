#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicspray/errors.hpp"
#include "cubicspray/linalg.hpp"
#include "cubicspray/projective.hpp"
#include "support.hpp"

using namespace cubicspray;
using namespace cubicspray::testing;

TEST_CASE("rational normalization puts 1 at the first nonzero coordinate") {
  const ProjectivePoint<Rational> p(rv({0, -2, 4, 6}));
  CHECK(p.coords() == Vec<Rational>{0, 1, -2, -3});
  CHECK(p == ProjectivePoint<Rational>(rv({0, 1, -2, -3})));
  CHECK_THROWS_AS(ProjectivePoint<Rational>(rv({0, 0, 0})), Error);
}

TEST_CASE("complex normalization puts 1 at the largest coordinate") {
  const ProjectivePoint<Complex> p(Vec<Complex>{{0, 1}, {0, -4}, {2, 0}});
  CHECK(std::abs(p[1] - Complex(1, 0)) < 1e-15);
  const ProjectivePoint<Complex> q(Vec<Complex>{{0, 2}, {0, -8}, {4, 0}});
  CHECK(proj_equal(p, q));
  const Vec<Complex> nan{{std::nan(""), 0}, {1, 0}};
  CHECK_THROWS_AS((ProjectivePoint<Complex>(nan)), Error);
}

TEST_CASE("projective equality by 2x2 minors") {
  CHECK(proj_equal(rv({1, 2, 3}), rv({-2, -4, -6})));
  CHECK(!proj_equal(rv({1, 2, 3}), rv({1, 2, 4})));
  CHECK(proj_equal(cv({1, 2, 3}), cv({2, 4, 6 + 1e-12})));
  CHECK(!proj_equal(cv({1, 2, 3}), cv({2, 4, 6.1})));
}

TEST_CASE("lines do not depend on the chosen generators") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_rational_vector(rng, 5);
    const auto b = random_rational_vector(rng, 5);
    if (proj_equal(a, b)) continue;
    const auto l = line_through(ProjectivePoint<Rational>(a), ProjectivePoint<Rational>(b));
    const auto swapped = line_through(ProjectivePoint<Rational>(b), ProjectivePoint<Rational>(a));
    CHECK(l.contains(a));
    CHECK(l.contains(b));
    CHECK(swapped.contains(l.point_at(Rational(3), Rational(-7, 2))));
    CHECK(l.contains(swapped.point_at(Rational(-1), Rational(5))));
    CHECK(!l.contains(random_rational_vector(rng, 5)));
  }
  CHECK_THROWS_AS(line_through(pq({1, 2, 3}), pq({2, 4, 6})), Error);
}

TEST_CASE("rational point sampling lands on the cubic exactly") {
  const auto f = fermat_cubic(3);
  const auto p = random_point_on_cubic(f, rv({3, 4, 5, -6, 0}), 7);
  CHECK(f.evaluate(p.coords()) == 0);
  CHECK(!proj_equal(p.coords(), rv({3, 4, 5, -6, 0})));
  // deterministic per seed
  CHECK(random_point_on_cubic(f, rv({3, 4, 5, -6, 0}), 7) == p);
  CHECK_THROWS_AS(random_point_on_cubic(f, rv({1, 1, 0, 0, 0}), 7), Error);
}

TEST_CASE("complex point sampling lands on the cubic") {
  const auto f = to_complex(fermat_cubic(3));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = random_point_on_cubic(f, s);
    CHECK(std::abs(f.evaluate(p.coords())) < 1e-10 * f.scale());
  }
}

TEST_CASE("random subspaces through a point") {
  const auto x = pq({1, 2, 3, 4, 5});
  const auto m = random_subspace_through(x, 3, 4);
  REQUIRE(m.size() == 4);
  CHECK(m[0] == x.coords());
  CHECK(span_rank(m).rank == 4);
}

TEST_CASE("exact rank of three vectors and their pairwise sums") {
  Rng rng(17);
  const auto a = random_rational_vector(rng, 5), b = random_rational_vector(rng, 5),
             c = random_rational_vector(rng, 5);
  const Mat<Rational> rows{a, b, c, axpby(Rational(1), a, Rational(1), b), axpby(Rational(1), b, Rational(1), c),
                           axpby(Rational(1), a, Rational(1), c)};
  const RankResult r = span_rank(rows);
  CHECK(r.rank == 3);
  REQUIRE(r.minor);
  CHECK(*r.minor != 0);
  CHECK(r.minor_rows.size() == 3);
}

TEST_CASE("numeric rank and determinants") {
  const Mat<Complex> m{cv({1, 0, 0}), cv({0, 1, 0}), cv({1, 1, 1e-12})};
  const RankResult r = span_rank(m, 1e-8);
  CHECK(r.rank == 2);
  CHECK(r.singular_values.size() == 3);
  CHECK(span_rank(m, 1e-14).rank == 3);
  CHECK(determinant(Mat<Rational>{rv({2, 1}), rv({1, 3})}) == 5);
  CHECK(std::abs(determinant(Mat<Complex>{cv({2, 1}), cv({1, 3})}) - 5.0) < 1e-12);
}

TEST_CASE("null space and exact solve") {
  const Mat<Complex> a{cv({1, 1, 0, 0})};
  const auto ns = null_space(a);
  CHECK(ns.size() == 3);
  for (const auto& v : ns) CHECK(std::abs(dot(a[0], v)) < 1e-12);
  const auto x = solve_exact(Mat<Rational>{rv({1, 0}), rv({0, 2}), rv({1, 1})}, rv({1, 4, 3}));
  REQUIRE(x);
  CHECK(*x == rv({1, 2}));
  CHECK(!solve_exact(Mat<Rational>{rv({1, 0}), rv({0, 2}), rv({1, 1})}, rv({1, 4, 4})));
}

TEST_CASE("seeded generator is reproducible") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
  Rng r(3);
  for (int i = 0; i < 200; ++i) {
    const long k = r.integer(-2, 2);
    CHECK(k >= -2);
    CHECK(k <= 2);
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
