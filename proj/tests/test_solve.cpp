#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicspray/errors.hpp"
#include "cubicspray/solve.hpp"

using namespace cubicspray;

namespace {

bool has_root(const RootList<Complex>& roots, Complex v, int mult, double tol = 1e-8) {
  for (const auto& r : roots)
    if (!r.at_infinity && std::abs(r.value - v) < tol && r.multiplicity == mult) return true;
  return false;
}

bool has_infinite(const RootList<Complex>& roots, int mult) {
  for (const auto& r : roots)
    if (r.at_infinity && r.multiplicity == mult) return true;
  return false;
}

// Point of P^2 equal to p up to scale.
bool same_point(const std::array<Complex, 3>& a, const std::array<Complex, 3>& b, double tol = 1e-7) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(a[i] * b[j] - a[j] * b[i]) > tol * std::max(1.0, std::abs(a[i]) + std::abs(a[j]))) return false;
  return true;
}

}  // namespace

TEST_CASE("roots of the fermat line restriction (0, 3, 3, 0)") {
  const auto roots = cubic_roots(std::array<Complex, 4>{0.0, 3.0, 3.0, 0.0});
  CHECK(total_multiplicity(roots) == 3);
  CHECK(has_root(roots, 0.0, 1));
  CHECK(has_root(roots, -1.0, 1));
  CHECK(has_infinite(roots, 1));

  const auto exact = cubic_roots(std::array<Rational, 4>{0, 3, 3, 0});
  CHECK(total_multiplicity(exact) == 3);
  int finite = 0;
  for (const auto& r : exact)
    if (!r.at_infinity) {
      ++finite;
      CHECK((r.value == 0 || r.value == -1));
    }
  CHECK(finite == 2);
}

TEST_CASE("multiple roots are merged") {
  // (t - 2)^3
  const auto triple = cubic_roots(std::array<Complex, 4>{-8.0, 12.0, -6.0, 1.0});
  CHECK(triple.size() == 1);
  CHECK(has_root(triple, 2.0, 3, 1e-6));
  // t^2 (t + 1) with a degree drop is not at infinity
  const auto dbl = cubic_roots(std::array<Complex, 4>{0.0, 0.0, 1.0, 1.0});
  CHECK(has_root(dbl, 0.0, 2));
  CHECK(has_root(dbl, -1.0, 1));
  // constant: triple root at infinity
  const auto inf = cubic_roots(std::array<Complex, 4>{5.0, 0.0, 0.0, 0.0});
  CHECK(has_infinite(inf, 3));
  CHECK_THROWS_AS(cubic_roots(std::array<Complex, 4>{0.0, 0.0, 0.0, 0.0}), Error);
}

TEST_CASE("exact cubic roots with known roots deflated") {
  // (t - 1)(t - 1/2)(t + 3) = t^3 + 3/2 t^2 - 4 t + 3/2
  const std::array<Rational, 4> c{Rational(3, 2), -4, Rational(3, 2), 1};
  const auto roots = cubic_roots(c, {Rational(1)});
  CHECK(total_multiplicity(roots) == 3);
  // the same cubic with nothing known
  const auto found = cubic_roots(c);
  CHECK(total_multiplicity(found) == 3);
  int hits = 0;
  for (const auto& r : found) hits += (r.value == 1 || r.value == Rational(1, 2) || r.value == -3) ? 1 : 0;
  CHECK(hits == 3);
  // irreducible over Q
  CHECK_THROWS_AS(cubic_roots(std::array<Rational, 4>{-2, 0, 0, 1}), Error);
}

TEST_CASE("polynomial roots of higher degree and clustering") {
  // (t^2 + 1)(t - 3) = t^3 - 3 t^2 + t - 3
  const auto r = polynomial_roots(Vec<Complex>{-3.0, 1.0, -3.0, 1.0});
  CHECK(has_root(r, Complex(0, 1), 1));
  CHECK(has_root(r, Complex(0, -1), 1));
  CHECK(has_root(r, 3.0, 1));
  const auto clusters = cluster_roots({1.0, 1.0 + 1e-9, 2.0}, 1e-7);
  CHECK(clusters.size() == 2);
  CHECK(total_multiplicity(clusters) == 3);
}

TEST_CASE("conic xy - z^2 meets x^3 + y^3 - 2 z^3 in six points") {
  const TernaryForm<Rational> q(2, {{{1, 1, 0}, 1}, {{0, 0, 2}, -1}});
  const TernaryForm<Rational> c(3, {{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, -2}});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto inter = conic_cubic_intersect(q, c, seed);
    CHECK(!inter.infinite);
    int total = 0;
    const auto qc = to_complex(q), cc = to_complex(c);
    for (const auto& p : inter.points) {
      total += p.multiplicity;
      const double scale = std::abs(p.point[0]) + std::abs(p.point[1]) + std::abs(p.point[2]);
      CHECK(std::abs(qc.evaluate(p.point)) < 1e-9 * scale * scale);
      CHECK(std::abs(cc.evaluate(p.point)) < 1e-9 * scale * scale * scale);
    }
    CHECK(total == 6);
  }
  CHECK(!has_common_component(q, c, 1));
}

TEST_CASE("conic x^2 + y^2 meets z^3 in (1:i:0) and (1:-i:0) with multiplicity 3") {
  const TernaryForm<Complex> q(2, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}});
  const TernaryForm<Complex> c(3, {{{0, 0, 3}, 1.0}});
  const auto inter = conic_cubic_intersect(q, c, 7);
  CHECK(!inter.infinite);
  REQUIRE(inter.points.size() == 2);
  bool plus = false, minus = false;
  for (const auto& p : inter.points) {
    CHECK(p.multiplicity == 3);
    plus = plus || same_point(p.point, {1.0, Complex(0, 1), 0.0}, 1e-4);
    minus = minus || same_point(p.point, {1.0, Complex(0, -1), 0.0}, 1e-4);
  }
  CHECK(plus);
  CHECK(minus);
}

TEST_CASE("shared components make the intersection infinite") {
  // q = x (x + y), c = x (y^2 - z^2)
  const TernaryForm<Rational> q(2, {{{2, 0, 0}, 1}, {{1, 1, 0}, 1}});
  const TernaryForm<Rational> c(3, {{{1, 2, 0}, 1}, {{1, 0, 2}, -1}});
  CHECK(has_common_component(q, c, 4));
  CHECK(conic_cubic_intersect(q, c, 4).infinite);
  CHECK(conic_cubic_intersect(to_complex(q), to_complex(c), 4).infinite);
}

TEST_CASE("ternary forms") {
  const TernaryForm<Rational> f(3, {{{1, 1, 1}, 2}, {{3, 0, 0}, 1}});
  CHECK(f.evaluate({1, 2, 3}) == 13);
  const auto g = f.gradient({1, 2, 3});
  CHECK(g[0] == 15);
  CHECK(g[1] == 6);
  CHECK(g[2] == 4);
  // swap x and z
  const auto t = f.transformed({{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}});
  CHECK(t.evaluate({3, 2, 1}) == 13);
  CHECK(TernaryForm<Rational>(2).is_zero());
}
