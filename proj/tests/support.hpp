#pragma once
// Shared fixtures for the unit test binaries.

#include <cstdint>

#include "cubicspray/cubic_geom.hpp"
#include "cubicspray/random.hpp"

namespace cubicspray::testing {

inline Vec<Rational> rv(std::initializer_list<long> xs) {
  Vec<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Vec<Complex> cv(std::initializer_list<double> xs) {
  Vec<Complex> v;
  for (double x : xs) v.emplace_back(x, 0.0);
  return v;
}

inline CubicHypersurface<Rational> fermat_q(int dim = 3) { return CubicHypersurface<Rational>(fermat_cubic(dim)); }
inline CubicHypersurface<Complex> fermat_c(int dim = 3) { return CubicHypersurface<Complex>(to_complex(fermat_cubic(dim))); }

inline ProjectivePoint<Rational> pq(std::initializer_list<long> xs) { return ProjectivePoint<Rational>(rv(xs)); }
inline ProjectivePoint<Complex> pc(std::initializer_list<double> xs) { return ProjectivePoint<Complex>(cv(xs)); }

// Dense random cubic with small integer coefficients.
inline HomogeneousCubic<Rational> random_rational_cubic(int num_vars, std::uint64_t seed, long bound = 5) {
  Rng rng(seed);
  std::map<Monomial, Rational> c;
  for (int i = 0; i < num_vars; ++i)
    for (int j = i; j < num_vars; ++j)
      for (int k = j; k < num_vars; ++k) c[make_monomial(i, j, k)] = Rational(rng.integer(-bound, bound));
  c[make_monomial(0, 0, 0)] = Rational(bound + 1);
  return HomogeneousCubic<Rational>(num_vars, c);
}

inline Vec<Rational> random_rational_vector(Rng& rng, std::size_t n) {
  Vec<Rational> v;
  for (std::size_t i = 0; i < n; ++i) {
    Rational q(rng.integer(-9, 9), rng.integer(1, 7));
    q.canonicalize();
    v.push_back(q);
  }
  return v;
}

}  // namespace cubicspray::testing
