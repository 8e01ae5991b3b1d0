#pragma once

// Root finding and plane elimination.
//
// Univariate roots are projective: a drop in degree is reported as a root at
// infinity. Complex roots come from companion-matrix eigenvalues, clustered by
// single linkage, then nearby clusters are merged when the polynomial and its
// derivatives vanish at the merged centre (multiple roots split into
// O(eps^(1/m)) clouds under perturbation).

#include <array>
#include <cstdint>
#include <map>

#include "cubicspray/scalar.hpp"

namespace cubicspray {

template <class T>
struct Root {
  T value{};
  bool at_infinity = false;
  int multiplicity = 1;
};

template <class T>
using RootList = std::vector<Root<T>>;

template <class T>
int total_multiplicity(const RootList<T>& roots) {
  int s = 0;
  for (const auto& r : roots) s += r.multiplicity;
  return s;
}

/// Single-linkage clusters at `radius`; representative is the cluster mean.
RootList<Complex> cluster_roots(const std::vector<Complex>& raw, double radius);

/// Projective roots of sum_k a[k] t^k, where a.size()-1 is the nominal degree.
RootList<Complex> polynomial_roots(const Vec<Complex>& ascending, double cluster_radius = 1e-7);

/// Roots of c0 + c1 t + c2 t^2 + c3 t^3 with t = infinity for degree drop.
/// Throws Solver("identically zero on line") when every coefficient vanishes.
RootList<Complex> cubic_roots(const std::array<Complex, 4>& c, double cluster_radius = 1e-7);

/// Exact variant. Roots at 0 and infinity and the `known` roots are deflated
/// exactly; the remaining factor must split over Q, otherwise Solver is thrown.
RootList<Rational> cubic_roots(const std::array<Rational, 4>& c, const std::vector<Rational>& known = {});

/// Homogeneous polynomial in three variables; key (a, b, c) is x^a y^b z^c.
template <class T>
class TernaryForm {
 public:
  using Exponent = std::array<int, 3>;

  explicit TernaryForm(int degree) : degree_(degree) {}
  TernaryForm(int degree, const std::map<Exponent, T>& coeffs);

  int degree() const { return degree_; }
  const std::map<Exponent, T>& coefficients() const { return coeffs_; }
  T coefficient(int a, int b, int c) const;
  void add(const Exponent& e, const T& value);

  T evaluate(const std::array<T, 3>& p) const;
  std::array<T, 3> gradient(const std::array<T, 3>& p) const;

  /// p -> F(M p).
  TernaryForm transformed(const std::array<std::array<T, 3>, 3>& m) const;

  bool is_zero() const;
  double magnitude_sum() const;

 private:
  int degree_;
  std::map<Exponent, T> coeffs_;
};

struct IntersectionPoint {
  std::array<Complex, 3> point;
  int multiplicity = 1;
};

struct PlaneIntersection {
  bool infinite = false;
  std::vector<IntersectionPoint> points;
  // Witness data: largest resultant coefficient relative to its Hadamard
  // scale on the last attempt, and how many coordinate changes were tried.
  double resultant_relative = 0.0;
  int attempts = 0;
};

/// Conic Q and plane cubic C. Eliminates z from a seeded random coordinate
/// change by the Sylvester resultant, back-substitutes, and maps the points
/// back. Declares `infinite` after three identically-zero resultants. The
/// rational overload decides infinitude exactly and solves numerically.
template <class T>
PlaneIntersection conic_cubic_intersect(const TernaryForm<T>& q, const TernaryForm<T>& c, std::uint64_t seed,
                                        double cluster_radius = 1e-7, int max_attempts = 8);

template <>
PlaneIntersection conic_cubic_intersect(const TernaryForm<Complex>& q, const TernaryForm<Complex>& c,
                                        std::uint64_t seed, double cluster_radius, int max_attempts);
template <>
PlaneIntersection conic_cubic_intersect(const TernaryForm<Rational>& q, const TernaryForm<Rational>& c,
                                        std::uint64_t seed, double cluster_radius, int max_attempts);

/// Exact common-component test: the resultant vanishes identically under
/// three independent admissible coordinate changes.
bool has_common_component(const TernaryForm<Rational>& q, const TernaryForm<Rational>& c, std::uint64_t seed,
                          int max_attempts = 8);

TernaryForm<Complex> to_complex(const TernaryForm<Rational>& f);

}  // namespace cubicspray
