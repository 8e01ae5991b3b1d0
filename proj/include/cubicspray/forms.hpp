#pragma once

/**
 * @file forms.hpp
 * @brief Homogeneous cubic forms, their symmetric trilinear polarization, and
 *        restriction to lines.
 *
 * Both classes are templated on the scalar backend and instantiated for
 * Rational and Complex in forms.cpp.
 */

#include <array>
#include <map>
#include <optional>
#include <string_view>

#include "cubicspray/scalar.hpp"

namespace cubicspray {

/// Sorted variable indices {i <= j <= k} of a cubic monomial x_i x_j x_k.
using Monomial = std::array<int, 3>;

Monomial make_monomial(int i, int j, int k);

/// Number of distinct orderings of the multiset {i, j, k}: 1, 3 or 6.
int multinomial_count(const Monomial& m);

template <class T>
class HomogeneousCubic {
 public:
  /// Sums duplicate keys and drops zero entries. Throws on an empty form.
  HomogeneousCubic(int num_vars, const std::map<Monomial, T>& coefficients);

  int num_vars() const { return num_vars_; }
  int dim() const { return num_vars_ - 2; }
  const std::map<Monomial, T>& coefficients() const { return coeffs_; }

  T evaluate(const Vec<T>& p) const;
  Vec<T> gradient(const Vec<T>& p) const;

  /// Sum of coefficient magnitudes; bounds |F(p)| when every |p_i| <= 1.
  double scale() const { return scale_; }

 private:
  int num_vars_;
  std::map<Monomial, T> coeffs_;
  double scale_ = 0.0;
};

template <class T>
class TrilinearForm {
 public:
  explicit TrilinearForm(const HomogeneousCubic<T>& f);

  int num_vars() const { return n_; }
  const T& at(int i, int j, int k) const { return dense_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }

  T operator()(const Vec<T>& a, const Vec<T>& b, const Vec<T>& c) const;

  /// Covector w -> P(a, b, w).
  Vec<T> contract(const Vec<T>& a, const Vec<T>& b) const;

 private:
  int n_;
  Vec<T> dense_;
};

template <class T>
TrilinearForm<T> polarize(const HomogeneousCubic<T>& f) {
  return TrilinearForm<T>(f);
}

/// F(x + t v) = c[0] + c[1] t + c[2] t^2 + c[3] t^3.
template <class T>
struct LineRestriction {
  std::array<T, 4> c;

  T operator()(const T& t) const { return c[0] + t * (c[1] + t * (c[2] + t * c[3])); }
  bool identically_zero() const { return is_zero(c[0]) && is_zero(c[1]) && is_zero(c[2]) && is_zero(c[3]); }
};

template <class T>
LineRestriction<T> restrict_to_line(const TrilinearForm<T>& p, const Vec<T>& x, const Vec<T>& v);

/// Throws Input when v is proportional to x.
template <class T>
LineRestriction<T> restrict_to_line(const HomogeneousCubic<T>& f, const Vec<T>& x, const Vec<T>& v);

/// F restricted to the linear span of `basis`, as a cubic in basis coordinates.
template <class T>
HomogeneousCubic<T> restrict_to_subspace(const TrilinearForm<T>& p, const Mat<T>& basis);

HomogeneousCubic<Complex> to_complex(const HomogeneousCubic<Rational>& f);

/// Result of reading the cubic JSON document.
struct ParsedCubic {
  int dim = 0;
  std::optional<HomogeneousCubic<Rational>> exact;  // present when every coefficient is rational
  HomogeneousCubic<Complex> numeric;
  std::optional<Vec<Rational>> base_point;          // optional "base_point" extension
};

/// {"dim": n, "coeffs": [{"mono": [i,j,k], "val": "p/q" | [re, im]}, ...]}
ParsedCubic parse_cubic(std::string_view text);

HomogeneousCubic<Rational> fermat_cubic(int dim);

}  // namespace cubicspray
