#pragma once

// Scalar backends. Rational is exact (GMP), Complex is IEEE double.
// Generic code is written against Field<T>.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cubicspray {

using Rational = mpq_class;
using Complex = std::complex<double>;

template <class T>
using Vec = std::vector<T>;

template <class T>
using Mat = std::vector<Vec<T>>;  // row-major list of rows

enum class Backend { Rational, Complex };

const char* backend_name(Backend b);

/// Decision thresholds shared by all complex-backend predicates.
struct Tolerances {
  double membership = 1e-10;      // |F(p)| relative to coefficient and point scale
  double rank = 1e-8;             // singular value cut, relative to sigma_max
  double cluster_radius = 1e-7;   // root clustering radius
  int retries = 32;               // setup resample limit
  int slice_retries = 16;         // P^4 slices for spanning lines
  int rank_retries = 8;           // certificate rebuilds before reporting rank deficiency
};

template <class T>
struct Field;

template <>
struct Field<Rational> {
  static constexpr bool exact = true;
  static constexpr Backend backend = Backend::Rational;
  static double magnitude(const Rational& v) { return std::abs(v.get_d()); }
  static bool negligible(const Rational& v, double /*scale*/, double /*tol*/) { return sgn(v) == 0; }
  static Rational conj(const Rational& v) { return v; }
  static Rational from_int(long v) { return Rational(v); }
  static bool finite(const Rational&) { return true; }
};

template <>
struct Field<Complex> {
  static constexpr bool exact = false;
  static constexpr Backend backend = Backend::Complex;
  static double magnitude(const Complex& v) { return std::abs(v); }
  static bool negligible(const Complex& v, double scale, double tol) { return std::abs(v) <= tol * scale; }
  static Complex conj(const Complex& v) { return std::conj(v); }
  static Complex from_int(long v) { return Complex(static_cast<double>(v), 0.0); }
  static bool finite(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
};

template <class T>
bool is_zero(const T& v) {
  if constexpr (Field<T>::exact) {
    return sgn(v) == 0;
  } else {
    return v == T(0);
  }
}

// Vector helpers. Generic over both backends.

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T hermitian_dot(const Vec<T>& a, const Vec<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += Field<T>::conj(a[i]) * b[i];
  return s;
}

template <class T>
Vec<T> axpby(const T& a, const Vec<T>& x, const T& b, const Vec<T>& y) {
  Vec<T> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + b * y[i];
  return r;
}

template <class T>
Vec<T> scaled(const T& a, const Vec<T>& x) {
  Vec<T> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i];
  return r;
}

template <class T>
double norm_inf(const Vec<T>& v) {
  double m = 0.0;
  for (const auto& e : v) m = std::max(m, Field<T>::magnitude(e));
  return m;
}

inline double norm2(const Vec<Complex>& v) {
  double s = 0.0;
  for (const auto& e : v) s += std::norm(e);
  return std::sqrt(s);
}

template <class T>
bool is_zero_vector(const Vec<T>& v) {
  for (const auto& e : v)
    if (!is_zero(e)) return false;
  return true;
}

Vec<Complex> to_complex(const Vec<Rational>& v);
Complex to_complex(const Rational& v);

/// Parses "p/q", an integer, or a decimal such as "-1.25" or "3e-2" exactly.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& v);

}  // namespace cubicspray
