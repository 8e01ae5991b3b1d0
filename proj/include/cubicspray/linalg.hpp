#pragma once

// Small dense linear algebra over both backends. Exact routines use
// fraction-free (Bareiss) elimination on integer-scaled rows; numeric ones
// go through Eigen.

#include <cstddef>
#include <optional>

#include "cubicspray/scalar.hpp"

namespace cubicspray {

/// Rank plus the evidence that backs it.
struct RankResult {
  int rank = 0;
  // Exact backend: a nonzero maximal minor and where it sits.
  std::optional<Rational> minor;
  std::vector<std::size_t> minor_rows;
  std::vector<std::size_t> minor_cols;
  // Complex backend: all singular values, descending.
  std::vector<double> singular_values;
};

RankResult span_rank(const Mat<Rational>& rows, double tol = 0.0);
RankResult span_rank(const Mat<Complex>& rows, double tol);

Rational determinant(const Mat<Rational>& m);
Complex determinant(const Mat<Complex>& m);

std::vector<double> singular_values(const Mat<Complex>& m);

/// Orthonormal basis (rows) of {v : A v = 0} for a complex matrix A.
Mat<Complex> null_space(const Mat<Complex>& a);

/// Solves A x = b exactly; A is m x k with full column rank and b in its range.
std::optional<Vec<Rational>> solve_exact(const Mat<Rational>& a, const Vec<Rational>& b);

Mat<Rational> transpose(const Mat<Rational>& m);
Mat<Complex> transpose(const Mat<Complex>& m);

}  // namespace cubicspray
