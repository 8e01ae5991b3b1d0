#pragma once

#include <cstdint>

#include "cubicspray/forms.hpp"
#include "cubicspray/linalg.hpp"
#include "cubicspray/scalar.hpp"

namespace cubicspray {

/// A point of P^{n+1} stored by its canonical representative: first nonzero
/// coordinate equal to 1 (rational) or largest-modulus coordinate equal to 1
/// (complex).
template <class T>
class ProjectivePoint {
 public:
  explicit ProjectivePoint(Vec<T> coords);

  const Vec<T>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  const T& operator[](std::size_t i) const { return coords_[i]; }

  bool operator==(const ProjectivePoint& other) const { return coords_ == other.coords_; }

 private:
  Vec<T> coords_;
};

/// All 2x2 minors of the 2 x (n+2) coordinate matrix vanish (|minor| <= tol
/// times the coordinate scale for complex points).
template <class T>
bool proj_equal(const ProjectivePoint<T>& p, const ProjectivePoint<T>& q, double tol = 1e-10);

template <class T>
bool proj_equal(const Vec<T>& p, const Vec<T>& q, double tol = 1e-10);

template <class T>
class ProjectiveLine {
 public:
  /// Throws Input if the generators are dependent.
  ProjectiveLine(ProjectivePoint<T> base, Vec<T> dir, double tol = 1e-10);

  const ProjectivePoint<T>& base() const { return base_; }
  const Vec<T>& dir() const { return dir_; }

  /// alpha*base + beta*dir
  Vec<T> point_at(const T& alpha, const T& beta) const { return axpby(alpha, base_.coords(), beta, dir_); }

  bool contains(const Vec<T>& p, double tol = 1e-10) const;

 private:
  ProjectivePoint<T> base_;
  Vec<T> dir_;
};

template <class T>
ProjectiveLine<T> line_through(const ProjectivePoint<T>& p, const ProjectivePoint<T>& q, double tol = 1e-10);

/// Complex backend: a root of F on a seeded random line.
ProjectivePoint<Complex> random_point_on_cubic(const HomogeneousCubic<Complex>& f, std::uint64_t seed,
                                               double tol_membership = 1e-10);

/// Rational backend: residual point of a seeded small-integer line tangent to X
/// at `base`. The line meets X in 2*base + p, so p is rational. Resamples up to
/// `max_attempts` times; throws ResampleExhausted afterwards.
ProjectivePoint<Rational> random_point_on_cubic(const HomogeneousCubic<Rational>& f, const Vec<Rational>& base,
                                                std::uint64_t seed, int max_attempts = 32);

/// x followed by `dim` seeded points, all together of rank dim+1.
template <class T>
Mat<T> random_subspace_through(const ProjectivePoint<T>& x, int dim, std::uint64_t seed);

}  // namespace cubicspray
