#pragma once

/**
 * @file cubic_geom.hpp
 * @brief Geometry of a cubic hypersurface X = {F = 0} in P^{n+1}.
 *
 * Everything is phrased through the polarization P of F:
 *   - the tangent hyperplane at x is {w : P(x, x, w) = 0},
 *   - S_u  = {p in X : P(p, u, u) = 0}  (the hyperplane section T_u X cap X),
 *   - S*_u = {p in X : P(p, p, u) = 0}  (points whose tangent hyperplane contains u),
 *   - C_u  = union of lines on X through u,
 *   - tau_u(x) = P(x, u, u) x - P(x, x, u) u, the third point of X on <x, u>.
 *
 * Predicates are exact on the Rational backend and use the relative
 * membership tolerance on the Complex backend.
 */

#include <cstdint>
#include <utility>

#include "cubicspray/forms.hpp"
#include "cubicspray/projective.hpp"
#include "cubicspray/solve.hpp"

namespace cubicspray {

template <class T>
class CubicHypersurface {
 public:
  explicit CubicHypersurface(HomogeneousCubic<T> f, Tolerances tol = {});

  int n() const { return form_.dim(); }
  int num_vars() const { return form_.num_vars(); }
  const HomogeneousCubic<T>& form() const { return form_; }
  const TrilinearForm<T>& polar() const { return polar_; }
  const Tolerances& tolerances() const { return tol_; }

  /// |value| small relative to F.scale() * |a| |b| |c| (always exact for rationals).
  bool negligible(const T& value, const Vec<T>& a, const Vec<T>& b, const Vec<T>& c) const;
  double relative(const T& value, const Vec<T>& a, const Vec<T>& b, const Vec<T>& c) const;

 private:
  HomogeneousCubic<T> form_;
  TrilinearForm<T> polar_;
  Tolerances tol_;
};

/// Basis of n vectors spanning T_x X modulo x. On the complex backend the
/// basis is orthonormal and Hermitian-orthogonal to x; it depends only on x.
template <class T>
struct TangentFrame {
  ProjectivePoint<T> point;
  Mat<T> basis;
};

template <class T>
struct TangentHyperplane {
  Vec<T> covector;
  TangentFrame<T> frame;
};

template <class T>
bool contains(const CubicHypersurface<T>& x, const Vec<T>& p);
template <class T>
bool contains(const CubicHypersurface<T>& x, const ProjectivePoint<T>& p) {
  return contains(x, p.coords());
}

/// Throws Input if p is not on X.
template <class T>
bool check_smooth_at(const CubicHypersurface<T>& x, const ProjectivePoint<T>& p);

/// Throws Input for a point off X or a singular point.
template <class T>
TangentHyperplane<T> tangent_hyperplane(const CubicHypersurface<T>& x, const ProjectivePoint<T>& p);

template <class T>
TangentFrame<T> tangent_frame(const CubicHypersurface<T>& x, const ProjectivePoint<T>& p) {
  return tangent_hyperplane(x, p).frame;
}

/// Coordinates of a tangent vector in the frame, discarding the component along the point.
template <class T>
Vec<T> reduce_to_frame(const TangentFrame<T>& frame, const Vec<T>& v);

template <class T>
bool in_S(const CubicHypersurface<T>& x, const ProjectivePoint<T>& u, const ProjectivePoint<T>& p);
template <class T>
bool in_S_star(const CubicHypersurface<T>& x, const ProjectivePoint<T>& u, const ProjectivePoint<T>& p);
/// Line <u, p> lies on X; in_C(u, u) is true. Cross-checks against in_S and in_S_star.
template <class T>
bool in_C(const CubicHypersurface<T>& x, const ProjectivePoint<T>& u, const ProjectivePoint<T>& p);

/// tau_u(x). Throws Input if u or x is off X and Indeterminate when <u, x> lies on X.
template <class T>
ProjectivePoint<T> third_point(const CubicHypersurface<T>& x, const ProjectivePoint<T>& u, const ProjectivePoint<T>& p);

/// Unnormalised tau_u(x) = P(x,u,u) x - P(x,x,u) u, without any checks.
template <class T>
Vec<T> third_point_raw(const TrilinearForm<T>& polar, const Vec<T>& u, const Vec<T>& x);

template <class T>
struct DivisorOnLine {
  ProjectiveLine<T> line;
  std::vector<std::pair<ProjectivePoint<T>, int>> points;
  bool contained = false;

  int degree() const {
    int s = 0;
    for (const auto& pm : points) s += pm.second;
    return s;
  }
  bool reduced() const {
    if (contained || points.size() != 3) return false;
    for (const auto& pm : points)
      if (pm.second != 1) return false;
    return true;
  }
};

/// X cap <a, b> with multiplicities. Rational backend requires the residual roots to be rational.
template <class T>
DivisorOnLine<T> bezout_divisor(const CubicHypersurface<T>& x, const ProjectivePoint<T>& a,
                                const ProjectivePoint<T>& b);

/// Largest restriction coefficient of F on <x, x + v>, relative to the form scale.
double line_residual(const CubicHypersurface<Complex>& x, const Vec<Complex>& base, const Vec<Complex>& dir);
bool line_on_x(const CubicHypersurface<Rational>& x, const Vec<Rational>& base, const Vec<Rational>& dir);

struct LineOnX {
  ProjectiveLine<Complex> line;
  int multiplicity = 1;
  double residual = 0.0;
};

struct LineSet {
  ProjectivePoint<Complex> center;
  bool infinite = false;  // Eckardt point
  std::vector<LineOnX> lines;

  int total_multiplicity() const {
    int s = 0;
    for (const auto& l : lines) s += l.multiplicity;
    return s;
  }
};

/// Lines on a cubic threefold through x. Throws Input for n != 3 (use
/// spanning_lines) and Solver when every reparameterisation degenerates.
LineSet lines_through(const CubicHypersurface<Complex>& x, const ProjectivePoint<Complex>& center,
                      std::uint64_t seed = 0);

bool is_eckardt(const CubicHypersurface<Complex>& x, const ProjectivePoint<Complex>& p);
/// Exact test: the direction conic vanishes or shares a component with the direction cubic.
bool is_eckardt(const CubicHypersurface<Rational>& x, const ProjectivePoint<Rational>& p);

struct SpanningLines {
  std::vector<ProjectiveLine<Complex>> lines;
  Mat<Complex> directions;  // rows: line directions in the tangent frame at the centre
  RankResult rank;
  int slices = 0;
};

/// n lines on X through x whose tangent directions span T_x X.
SpanningLines spanning_lines(const CubicHypersurface<Complex>& x, const ProjectivePoint<Complex>& center,
                             std::uint64_t seed);

}  // namespace cubicspray
