#pragma once
// Rank-1 sprays on a smooth cubic through the third-point involution.
//
// At a target y the setup is a reduced divisor x + u + y on a line, and each
// line l through x on X gives the orbit t -> tau_u(x + t z) with
// z = l cap T_u X. The n orbit tangents at y, taken modulo y, form the
// domination certificate.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubicspray/cubic_geom.hpp"

namespace cubicspray {

// p in U_q means p lies off S_q and off S*_q.
struct GenericityFlags {
  bool x_in_U_u = false;
  bool y_in_U_u = false;
  bool u_in_U_x = false;
  bool y_in_U_x = false;
  bool all() const { return x_in_U_u && y_in_U_u && u_in_U_x && y_in_U_x; }
};

template <class T>
struct SpraySetup {
  ProjectivePoint<T> y;
  ProjectivePoint<T> x;
  ProjectivePoint<T> u;
  DivisorOnLine<T> divisor;
  GenericityFlags flags;
  int attempts = 0;
};

template <class T>
GenericityFlags genericity(const CubicHypersurface<T>& X, const ProjectivePoint<T>& y, const ProjectivePoint<T>& x,
                           const ProjectivePoint<T>& u);

/// Complex: random lines through y until X cuts a reduced {y, x, u} with all
/// flags set. Throws ResampleExhausted after tol.retries attempts.
SpraySetup<Complex> pick_setup(const CubicHypersurface<Complex>& X, const ProjectivePoint<Complex>& y,
                               std::uint64_t seed);
/// Rational: x is a rational point sampled two tangent steps away from y and
/// u is the third point of <x, y>, so the whole setup stays over Q.
SpraySetup<Rational> pick_setup(const CubicHypersurface<Rational>& X, const ProjectivePoint<Rational>& y,
                                std::uint64_t seed);

/// z = l cap T_u X for the line through x with direction w.
template <class T>
Vec<T> tangent_point_z(const TrilinearForm<T>& polar, const Vec<T>& u, const Vec<T>& x, const Vec<T>& w);

/// tau_u(x + t z). Throws Indeterminate when x + t z falls in C_u.
template <class T>
ProjectivePoint<T> orbit_point(const CubicHypersurface<T>& X, const ProjectivePoint<T>& u, const Vec<T>& x,
                               const Vec<T>& z, const T& t);

/// d/dt at 0 of P(f,u,u) f - P(f,f,u) u with f = x + t z, not yet reduced.
template <class T>
Vec<T> orbit_velocity(const TrilinearForm<T>& polar, const Vec<T>& u, const Vec<T>& x, const Vec<T>& z);

/// orbit_velocity in the tangent frame at y. Throws Solver on a zero tangent.
template <class T>
Vec<T> orbit_tangent(const CubicHypersurface<T>& X, const ProjectivePoint<T>& u, const Vec<T>& x, const Vec<T>& z,
                     const TangentFrame<T>& frame_y);

/// Relative distance between the symbolic orbit tangent and a central finite
/// difference of orbit points at step h, compared as directions in T_y X.
double finite_difference_error(const CubicHypersurface<Complex>& X, const ProjectivePoint<Complex>& u,
                               const Vec<Complex>& x, const Vec<Complex>& z, const TangentFrame<Complex>& frame_y,
                               double h = 1e-5);

struct OrbitDatum {
  ProjectiveLine<Complex> line;
  Vec<Complex> z;
  Vec<Complex> tangent;  // coordinates in the tangent frame at y
};

struct SprayCertificate {
  std::uint64_t seed = 0;
  SpraySetup<Complex> setup;
  std::vector<OrbitDatum> orbits;
  Mat<Complex> tangent_matrix;  // rows = orbit tangents, each scaled to unit norm
  RankResult rank;
  std::optional<Rational> determinant;
  // Largest sine between a tangent row and d(tau_u) of its line direction.
  double differential_residual = 0.0;
  int rank_attempts = 0;
  int slices = 0;
  bool counterexample_candidate = false;
  bool verified = false;
};

/// Rank retries use fresh setups; a certificate whose rank stays below n after
/// tol.rank_retries setups comes back with counterexample_candidate set.
SprayCertificate build_certificate(const CubicHypersurface<Complex>& X, const ProjectivePoint<Complex>& y,
                                   std::uint64_t seed);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> reasons;
};

VerifyResult verify_certificate(const CubicHypersurface<Complex>& X, const SprayCertificate& cert);

struct ConicReport {
  ProjectivePoint<Complex> u_prime;
  ProjectiveLine<Complex> line;
  ProjectivePoint<Complex> y_prime;
  Vec<Complex> z_prime;
  std::vector<ProjectivePoint<Complex>> samples;
  double membership_residual = 0.0;  // worst relative |F| over the samples
  int plane_rank = 0;
  std::vector<double> plane_singular_values;
  int moment_rank = 0;
  std::vector<double> moment_singular_values;
  double conic_residual = 0.0;  // sigma_6 / sigma_5 of the Veronese matrix
  bool is_conic = false;
};

/// For y' general, u' = tau_x(y') and z' = l cap T_{u'} X,
/// the orbit tau_{u'}(x + t z') is a plane conic through y'. Throws Input
/// ("insufficient samples") for fewer than 7 samples.
ConicReport conic_orbit_check(const CubicHypersurface<Complex>& X, const ProjectiveLine<Complex>& l,
                              const ProjectivePoint<Complex>& y_prime, std::uint64_t seed, int samples = 9);

}  // namespace cubicspray
