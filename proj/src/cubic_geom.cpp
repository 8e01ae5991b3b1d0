#include "cubicspray/cubic_geom.hpp"

#include <algorithm>

#include "cubicspray/errors.hpp"
#include "cubicspray/random.hpp"

namespace cubicspray {

template <class T>
CubicHypersurface<T>::CubicHypersurface(HomogeneousCubic<T> f, Tolerances tol)
    : form_(std::move(f)), polar_(form_), tol_(tol) {
  if (form_.dim() < 2) fail(ErrorKind::Input, "dimension < 2");
}

template <class T>
double CubicHypersurface<T>::relative(const T& value, const Vec<T>& a, const Vec<T>& b, const Vec<T>& c) const {
  const double scale = form_.scale() * norm_inf(a) * norm_inf(b) * norm_inf(c);
  return scale > 0.0 ? Field<T>::magnitude(value) / scale : Field<T>::magnitude(value);
}

template <class T>
bool CubicHypersurface<T>::negligible(const T& value, const Vec<T>& a, const Vec<T>& b, const Vec<T>& c) const {
  if constexpr (Field<T>::exact) {
    return sgn(value) == 0;
  } else {
    return relative(value, a, b, c) <= tol_.membership;
  }
}

template <class T>
bool contains(const CubicHypersurface<T>& x, const Vec<T>& p) {
  if (static_cast<int>(p.size()) != x.num_vars()) fail(ErrorKind::Input, "dimension mismatch");
  return x.negligible(x.form().evaluate(p), p, p, p);
}

template <class T>
bool check_smooth_at(const CubicHypersurface<T>& x, const ProjectivePoint<T>& p) {
  if (!contains(x, p)) fail(ErrorKind::Input, "point is not on X");
  const Vec<T> g = x.form().gradient(p.coords());
  if constexpr (Field<T>::exact) {
    return !is_zero_vector(g);
  } else {
    const double np = norm_inf(p.coords());
    return norm_inf(g) > x.tolerances().membership * x.form().scale() * np * np;
  }
}

template <class T>
TangentHyperplane<T> tangent_hyperplane(const CubicHypersurface<T>& x, const ProjectivePoint<T>& p) {
  if (!check_smooth_at(x, p)) fail(ErrorKind::Input, "X is singular at the point");
  const Vec<T> g = x.form().gradient(p.coords());
  Mat<T> basis;
  if constexpr (Field<T>::exact) {
    std::size_t k = 0;
    while (sgn(g[k]) == 0) ++k;
    Mat<T> candidates;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (j == k) continue;
      Vec<T> w(g.size(), T(0));
      w[j] = g[k];
      w[k] = -g[j];
      candidates.push_back(std::move(w));
    }
    Mat<T> acc{p.coords()};
    for (auto& w : candidates) {
      acc.push_back(w);
      if (span_rank(acc, 0.0).rank == static_cast<int>(acc.size())) {
        basis.push_back(std::move(w));
        if (static_cast<int>(basis.size()) == x.n()) break;
      } else {
        acc.pop_back();
      }
    }
  } else {
    Vec<T> xh(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) xh[i] = std::conj(p[i]);
    basis = null_space(Mat<T>{g, xh});
  }
  if (static_cast<int>(basis.size()) != x.n()) fail(ErrorKind::Internal, "tangent frame has the wrong dimension");
  return {g, {p, std::move(basis)}};
}

template <class T>
Vec<T> reduce_to_frame(const TangentFrame<T>& frame, const Vec<T>& v) {
  if constexpr (Field<T>::exact) {
    Mat<T> cols = frame.basis;
    cols.push_back(frame.point.coords());
    auto sol = solve_exact(transpose(cols), v);
    if (!sol) fail(ErrorKind::Input, "vector is not tangent at the frame point");
    sol->pop_back();
    return *sol;
  } else {
    Vec<T> coords;
    coords.reserve(frame.basis.size());
    for (const auto& w : frame.basis) coords.push_back(hermitian_dot(w, v));
    return coords;
  }
}

template <class T>
bool in_S(const CubicHypersurface<T>& x, const ProjectivePoint<T>& u, const ProjectivePoint<T>& p) {
  return x.negligible(x.polar()(p.coords(), u.coords(), u.coords()), p.coords(), u.coords(), u.coords());
}

template <class T>
bool in_S_star(const CubicHypersurface<T>& x, const ProjectivePoint<T>& u, const ProjectivePoint<T>& p) {
  return x.negligible(x.polar()(p.coords(), p.coords(), u.coords()), p.coords(), p.coords(), u.coords());
}

template <class T>
bool in_C(const CubicHypersurface<T>& x, const ProjectivePoint<T>& u, const ProjectivePoint<T>& p) {
  const double tol = Field<T>::exact ? 0.0 : x.tolerances().membership;
  if (proj_equal(u, p, tol)) return true;
  const auto& a = u.coords();
  const auto& b = p.coords();
  const LineRestriction<T> r = restrict_to_line(x.polar(), a, b);
  const bool on_line = x.negligible(r.c[0], a, a, a) && x.negligible(r.c[1] / T(3), a, a, b) &&
                       x.negligible(r.c[2] / T(3), a, b, b) && x.negligible(r.c[3], b, b, b);
  if (contains(x, a) && contains(x, b)) {
    // S_u cap S*_u = C_u: on X the two middle coefficients are exactly the two memberships.
    const bool bitangent = in_S(x, u, p) && in_S_star(x, u, p);
    if (bitangent != on_line) fail(ErrorKind::Internal, "S_u cap S*_u disagrees with C_u");
  }
  return on_line;
}

template <class T>
Vec<T> third_point_raw(const TrilinearForm<T>& polar, const Vec<T>& u, const Vec<T>& x) {
  const T a = polar(x, u, u);
  const T b = polar(x, x, u);
  return axpby(a, x, T(-b), u);
}

template <class T>
ProjectivePoint<T> third_point(const CubicHypersurface<T>& x, const ProjectivePoint<T>& u, const ProjectivePoint<T>& p) {
  if (!contains(x, u)) fail(ErrorKind::Input, "u is not on X");
  if (!contains(x, p)) fail(ErrorKind::Input, "x is not on X");
  const auto& uc = u.coords();
  const auto& pc = p.coords();
  const T a = x.polar()(pc, uc, uc);
  const T b = x.polar()(pc, pc, uc);
  const bool a_zero = x.negligible(a, pc, uc, uc);
  const bool b_zero = x.negligible(b, pc, pc, uc);
  if (a_zero && b_zero) fail(ErrorKind::Indeterminate, "tau_u is indeterminate: the line <u, x> lies on X");
  // Snap the branches of the fixed-point dichotomy so the complex backend
  // reproduces them exactly as well.
  if (a_zero) return u;
  if (b_zero) return p;
  return ProjectivePoint<T>(axpby(a, pc, T(-b), uc));
}

template <class T>
DivisorOnLine<T> bezout_divisor(const CubicHypersurface<T>& x, const ProjectivePoint<T>& a,
                                const ProjectivePoint<T>& b) {
  const double tol = Field<T>::exact ? 0.0 : x.tolerances().membership;
  ProjectiveLine<T> line = line_through(a, b, tol);
  const auto& ac = a.coords();
  const auto& bc = b.coords();
  const LineRestriction<T> r = restrict_to_line(x.polar(), ac, bc);
  DivisorOnLine<T> div{line, {}, false};
  const bool zero = x.negligible(r.c[0], ac, ac, ac) && x.negligible(r.c[1], ac, ac, bc) &&
                    x.negligible(r.c[2], ac, bc, bc) && x.negligible(r.c[3], bc, bc, bc);
  if (zero) {
    div.contained = true;
    return div;
  }
  RootList<T> roots;
  if constexpr (Field<T>::exact) {
    roots = cubic_roots(r.c);
  } else {
    roots = cubic_roots(r.c, x.tolerances().cluster_radius);
  }
  for (const auto& root : roots) {
    Vec<T> pt = root.at_infinity ? bc : axpby(T(1), ac, root.value, bc);
    div.points.emplace_back(ProjectivePoint<T>(std::move(pt)), root.multiplicity);
  }
  return div;
}

double line_residual(const CubicHypersurface<Complex>& x, const Vec<Complex>& base, const Vec<Complex>& dir) {
  const LineRestriction<Complex> r = restrict_to_line(x.polar(), base, dir);
  return std::max({x.relative(r.c[0], base, base, base), x.relative(r.c[1] / 3.0, base, base, dir),
                   x.relative(r.c[2] / 3.0, base, dir, dir), x.relative(r.c[3], dir, dir, dir)});
}

bool line_on_x(const CubicHypersurface<Rational>& x, const Vec<Rational>& base, const Vec<Rational>& dir) {
  return restrict_to_line(x.polar(), base, dir).identically_zero();
}

namespace {

template <class T>
TernaryForm<T> direction_conic(const TrilinearForm<T>& polar, const Vec<T>& x, const Mat<T>& w) {
  TernaryForm<T> q(2);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      std::array<int, 3> e{0, 0, 0};
      e[i] += 1;
      e[j] += 1;
      const T v = polar(x, w[i], w[j]);
      q.add(e, i == j ? v : T(2) * v);
    }
  return q;
}

template <class T>
TernaryForm<T> direction_cubic(const TrilinearForm<T>& polar, const Mat<T>& w) {
  TernaryForm<T> c(3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = j; k < 3; ++k) {
        std::array<int, 3> e{0, 0, 0};
        e[i] += 1;
        e[j] += 1;
        e[k] += 1;
        c.add(e, T(multinomial_count({i, j, k})) * polar(w[i], w[j], w[k]));
      }
  return c;
}

Mat<Complex> rotate_frame(const Mat<Complex>& w, std::uint64_t seed) {
  // Random unitary mix of the frame vectors (Gram-Schmidt on a Gaussian matrix).
  Rng rng(seed);
  const std::size_t m = w.size();
  Mat<Complex> u;
  for (std::size_t j = 0; j < m; ++j) {
    Vec<Complex> v = rng.complex_vector(m);
    for (const auto& prev : u) {
      const Complex h = hermitian_dot(prev, v);
      for (std::size_t i = 0; i < m; ++i) v[i] -= h * prev[i];
    }
    const double nv = norm2(v);
    for (auto& e : v) e /= nv;
    u.push_back(std::move(v));
  }
  Mat<Complex> out(m, Vec<Complex>(w.front().size(), Complex(0.0)));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < w[i].size(); ++k) out[j][k] += u[j][i] * w[i][k];
  return out;
}

constexpr int kParameterisationAttempts = 8;
constexpr double kZeroConicTol = 1e-8;

}  // namespace

LineSet lines_through(const CubicHypersurface<Complex>& x, const ProjectivePoint<Complex>& center, std::uint64_t seed) {
  if (x.n() != 3) fail(ErrorKind::Input, "lines_through enumerates lines only for n = 3; use spanning_lines");
  const TangentFrame<Complex> frame = tangent_frame(x, center);
  const auto& xc = center.coords();
  LineSet out{center, false, {}};
  for (int attempt = 0; attempt < kParameterisationAttempts; ++attempt) {
    const Mat<Complex> w = attempt == 0 ? frame.basis : rotate_frame(frame.basis, derive_seed(seed, attempt));
    const TernaryForm<Complex> q = direction_conic(x.polar(), xc, w);
    const TernaryForm<Complex> c = direction_cubic(x.polar(), w);
    const double qscale = x.form().scale() * norm_inf(xc);
    double qmax = 0.0;
    for (const auto& [e, v] : q.coefficients()) qmax = std::max(qmax, std::abs(v));
    if (qmax <= kZeroConicTol * qscale) {
      out.infinite = true;  // every tangent direction on the cubic cone is a line
      return out;
    }
    PlaneIntersection inter;
    try {
      inter = conic_cubic_intersect(q, c, derive_seed(seed, 1000 + attempt), x.tolerances().cluster_radius);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Solver) throw;
      continue;
    }
    if (inter.infinite) {
      out.infinite = true;
      return out;
    }
    out.lines.clear();
    for (const auto& ip : inter.points) {
      Vec<Complex> v(xc.size(), Complex(0.0));
      for (int i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += ip.point[i] * w[i][k];
      const double residual = line_residual(x, xc, v);
      out.lines.push_back({ProjectiveLine<Complex>(center, v), ip.multiplicity, residual});
    }
    return out;
  }
  fail(ErrorKind::Solver, "line parameterisation degenerate after retries");
}

bool is_eckardt(const CubicHypersurface<Complex>& x, const ProjectivePoint<Complex>& p) {
  return lines_through(x, p).infinite;
}

bool is_eckardt(const CubicHypersurface<Rational>& x, const ProjectivePoint<Rational>& p) {
  if (x.n() != 3) fail(ErrorKind::Input, "Eckardt points are defined here for n = 3");
  const TangentFrame<Rational> frame = tangent_frame(x, p);
  const TernaryForm<Rational> q = direction_conic(x.polar(), p.coords(), frame.basis);
  if (q.is_zero()) return true;
  const TernaryForm<Rational> c = direction_cubic(x.polar(), frame.basis);
  return has_common_component(q, c, 0);
}

namespace {

// Adds rows that raise the rank; returns true once `target` is reached.
bool accumulate_direction(Mat<Complex>& rows, const Vec<Complex>& candidate, double tol, int target) {
  Vec<Complex> normed = candidate;
  const double nv = norm2(normed);
  if (nv == 0.0) return false;
  for (auto& e : normed) e /= nv;
  rows.push_back(normed);
  if (span_rank(rows, tol).rank < static_cast<int>(rows.size())) rows.pop_back();
  return static_cast<int>(rows.size()) >= target;
}

}  // namespace

SpanningLines spanning_lines(const CubicHypersurface<Complex>& x, const ProjectivePoint<Complex>& center,
                             std::uint64_t seed) {
  const TangentFrame<Complex> frame = tangent_frame(x, center);
  const int n = x.n();
  const double tol = x.tolerances().rank;
  SpanningLines out;
  Mat<Complex> rows;

  auto consider = [&](const ProjectiveLine<Complex>& line) {
    const std::size_t before = rows.size();
    const bool done = accumulate_direction(rows, reduce_to_frame(frame, line.dir()), tol, n);
    if (rows.size() > before) out.lines.push_back(line);
    return done;
  };

  if (n == 3) {
    const LineSet ls = lines_through(x, center, seed);
    if (ls.infinite) fail(ErrorKind::Solver, "Eckardt center: infinitely many lines, resample the point");
    out.slices = 1;
    for (const auto& l : ls.lines)
      if (consider(l.line)) break;
  } else {
    const auto& xc = center.coords();
    for (int slice = 0; slice < x.tolerances().slice_retries && static_cast<int>(rows.size()) < n; ++slice) {
      ++out.slices;
      Mat<Complex> basis = random_subspace_through(center, 4, derive_seed(seed, slice));
      // Orthonormalise the extra generators against x and each other.
      for (std::size_t i = 1; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          const Complex h = hermitian_dot(basis[j], basis[i]) / hermitian_dot(basis[j], basis[j]);
          for (std::size_t k = 0; k < basis[i].size(); ++k) basis[i][k] -= h * basis[j][k];
        }
        const double nv = norm2(basis[i]);
        for (auto& e : basis[i]) e /= nv;
      }
      LineSet sliced{ProjectivePoint<Complex>(Vec<Complex>{1.0, 0.0, 0.0, 0.0, 0.0}), false, {}};
      try {
        const CubicHypersurface<Complex> slice_x(restrict_to_subspace(x.polar(), basis), x.tolerances());
        sliced = lines_through(slice_x, ProjectivePoint<Complex>(Vec<Complex>{1.0, 0.0, 0.0, 0.0, 0.0}),
                               derive_seed(seed, 500 + slice));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Internal) throw;
        continue;
      }
      if (sliced.infinite) continue;
      bool done = false;
      for (const auto& l : sliced.lines) {
        Vec<Complex> dir(xc.size(), Complex(0.0));
        for (std::size_t i = 0; i < basis.size(); ++i)
          for (std::size_t k = 0; k < dir.size(); ++k) dir[k] += l.line.dir()[i] * basis[i][k];
        if (line_residual(x, xc, dir) > 1e-9) continue;
        if ((done = consider(ProjectiveLine<Complex>(center, dir)))) break;
      }
      if (done) break;
    }
  }
  if (static_cast<int>(rows.size()) < n) {
    if (n == 3) fail(ErrorKind::Solver, "lines through the point do not span the tangent space");
    fail(ErrorKind::ResampleExhausted, "spanning lines not found within the slice retry limit");
  }
  out.directions.clear();
  for (const auto& line : out.lines) out.directions.push_back(reduce_to_frame(frame, line.dir()));
  out.rank = span_rank(out.directions, tol);
  return out;
}

#define CUBICSPRAY_INSTANTIATE(T)                                                                              \
  template class CubicHypersurface<T>;                                                                         \
  template bool contains(const CubicHypersurface<T>&, const Vec<T>&);                                          \
  template bool check_smooth_at(const CubicHypersurface<T>&, const ProjectivePoint<T>&);                       \
  template TangentHyperplane<T> tangent_hyperplane(const CubicHypersurface<T>&, const ProjectivePoint<T>&);    \
  template Vec<T> reduce_to_frame(const TangentFrame<T>&, const Vec<T>&);                                      \
  template bool in_S(const CubicHypersurface<T>&, const ProjectivePoint<T>&, const ProjectivePoint<T>&);       \
  template bool in_S_star(const CubicHypersurface<T>&, const ProjectivePoint<T>&, const ProjectivePoint<T>&);  \
  template bool in_C(const CubicHypersurface<T>&, const ProjectivePoint<T>&, const ProjectivePoint<T>&);       \
  template Vec<T> third_point_raw(const TrilinearForm<T>&, const Vec<T>&, const Vec<T>&);                      \
  template ProjectivePoint<T> third_point(const CubicHypersurface<T>&, const ProjectivePoint<T>&,              \
                                          const ProjectivePoint<T>&);                                          \
  template DivisorOnLine<T> bezout_divisor(const CubicHypersurface<T>&, const ProjectivePoint<T>&,             \
                                           const ProjectivePoint<T>&);

CUBICSPRAY_INSTANTIATE(Rational)
CUBICSPRAY_INSTANTIATE(Complex)

#undef CUBICSPRAY_INSTANTIATE

}  // namespace cubicspray
