#include "cubicspray/projective.hpp"

#include "cubicspray/errors.hpp"
#include "cubicspray/random.hpp"
#include "cubicspray/solve.hpp"

namespace cubicspray {

namespace {

template <class T>
Vec<T> canonicalize(Vec<T> v) {
  if (v.empty()) fail(ErrorKind::Input, "empty coordinate vector");
  std::size_t pivot = v.size();
  if constexpr (Field<T>::exact) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) != 0) {
        pivot = i;
        break;
      }
  } else {
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!Field<T>::finite(v[i])) fail(ErrorKind::Input, "non-finite coordinate");
      if (std::abs(v[i]) > best) {
        best = std::abs(v[i]);
        pivot = i;
      }
    }
  }
  if (pivot == v.size()) fail(ErrorKind::Input, "zero vector is not a projective point");
  const T d = v[pivot];
  for (auto& e : v) e /= d;
  v[pivot] = T(1);
  return v;
}

}  // namespace

template <class T>
ProjectivePoint<T>::ProjectivePoint(Vec<T> coords) : coords_(canonicalize(std::move(coords))) {}

template <class T>
bool proj_equal(const Vec<T>& p, const Vec<T>& q, double tol) {
  if (p.size() != q.size()) fail(ErrorKind::Input, "dimension mismatch");
  const double scale = norm_inf(p) * norm_inf(q);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (!Field<T>::negligible(p[i] * q[j] - p[j] * q[i], scale, tol)) return false;
  return true;
}

template <class T>
bool proj_equal(const ProjectivePoint<T>& p, const ProjectivePoint<T>& q, double tol) {
  return proj_equal(p.coords(), q.coords(), tol);
}

template <class T>
ProjectiveLine<T>::ProjectiveLine(ProjectivePoint<T> base, Vec<T> dir, double tol)
    : base_(std::move(base)), dir_(std::move(dir)) {
  if (dir_.size() != base_.size()) fail(ErrorKind::Input, "dimension mismatch");
  if (is_zero_vector(dir_) || proj_equal(base_.coords(), dir_, tol)) fail(ErrorKind::Input, "coincident points do not span a line");
}

template <class T>
bool ProjectiveLine<T>::contains(const Vec<T>& p, double tol) const {
  Mat<T> rows{base_.coords(), dir_, p};
  if constexpr (Field<T>::exact) {
    return span_rank(rows, 0.0).rank <= 2;
  } else {
    // Normalise rows so the threshold is scale free.
    for (auto& r : rows) {
      const double n = norm2(r);
      if (n > 0.0)
        for (auto& e : r) e /= n;
    }
    return span_rank(rows, tol).rank <= 2;
  }
}

template <class T>
ProjectiveLine<T> line_through(const ProjectivePoint<T>& p, const ProjectivePoint<T>& q, double tol) {
  if (proj_equal(p, q, tol)) fail(ErrorKind::Input, "coincident points do not span a line");
  return ProjectiveLine<T>(p, q.coords(), tol);
}

ProjectivePoint<Complex> random_point_on_cubic(const HomogeneousCubic<Complex>& f, std::uint64_t seed,
                                               double tol_membership) {
  const TrilinearForm<Complex> p(f);
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    const Vec<Complex> a = rng.complex_vector(f.num_vars());
    const Vec<Complex> b = rng.complex_vector(f.num_vars());
    const LineRestriction<Complex> r = restrict_to_line(p, a, b);
    const RootList<Complex> roots = cubic_roots(r.c);
    for (const auto& root : roots) {
      if (root.at_infinity || root.multiplicity != 1) continue;
      ProjectivePoint<Complex> pt(axpby(Complex(1.0), a, root.value, b));
      const double value = std::abs(f.evaluate(pt.coords()));
      if (value < tol_membership * f.scale() * std::pow(norm_inf(pt.coords()), 3)) return pt;
    }
  }
  fail(ErrorKind::ResampleExhausted, "no point found on the cubic");
}

ProjectivePoint<Rational> random_point_on_cubic(const HomogeneousCubic<Rational>& f, const Vec<Rational>& base,
                                                std::uint64_t seed, int max_attempts) {
  if (static_cast<int>(base.size()) != f.num_vars()) fail(ErrorKind::Input, "dimension mismatch");
  if (sgn(f.evaluate(base)) != 0) fail(ErrorKind::Input, "base point is not on the cubic");
  const Vec<Rational> g = f.gradient(base);
  std::size_t k = 0;
  while (k < g.size() && sgn(g[k]) == 0) ++k;
  if (k == g.size()) fail(ErrorKind::Input, "cubic is singular at the base point");
  const TrilinearForm<Rational> p(f);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    Vec<Rational> v = rng.integer_vector(base.size(), -20, 20);
    // Move v into the tangent hyperplane: g . v' = 0.
    const Rational gv = dot(g, v);
    for (auto& e : v) e *= g[k];
    v[k] -= gv;
    if (is_zero_vector(v) || proj_equal(v, base, 0.0)) continue;
    // F(base + t v) = t^2 (c2 + c3 t): the residual root is t = -c2/c3.
    const Rational c2 = 3 * p(base, v, v);
    const Rational c3 = p(v, v, v);
    if (sgn(c2) == 0) continue;  // inflectional tangent, or the line lies on X
    Vec<Rational> point = sgn(c3) == 0 ? v : axpby(c3, base, Rational(-c2), v);
    if (is_zero_vector(point)) continue;
    ProjectivePoint<Rational> pt(std::move(point));
    if (proj_equal(pt.coords(), base, 0.0)) continue;
    return pt;
  }
  fail(ErrorKind::ResampleExhausted, "rational point sampling exceeded the resample limit");
}

template <class T>
Mat<T> random_subspace_through(const ProjectivePoint<T>& x, int dim, std::uint64_t seed) {
  const int n = static_cast<int>(x.size());
  if (dim < 1 || dim > n - 1) fail(ErrorKind::Input, "subspace dimension out of range");
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    Mat<T> span{x.coords()};
    for (int i = 0; i < dim; ++i) {
      if constexpr (Field<T>::exact)
        span.push_back(rng.integer_vector(x.size(), -20, 20));
      else
        span.push_back(rng.complex_vector(x.size()));
    }
    if (span_rank(span, 1e-8).rank == dim + 1) return span;
  }
  fail(ErrorKind::ResampleExhausted, "could not draw an independent spanning set");
}

template class ProjectivePoint<Rational>;
template class ProjectivePoint<Complex>;
template class ProjectiveLine<Rational>;
template class ProjectiveLine<Complex>;
template bool proj_equal(const Vec<Rational>&, const Vec<Rational>&, double);
template bool proj_equal(const Vec<Complex>&, const Vec<Complex>&, double);
template bool proj_equal(const ProjectivePoint<Rational>&, const ProjectivePoint<Rational>&, double);
template bool proj_equal(const ProjectivePoint<Complex>&, const ProjectivePoint<Complex>&, double);
template ProjectiveLine<Rational> line_through(const ProjectivePoint<Rational>&, const ProjectivePoint<Rational>&, double);
template ProjectiveLine<Complex> line_through(const ProjectivePoint<Complex>&, const ProjectivePoint<Complex>&, double);
template Mat<Rational> random_subspace_through(const ProjectivePoint<Rational>&, int, std::uint64_t);
template Mat<Complex> random_subspace_through(const ProjectivePoint<Complex>&, int, std::uint64_t);

}  // namespace cubicspray
