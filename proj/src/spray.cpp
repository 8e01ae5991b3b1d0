#include "cubicspray/spray.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cubicspray/errors.hpp"
#include "cubicspray/random.hpp"

namespace cubicspray {

namespace {

template <class T>
bool in_U(const CubicHypersurface<T>& X, const ProjectivePoint<T>& q, const ProjectivePoint<T>& p) {
  return !in_S(X, q, p) && !in_S_star(X, q, p);
}

Vec<Complex> unit(Vec<Complex> v) {
  const double n = norm2(v);
  if (n > 0.0)
    for (auto& e : v) e /= n;
  return v;
}

// Distance of a from the complex line through b, relative to |a|.
double sine_between(const Vec<Complex>& a, const Vec<Complex>& b) {
  const double na = norm2(a), nb = norm2(b);
  if (na == 0.0 || nb == 0.0) return 1.0;
  const Complex c = hermitian_dot(b, a) / (nb * nb);
  Vec<Complex> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - c * b[i];
  return norm2(r) / na;
}

constexpr double kPointMatchTol = 1e-8;
constexpr double kIncidenceTol = 1e-9;

}  // namespace

template <class T>
GenericityFlags genericity(const CubicHypersurface<T>& X, const ProjectivePoint<T>& y, const ProjectivePoint<T>& x,
                           const ProjectivePoint<T>& u) {
  GenericityFlags f;
  f.x_in_U_u = in_U(X, u, x);
  f.y_in_U_u = in_U(X, u, y);
  f.u_in_U_x = in_U(X, x, u);
  f.y_in_U_x = in_U(X, x, y);
  return f;
}

SpraySetup<Complex> pick_setup(const CubicHypersurface<Complex>& X, const ProjectivePoint<Complex>& y,
                               std::uint64_t seed) {
  if (!check_smooth_at(X, y)) fail(ErrorKind::Input, "X is singular at y");
  const double tol = X.tolerances().membership;
  for (int attempt = 0; attempt < X.tolerances().retries; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    const Vec<Complex> q = rng.complex_vector(y.size());
    if (proj_equal(q, y.coords(), tol)) continue;
    const DivisorOnLine<Complex> div = bezout_divisor(X, y, ProjectivePoint<Complex>(q));
    if (!div.reduced()) continue;
    std::vector<ProjectivePoint<Complex>> others;
    for (const auto& [p, m] : div.points)
      if (!proj_equal(p, y, kPointMatchTol)) others.push_back(p);
    if (others.size() != 2) continue;
    SpraySetup<Complex> s{y, others[0], others[1], div, {}, attempt + 1};
    s.flags = genericity(X, s.y, s.x, s.u);
    if (s.flags.all()) return s;
  }
  fail(ErrorKind::ResampleExhausted, "no generic spray setup within the resample limit");
}

SpraySetup<Rational> pick_setup(const CubicHypersurface<Rational>& X, const ProjectivePoint<Rational>& y,
                                std::uint64_t seed) {
  if (!check_smooth_at(X, y)) fail(ErrorKind::Input, "X is singular at y");
  for (int attempt = 0; attempt < X.tolerances().retries; ++attempt) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    ProjectivePoint<Rational> x = y;
    try {
      const auto step = random_point_on_cubic(X.form(), y.coords(), derive_seed(s, 1), 4);
      if (!check_smooth_at(X, step)) continue;
      x = random_point_on_cubic(X.form(), step.coords(), derive_seed(s, 2), 4);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResampleExhausted && e.kind() != ErrorKind::Input) throw;
      continue;
    }
    if (proj_equal(x, y, 0.0)) continue;
    const Vec<Rational> raw = third_point_raw(X.polar(), y.coords(), x.coords());
    if (is_zero_vector(raw)) continue;
    const ProjectivePoint<Rational> u(raw);
    if (proj_equal(u, x, 0.0) || proj_equal(u, y, 0.0)) continue;
    const DivisorOnLine<Rational> div = bezout_divisor(X, y, x);
    if (!div.reduced()) continue;
    SpraySetup<Rational> setup{y, x, u, div, {}, attempt + 1};
    setup.flags = genericity(X, setup.y, setup.x, setup.u);
    if (setup.flags.all()) return setup;
  }
  fail(ErrorKind::ResampleExhausted, "no generic spray setup within the resample limit");
}

template <class T>
Vec<T> tangent_point_z(const TrilinearForm<T>& polar, const Vec<T>& u, const Vec<T>& x, const Vec<T>& w) {
  const T a = polar(w, u, u);
  const T b = polar(x, u, u);
  return axpby(a, x, T(-b), w);
}

template <class T>
ProjectivePoint<T> orbit_point(const CubicHypersurface<T>& X, const ProjectivePoint<T>& u, const Vec<T>& x,
                               const Vec<T>& z, const T& t) {
  return third_point(X, u, ProjectivePoint<T>(axpby(T(1), x, t, z)));
}

template <class T>
Vec<T> orbit_velocity(const TrilinearForm<T>& polar, const Vec<T>& u, const Vec<T>& x, const Vec<T>& z) {
  const T a = polar(z, u, u);
  const T b = polar(x, u, u);
  const T c = polar(x, z, u);
  Vec<T> v = axpby(a, x, b, z);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= T(2) * c * u[i];
  return v;
}

template <class T>
Vec<T> orbit_tangent(const CubicHypersurface<T>& X, const ProjectivePoint<T>& u, const Vec<T>& x, const Vec<T>& z,
                     const TangentFrame<T>& frame_y) {
  const Vec<T> v = orbit_velocity(X.polar(), u.coords(), x, z);
  const Vec<T> r = reduce_to_frame(frame_y, v);
  bool zero;
  if constexpr (Field<T>::exact) {
    zero = is_zero_vector(r);
  } else {
    zero = norm_inf(r) <= X.tolerances().membership * norm_inf(v);
  }
  if (zero) fail(ErrorKind::Solver, "orbit tangent vanishes: degenerate setup");
  return r;
}

double finite_difference_error(const CubicHypersurface<Complex>& X, const ProjectivePoint<Complex>& u,
                               const Vec<Complex>& x, const Vec<Complex>& z, const TangentFrame<Complex>& frame_y,
                               double h) {
  const Vec<Complex>& y = frame_y.point.coords();
  std::size_t k = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (std::abs(y[i]) > std::abs(y[k])) k = i;
  // Affine chart y_k = 1 keeps the representative smooth in t.
  auto chart = [&](double t) {
    Vec<Complex> p = orbit_point(X, u, x, z, Complex(t, 0.0)).coords();
    const Complex d = p[k];
    for (auto& e : p) e /= d;
    return p;
  };
  const Vec<Complex> plus = chart(h);
  const Vec<Complex> minus = chart(-h);
  Vec<Complex> fd(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) fd[i] = (plus[i] - minus[i]) / (2.0 * h);
  const Vec<Complex> a = reduce_to_frame(frame_y, fd);
  const Vec<Complex> b = orbit_tangent(X, u, x, z, frame_y);
  const Complex c = hermitian_dot(b, a) / hermitian_dot(b, b);
  Vec<Complex> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - c * b[i];
  return norm2(diff) / norm2(a);
}

namespace {

// Empty when the lines or tangents at x degenerate and the setup must be redrawn.
std::optional<SprayCertificate> assemble(const CubicHypersurface<Complex>& X, const ProjectivePoint<Complex>& y,
                                         std::uint64_t seed) {
  std::optional<SprayCertificate> out;
  SprayCertificate c{seed, pick_setup(X, y, seed)};
  SpanningLines lines;
  try {
    lines = spanning_lines(X, c.setup.x, derive_seed(seed, 0x5eedULL));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Solver && e.kind() != ErrorKind::ResampleExhausted) throw;
    return out;
  }
  c.slices = lines.slices;
  const TangentFrame<Complex> frame_y = tangent_frame(X, c.setup.y);
  const auto& u = c.setup.u.coords();
  const auto& x = c.setup.x.coords();
  for (const auto& line : lines.lines) {
    const Vec<Complex> z = tangent_point_z(X.polar(), u, x, line.dir());
    Vec<Complex> t;
    try {
      t = orbit_tangent(X, c.setup.u, x, z, frame_y);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Solver) throw;
      return out;
    }
    const Vec<Complex> dtau = reduce_to_frame(frame_y, orbit_velocity(X.polar(), u, x, line.dir()));
    c.differential_residual = std::max(c.differential_residual, sine_between(t, dtau));
    c.tangent_matrix.push_back(unit(t));
    c.orbits.push_back({line, z, std::move(t)});
  }
  c.rank = span_rank(c.tangent_matrix, X.tolerances().rank);
  out = std::move(c);
  return out;
}

}  // namespace

SprayCertificate build_certificate(const CubicHypersurface<Complex>& X, const ProjectivePoint<Complex>& y,
                                   std::uint64_t seed) {
  std::optional<SprayCertificate> deficient;
  const int attempts = X.tolerances().rank_retries;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    auto a = assemble(X, y, derive_seed(seed, 0xce7ULL + static_cast<std::uint64_t>(attempt)));
    if (!a) continue;
    a->seed = seed;
    a->rank_attempts = attempt + 1;
    if (a->rank.rank == X.n()) {
      a->verified = verify_certificate(X, *a).ok;
      return *a;
    }
    deficient = std::move(a);
  }
  if (!deficient) fail(ErrorKind::ResampleExhausted, "no complete spray configuration within the retry limit");
  deficient->counterexample_candidate = true;
  deficient->rank_attempts = attempts;
  return *deficient;
}

VerifyResult verify_certificate(const CubicHypersurface<Complex>& X, const SprayCertificate& cert) {
  VerifyResult r;
  auto reject = [&r](std::string reason) {
    if (std::find(r.reasons.begin(), r.reasons.end(), reason) == r.reasons.end()) r.reasons.push_back(std::move(reason));
    r.ok = false;
  };
  const auto& s = cert.setup;
  auto guarded = [&](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      reject(std::string(what) + ": " + e.what());
    }
  };

  const bool y_on = contains(X, s.y), x_on = contains(X, s.x), u_on = contains(X, s.u);
  if (!y_on) reject("y not on X");
  if (!x_on) reject("x not on X");
  if (!u_on) reject("u not on X");
  if (!(y_on && x_on && u_on)) return r;

  guarded("divisor", [&] {
    const DivisorOnLine<Complex> div = bezout_divisor(X, s.y, s.x);
    bool has_u = false;
    for (const auto& [p, m] : div.points) has_u = has_u || proj_equal(p, s.u, kPointMatchTol);
    if (!div.reduced() || !has_u) reject("divisor not reduced {x, u, y}");
  });
  guarded("genericity", [&] {
    if (!genericity(X, s.y, s.x, s.u).all()) reject("genericity flags");
  });

  if (static_cast<int>(cert.orbits.size()) != X.n() || static_cast<int>(cert.tangent_matrix.size()) != X.n())
    reject("orbit count");

  guarded("tangent frame", [&] {
    const TangentFrame<Complex> frame_y = tangent_frame(X, s.y);
    for (std::size_t i = 0; i < cert.orbits.size(); ++i) {
      const OrbitDatum& o = cert.orbits[i];
      const Vec<Complex>& w = o.line.dir();
      if (!proj_equal(o.line.base(), s.x, kPointMatchTol) || line_residual(X, s.x.coords(), w) > kIncidenceTol ||
          !in_C(X, s.x, ProjectivePoint<Complex>(w))) {
        reject("line incidence");
        continue;
      }
      const Vec<Complex>& u = s.u.coords();
      const bool on_line = o.line.contains(o.z, kPointMatchTol);
      const bool on_tangent = X.relative(X.polar()(o.z, u, u), o.z, u, u) <= kIncidenceTol;
      if (!on_line || !on_tangent || proj_equal(o.z, s.x.coords(), kPointMatchTol)) {
        reject("z incidence");
        continue;
      }
      const Vec<Complex> t = orbit_tangent(X, s.u, s.x.coords(), o.z, frame_y);
      Vec<Complex> diff(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) diff[k] = t[k] - (k < o.tangent.size() ? o.tangent[k] : 0.0);
      if (o.tangent.size() != t.size() || norm2(diff) > kPointMatchTol * norm2(t)) reject("tangent formula");
      if (i < cert.tangent_matrix.size()) {
        const Vec<Complex> expected = unit(t);
        Vec<Complex> d2(expected.size());
        const auto& row = cert.tangent_matrix[i];
        for (std::size_t k = 0; k < expected.size(); ++k) d2[k] = expected[k] - (k < row.size() ? row[k] : 0.0);
        if (row.size() != expected.size() || norm2(d2) > kPointMatchTol) reject("tangent matrix mismatch");
      }
    }
  });

  if (cert.tangent_matrix.empty() || span_rank(cert.tangent_matrix, X.tolerances().rank).rank != X.n())
    reject("rank deficient");
  return r;
}

ConicReport conic_orbit_check(const CubicHypersurface<Complex>& X, const ProjectiveLine<Complex>& l,
                              const ProjectivePoint<Complex>& y_prime, std::uint64_t seed, int samples) {
  if (samples < 7) fail(ErrorKind::Input, "insufficient samples: need at least 7 orbit points");
  const ProjectivePoint<Complex>& xp = l.base();
  const Vec<Complex>& x = xp.coords();
  const ProjectivePoint<Complex> u = third_point(X, xp, y_prime);
  const Vec<Complex> z = tangent_point_z(X.polar(), u.coords(), x, l.dir());
  if (proj_equal(z, x, kPointMatchTol)) fail(ErrorKind::Indeterminate, "T_u' X passes through x");
  ConicReport rep{u, l, y_prime, z, {}};
  // The raw orbit is g0 + g1 t + g2 t^2; samples on |t| = sqrt(|g0| / |g2|)
  // balance both ends of the parametrization.
  const double g0 = norm2(third_point_raw(X.polar(), u.coords(), x));
  const double g2 = norm2(third_point_raw(X.polar(), u.coords(), z));
  const double radius = g0 > 0.0 && g2 > 0.0 ? std::sqrt(g0 / g2) : 1.0;

  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    rep.samples.clear();
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    for (int i = 0; i < samples; ++i) {
      const double r = radius * (0.8 + 0.4 * rng.uniform());
      const Complex t = std::polar(r, phase + 2.0 * std::numbers::pi * i / samples);
      rep.samples.push_back(orbit_point(X, u, x, z, t));
    }
    bool distinct = true;
    for (std::size_t i = 0; i < rep.samples.size() && distinct; ++i)
      for (std::size_t j = i + 1; j < rep.samples.size() && distinct; ++j)
        distinct = !proj_equal(rep.samples[i], rep.samples[j], 1e-6);
    if (distinct) break;
    if (attempt == 7) fail(ErrorKind::ResampleExhausted, "orbit samples keep repeating");
  }

  rep.membership_residual = 0.0;
  for (const auto& p : rep.samples) {
    const auto& c = p.coords();
    rep.membership_residual = std::max(rep.membership_residual, X.relative(X.form().evaluate(c), c, c, c));
  }

  Mat<Complex> rows{unit(x), unit(z), unit(y_prime.coords())};
  for (const auto& p : rep.samples) rows.push_back(unit(p.coords()));
  const RankResult plane = span_rank(rows, X.tolerances().rank);
  rep.plane_rank = plane.rank;
  rep.plane_singular_values = plane.singular_values;

  // Orthonormal coordinates on the plane <x, z', y'>.
  Mat<Complex> basis;
  for (int i = 0; i < 3; ++i) {
    Vec<Complex> v = rows[i];
    for (const auto& b : basis) {
      const Complex h = hermitian_dot(b, v);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= h * b[k];
    }
    basis.push_back(unit(std::move(v)));
  }
  Mat<Complex> veronese;
  std::vector<Vec<Complex>> on_conic{u.coords(), y_prime.coords()};
  for (const auto& p : rep.samples) on_conic.push_back(p.coords());
  for (const auto& p : on_conic) {
    const Vec<Complex> q = unit(p);
    const Complex a = hermitian_dot(basis[0], q), b = hermitian_dot(basis[1], q), c = hermitian_dot(basis[2], q);
    veronese.push_back({a * a, a * b, a * c, b * b, b * c, c * c});
  }
  const RankResult moment = span_rank(veronese, X.tolerances().rank);
  rep.moment_rank = moment.rank;
  rep.moment_singular_values = moment.singular_values;
  const auto& sv = moment.singular_values;
  rep.conic_residual = sv.size() >= 6 && sv[4] > 0.0 ? sv[5] / sv[4] : 1.0;
  rep.is_conic = rep.plane_rank == 3 && rep.moment_rank == 5 && rep.conic_residual < 1e-9 &&
                 rep.membership_residual <= X.tolerances().membership;
  return rep;
}

#define CUBICSPRAY_INSTANTIATE(T)                                                                                 \
  template GenericityFlags genericity(const CubicHypersurface<T>&, const ProjectivePoint<T>&,                     \
                                      const ProjectivePoint<T>&, const ProjectivePoint<T>&);                      \
  template Vec<T> tangent_point_z(const TrilinearForm<T>&, const Vec<T>&, const Vec<T>&, const Vec<T>&);          \
  template ProjectivePoint<T> orbit_point(const CubicHypersurface<T>&, const ProjectivePoint<T>&, const Vec<T>&,  \
                                          const Vec<T>&, const T&);                                               \
  template Vec<T> orbit_velocity(const TrilinearForm<T>&, const Vec<T>&, const Vec<T>&, const Vec<T>&);           \
  template Vec<T> orbit_tangent(const CubicHypersurface<T>&, const ProjectivePoint<T>&, const Vec<T>&,            \
                                const Vec<T>&, const TangentFrame<T>&);

CUBICSPRAY_INSTANTIATE(Rational)
CUBICSPRAY_INSTANTIATE(Complex)

#undef CUBICSPRAY_INSTANTIATE

}  // namespace cubicspray
