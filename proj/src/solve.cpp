#include "cubicspray/solve.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <numeric>

#include <Eigen/Dense>

#include "cubicspray/errors.hpp"
#include "cubicspray/linalg.hpp"
#include "cubicspray/random.hpp"

namespace cubicspray {

namespace {

constexpr double kDegreeDropTol = 1e-12;
constexpr double kMergeWindow = 1e-3;
constexpr double kMultipleRootTol = 1e-8;

bool root_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void sort_roots(RootList<Complex>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Root<Complex>& a, const Root<Complex>& b) {
    if (a.at_infinity != b.at_infinity) return b.at_infinity;
    return root_less(a.value, b.value);
  });
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// j-th Taylor coefficient of the polynomial at c, and the matching magnitude scale.
std::pair<Complex, double> taylor_coefficient(const Vec<Complex>& a, const Complex& c, int j) {
  Complex value(0.0, 0.0);
  double scale = 0.0;
  const double ac = std::abs(c);
  for (int k = j; k < static_cast<int>(a.size()); ++k) {
    const double b = binomial(k, j);
    value += a[k] * b * std::pow(c, k - j);
    scale += std::abs(a[k]) * b * std::pow(ac, k - j);
  }
  return {value, scale};
}

bool is_root_of_multiplicity(const Vec<Complex>& a, const Complex& c, int m) {
  for (int j = 0; j < m; ++j) {
    auto [value, scale] = taylor_coefficient(a, c, j);
    if (std::abs(value) > kMultipleRootTol * scale) return false;
  }
  return true;
}

Complex horner(const Vec<Complex>& a, const Complex& t, Complex* derivative = nullptr) {
  Complex p(0.0, 0.0), dp(0.0, 0.0);
  for (auto k = a.size(); k-- > 0;) {
    dp = dp * t + p;
    p = p * t + a[k];
  }
  if (derivative) *derivative = dp;
  return p;
}

std::vector<Complex> companion_eigenvalues(const Vec<Complex>& a) {
  const int d = static_cast<int>(a.size()) - 1;
  if (d == 1) return {-a[0] / a[1]};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -a[i] / a[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::Solver, "companion eigenvalue iteration failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// A few guarded Newton steps; a step is kept only if it reduces the residual
// and stays well inside the gap to the nearest other root.
void polish(const Vec<Complex>& a, std::vector<Complex>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j)
      if (j != i) gap = std::min(gap, std::abs(roots[i] - roots[j]));
    for (int it = 0; it < 3; ++it) {
      Complex dp;
      const Complex p = horner(a, roots[i], &dp);
      if (std::abs(dp) == 0.0) break;
      const Complex step = p / dp;
      if (!(std::abs(step) < 0.1 * gap)) break;
      const Complex next = roots[i] - step;
      if (std::abs(horner(a, next)) >= std::abs(p)) break;
      roots[i] = next;
    }
  }
}

RootList<Complex> merge_multiple_roots(const Vec<Complex>& a, RootList<Complex> clusters) {
  bool merged = true;
  while (merged && clusters.size() > 1) {
    merged = false;
    struct Candidate {
      double dist;
      std::size_t i, j;
    };
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double d = std::abs(clusters[i].value - clusters[j].value);
        const double window = kMergeWindow * std::max({1.0, std::abs(clusters[i].value), std::abs(clusters[j].value)});
        if (d <= window) cands.push_back({d, i, j});
      }
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) { return x.dist < y.dist; });
    for (const auto& c : cands) {
      const auto& ri = clusters[c.i];
      const auto& rj = clusters[c.j];
      const int m = ri.multiplicity + rj.multiplicity;
      const Complex centre = (ri.value * double(ri.multiplicity) + rj.value * double(rj.multiplicity)) / double(m);
      if (is_root_of_multiplicity(a, centre, m)) {
        clusters[c.i] = Root<Complex>{centre, false, m};
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(c.j));
        merged = true;
        break;
      }
    }
  }
  return clusters;
}

}  // namespace

RootList<Complex> cluster_roots(const std::vector<Complex>& raw, double radius) {
  if (!(radius > 0.0)) fail(ErrorKind::Input, "cluster radius must be positive");
  const std::size_t n = raw.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(raw[i] - raw[j]) <= radius) parent[find(i)] = find(j);
  std::map<std::size_t, std::pair<Complex, int>> acc;
  for (std::size_t i = 0; i < n; ++i) {
    auto& slot = acc[find(i)];
    slot.first += raw[i];
    slot.second += 1;
  }
  RootList<Complex> out;
  for (const auto& [root, sum] : acc) out.push_back({sum.first / double(sum.second), false, sum.second});
  sort_roots(out);
  return out;
}

RootList<Complex> polynomial_roots(const Vec<Complex>& ascending, double cluster_radius) {
  if (ascending.empty()) fail(ErrorKind::Input, "empty polynomial");
  double maxc = 0.0;
  for (const auto& c : ascending) maxc = std::max(maxc, std::abs(c));
  if (maxc == 0.0) fail(ErrorKind::Solver, "identically zero polynomial");
  const int nominal = static_cast<int>(ascending.size()) - 1;
  int d = nominal;
  while (d > 0 && std::abs(ascending[d]) <= kDegreeDropTol * maxc) --d;

  RootList<Complex> out;
  if (d > 0) {
    Vec<Complex> a(ascending.begin(), ascending.begin() + d + 1);
    std::vector<Complex> raw = companion_eigenvalues(a);
    polish(a, raw);
    out = merge_multiple_roots(a, cluster_roots(raw, cluster_radius));
  }
  if (d < nominal) out.push_back({Complex(0.0, 0.0), true, nominal - d});
  sort_roots(out);
  return out;
}

RootList<Complex> cubic_roots(const std::array<Complex, 4>& c, double cluster_radius) {
  if (c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0) fail(ErrorKind::Solver, "identically zero on line");
  return polynomial_roots(Vec<Complex>(c.begin(), c.end()), cluster_radius);
}

namespace {

Rational eval_poly(const Vec<Rational>& a, const Rational& t) {
  Rational p(0);
  for (auto k = a.size(); k-- > 0;) p = p * t + a[k];
  return p;
}

// Divides by (t - r); the remainder is assumed zero.
Vec<Rational> deflate(const Vec<Rational>& a, const Rational& r) {
  const std::size_t d = a.size() - 1;
  Vec<Rational> q(d);
  Rational carry(0);
  for (std::size_t k = d; k-- > 0;) {
    carry = a[k + 1] + carry * r;
    q[k] = carry;
  }
  return q;
}

std::optional<Rational> exact_sqrt(const Rational& v) {
  if (sgn(v) < 0) return std::nullopt;
  mpz_class num = v.get_num(), den = v.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

// Positive divisors of |n|, or nullopt when |n| is too large to factor by trial division.
std::optional<std::vector<mpz_class>> divisors(const mpz_class& n) {
  const mpz_class m = abs(n);
  if (sgn(m) == 0 || mpz_sizeinbase(m.get_mpz_t(), 2) > 40) return std::nullopt;
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= m; ++d)
    if (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
      small.push_back(d);
      if (d * d != m) large.push_back(m / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// A rational root of a polynomial with nonzero constant term, by the rational root theorem.
std::optional<Rational> rational_root(const Vec<Rational>& a) {
  mpz_class lcm = 1;
  for (const auto& c : a) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  const mpz_class lead = mpz_class(a.back() * lcm), constant = mpz_class(a.front() * lcm);
  const auto ps = divisors(constant), qs = divisors(lead);
  if (!ps || !qs) return std::nullopt;
  for (const auto& q : *qs)
    for (const auto& p : *ps)
      for (int sign : {1, -1}) {
        Rational r(sign * p, q);
        r.canonicalize();
        if (sgn(eval_poly(a, r)) == 0) return r;
      }
  return std::nullopt;
}

void add_root(RootList<Rational>& roots, const Rational& value, int mult) {
  for (auto& r : roots)
    if (!r.at_infinity && r.value == value) {
      r.multiplicity += mult;
      return;
    }
  roots.push_back({value, false, mult});
}

}  // namespace

RootList<Rational> cubic_roots(const std::array<Rational, 4>& c, const std::vector<Rational>& known) {
  int deg = 3;
  while (deg >= 0 && sgn(c[deg]) == 0) --deg;
  if (deg < 0) fail(ErrorKind::Solver, "identically zero on line");
  RootList<Rational> roots;
  Vec<Rational> poly(c.begin(), c.begin() + deg + 1);

  int zero_mult = 0;
  while (poly.size() > 1 && sgn(poly[0]) == 0) {
    poly.erase(poly.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) add_root(roots, Rational(0), zero_mult);

  for (const auto& r : known) {
    while (poly.size() > 1 && sgn(eval_poly(poly, r)) == 0) {
      poly = deflate(poly, r);
      add_root(roots, r, 1);
    }
  }

  if (poly.size() == 4) {
    const auto r = rational_root(poly);
    if (!r) fail(ErrorKind::Solver, "cubic without rational roots; use the complex backend");
    poly = deflate(poly, *r);
    add_root(roots, *r, 1);
  }
  if (poly.size() == 2) {
    add_root(roots, Rational(-poly[0] / poly[1]), 1);
  } else if (poly.size() == 3) {
    const Rational disc = poly[1] * poly[1] - 4 * poly[2] * poly[0];
    auto s = exact_sqrt(disc);
    if (!s) fail(ErrorKind::Solver, "residual quadratic has irrational roots; use the complex backend");
    const Rational two_a = 2 * poly[2];
    if (sgn(*s) == 0) {
      add_root(roots, Rational(-poly[1] / two_a), 2);
    } else {
      add_root(roots, Rational((-poly[1] + *s) / two_a), 1);
      add_root(roots, Rational((-poly[1] - *s) / two_a), 1);
    }
  }
  if (deg < 3) roots.push_back({Rational(0), true, 3 - deg});
  return roots;
}

// ---------------------------------------------------------------------------
// TernaryForm

template <class T>
TernaryForm<T>::TernaryForm(int degree, const std::map<Exponent, T>& coeffs) : degree_(degree) {
  for (const auto& [e, v] : coeffs) add(e, v);
}

template <class T>
void TernaryForm<T>::add(const Exponent& e, const T& value) {
  if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree_)
    fail(ErrorKind::Input, "exponent does not match form degree");
  if (cubicspray::is_zero(value)) return;
  auto& slot = coeffs_[e];
  slot += value;
  if (cubicspray::is_zero(slot)) coeffs_.erase(e);
}

template <class T>
T TernaryForm<T>::coefficient(int a, int b, int c) const {
  auto it = coeffs_.find({a, b, c});
  return it == coeffs_.end() ? T(0) : it->second;
}

namespace {

template <class T>
T ipow(const T& base, int e) {
  T r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

template <class T>
T TernaryForm<T>::evaluate(const std::array<T, 3>& p) const {
  T s(0);
  for (const auto& [e, v] : coeffs_) s += v * ipow(p[0], e[0]) * ipow(p[1], e[1]) * ipow(p[2], e[2]);
  return s;
}

template <class T>
std::array<T, 3> TernaryForm<T>::gradient(const std::array<T, 3>& p) const {
  std::array<T, 3> g{T(0), T(0), T(0)};
  for (const auto& [e, v] : coeffs_)
    for (int r = 0; r < 3; ++r) {
      if (e[r] == 0) continue;
      Exponent d = e;
      d[r] -= 1;
      g[r] += v * T(e[r]) * ipow(p[0], d[0]) * ipow(p[1], d[1]) * ipow(p[2], d[2]);
    }
  return g;
}

template <class T>
TernaryForm<T> TernaryForm<T>::transformed(const std::array<std::array<T, 3>, 3>& m) const {
  // Linear forms L_r(p) = sum_j m[r][j] p_j, expanded monomial by monomial.
  using Poly = std::map<Exponent, T>;
  auto times_linear = [&](const Poly& p, int r) {
    Poly out;
    for (const auto& [e, v] : p)
      for (int j = 0; j < 3; ++j) {
        if (cubicspray::is_zero(m[r][j])) continue;
        Exponent f = e;
        f[j] += 1;
        out[f] += v * m[r][j];
      }
    return out;
  };
  TernaryForm<T> result(degree_);
  for (const auto& [e, v] : coeffs_) {
    Poly p{{Exponent{0, 0, 0}, v}};
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < e[r]; ++k) p = times_linear(p, r);
    for (const auto& [f, w] : p) result.add(f, w);
  }
  return result;
}

template <class T>
bool TernaryForm<T>::is_zero() const {
  return coeffs_.empty();
}

template <class T>
double TernaryForm<T>::magnitude_sum() const {
  double s = 0.0;
  for (const auto& [e, v] : coeffs_) s += Field<T>::magnitude(v);
  return s;
}

TernaryForm<Complex> to_complex(const TernaryForm<Rational>& f) {
  TernaryForm<Complex> out(f.degree());
  for (const auto& [e, v] : f.coefficients()) out.add(e, to_complex(v));
  return out;
}

// ---------------------------------------------------------------------------
// Conic-cubic intersection

namespace {

template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

Mat3<Complex> random_unitary(std::uint64_t seed) {
  Rng rng(seed);
  std::array<Vec<Complex>, 3> cols;
  for (int j = 0; j < 3; ++j) {
    Vec<Complex> v = rng.complex_vector(3);
    for (int k = 0; k < j; ++k) {
      const Complex h = hermitian_dot(cols[k], v);
      for (int i = 0; i < 3; ++i) v[i] -= h * cols[k][i];
    }
    const double nv = norm2(v);
    for (auto& e : v) e /= nv;
    cols[j] = v;
  }
  Mat3<Complex> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = cols[j][i];
  return m;
}

Mat3<Rational> random_integer_change(std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    Mat3<Rational> m;
    Mat<Rational> as_rows(3, Vec<Rational>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) as_rows[i][j] = m[i][j] = Rational(rng.integer(-3, 3));
    if (sgn(determinant(as_rows)) != 0) return m;
  }
}

// Coefficients in z of F(1, s, z), ascending.
template <class T>
Vec<T> z_coefficients(const TernaryForm<T>& f, const T& x, const T& s) {
  Vec<T> out(f.degree() + 1, T(0));
  for (const auto& [e, v] : f.coefficients()) out[e[2]] += v * ipow(x, e[0]) * ipow(s, e[1]);
  return out;
}

// Sylvester matrix of a quadratic and a cubic in z (descending powers).
template <class T>
Mat<T> sylvester(const Vec<T>& f, const Vec<T>& g) {
  Mat<T> s(5, Vec<T>(5, T(0)));
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k <= 2; ++k) s[r][r + k] = f[2 - k];
  for (int r = 0; r < 2; ++r)
    for (int k = 0; k <= 3; ++k) s[3 + r][r + k] = g[3 - k];
  return s;
}

double hadamard_bound(const Mat<Complex>& m) {
  double b = 1.0;
  for (const auto& row : m) b *= norm2(row);
  return b;
}

struct ComplexResultant {
  Vec<Complex> coeffs;  // R(1, s), ascending, nominal degree 6
  double relative = 0.0;
};

ComplexResultant complex_resultant(const TernaryForm<Complex>& q, const TernaryForm<Complex>& c) {
  constexpr int kNodes = 7;
  std::array<Complex, kNodes> values;
  double scale = 0.0;
  for (int k = 0; k < kNodes; ++k) {
    const Complex s = std::polar(1.0, 2.0 * M_PI * k / kNodes);
    const Mat<Complex> syl = sylvester(z_coefficients(q, Complex(1.0), s), z_coefficients(c, Complex(1.0), s));
    values[k] = determinant(syl);
    scale = std::max(scale, hadamard_bound(syl));
  }
  ComplexResultant r;
  r.coeffs.assign(kNodes, Complex(0.0));
  double maxc = 0.0;
  for (int j = 0; j < kNodes; ++j) {
    Complex acc(0.0);
    for (int k = 0; k < kNodes; ++k) acc += values[k] * std::polar(1.0, -2.0 * M_PI * j * k / kNodes);
    r.coeffs[j] = acc / double(kNodes);
    maxc = std::max(maxc, std::abs(r.coeffs[j]));
  }
  r.relative = scale > 0.0 ? maxc / scale : 0.0;
  return r;
}

Vec<Rational> exact_resultant(const TernaryForm<Rational>& q, const TernaryForm<Rational>& c) {
  constexpr int kNodes = 7;
  Vec<Rational> xs(kNodes), ys(kNodes);
  for (int k = 0; k < kNodes; ++k) {
    xs[k] = Rational(k);
    ys[k] = determinant(sylvester(z_coefficients(q, Rational(1), xs[k]), z_coefficients(c, Rational(1), xs[k])));
  }
  // Newton divided differences, then expansion into the monomial basis.
  Vec<Rational> dd = ys;
  for (int level = 1; level < kNodes; ++level)
    for (int i = kNodes - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  Vec<Rational> poly(kNodes, Rational(0));
  for (int i = kNodes - 1; i >= 0; --i) {
    // poly = poly * (s - xs[i]) + dd[i]
    Vec<Rational> next(kNodes, Rational(0));
    for (int k = 0; k < kNodes; ++k) {
      if (sgn(poly[k]) == 0) continue;
      if (k + 1 < kNodes) next[k + 1] += poly[k];
      next[k] -= poly[k] * xs[i];
    }
    next[0] += dd[i];
    poly = std::move(next);
  }
  return poly;
}

std::array<Complex, 3> normalized(const std::array<Complex, 3>& p) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(p[i]) > std::abs(p[k])) k = i;
  const Complex d = p[k];
  return {p[0] / d, p[1] / d, p[2] / d};
}

double relative_value(const TernaryForm<Complex>& f, const std::array<Complex, 3>& p) {
  double np = 0.0;
  for (const auto& e : p) np = std::max(np, std::abs(e));
  return std::abs(f.evaluate(p)) / (f.magnitude_sum() * std::pow(np, f.degree()));
}

// Newton on {Q = 0, C = 0} in the affine chart of the largest coordinate.
std::array<Complex, 3> newton_polish(const TernaryForm<Complex>& q, const TernaryForm<Complex>& c,
                                     std::array<Complex, 3> p) {
  p = normalized(p);
  std::size_t fixed = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(p[i]) > std::abs(p[fixed])) fixed = i;
  std::array<std::size_t, 2> free{};
  for (std::size_t i = 0, k = 0; i < 3; ++i)
    if (i != fixed) free[k++] = i;
  double res = relative_value(q, p) + relative_value(c, p);
  for (int it = 0; it < 4; ++it) {
    const auto gq = q.gradient(p);
    const auto gc = c.gradient(p);
    const Complex a = gq[free[0]], b = gq[free[1]], cc = gc[free[0]], d = gc[free[1]];
    const Complex det = a * d - b * cc;
    if (std::abs(det) == 0.0) break;
    const Complex fq = q.evaluate(p), fc = c.evaluate(p);
    std::array<Complex, 3> next = p;
    next[free[0]] -= (d * fq - b * fc) / det;
    next[free[1]] -= (-cc * fq + a * fc) / det;
    const double r = relative_value(q, next) + relative_value(c, next);
    if (!(r < res)) break;
    p = next;
    res = r;
  }
  return normalized(p);
}

constexpr double kLeadingTol = 1e-6;
constexpr double kZeroResultantTol = 1e-8;
constexpr double kBackSubTol = 1e-6;
constexpr double kSeparation = 1e4;

std::optional<std::vector<IntersectionPoint>> back_substitute(const TernaryForm<Complex>& q,
                                                              const TernaryForm<Complex>& c,
                                                              const RootList<Complex>& roots) {
  std::vector<IntersectionPoint> out;
  for (const auto& r : roots) {
    const Complex x = r.at_infinity ? Complex(0.0) : Complex(1.0);
    const Complex y = r.at_infinity ? Complex(1.0) : r.value;
    const Vec<Complex> qz = z_coefficients(q, x, y);
    const Complex disc = qz[1] * qz[1] - 4.0 * qz[2] * qz[0];
    const Complex sq = std::sqrt(disc);
    const Complex big = std::abs(qz[1] + sq) >= std::abs(qz[1] - sq) ? qz[1] + sq : qz[1] - sq;
    std::array<Complex, 2> zs;
    if (std::abs(big) == 0.0) {
      zs = {Complex(0.0), Complex(0.0)};
    } else {
      zs = {-big / (2.0 * qz[2]), -2.0 * qz[0] / big};
    }
    const std::array<Complex, 3> p0{x, y, zs[0]}, p1{x, y, zs[1]};
    const double r0 = relative_value(c, p0), r1 = relative_value(c, p1);
    std::array<Complex, 3> chosen;
    if (std::abs(zs[0] - zs[1]) <= kBackSubTol * (1.0 + std::abs(zs[0]))) {
      chosen = {x, y, 0.5 * (zs[0] + zs[1])};
    } else {
      const double lo = std::min(r0, r1), hi = std::max(r0, r1);
      // lost root, or two points of the intersection over one fibre
      if (lo > kBackSubTol || hi <= kSeparation * std::max(lo, 1e-14)) return std::nullopt;
      chosen = r0 <= r1 ? p0 : p1;
    }
    out.push_back({chosen, r.multiplicity});
  }
  return out;
}

template <class T>
TernaryForm<T> scaled_copy(const TernaryForm<T>& f, const T& s) {
  TernaryForm<T> out(f.degree());
  for (const auto& [e, v] : f.coefficients()) out.add(e, v * s);
  return out;
}

PlaneIntersection intersect_complex(const TernaryForm<Complex>& q, const TernaryForm<Complex>& c, std::uint64_t seed,
                                    double cluster_radius, int max_attempts) {
  if (q.degree() != 2 || c.degree() != 3) fail(ErrorKind::Input, "expected a conic and a cubic");
  if (q.is_zero() || c.is_zero()) fail(ErrorKind::Input, "zero input polynomial");
  PlaneIntersection result;
  int zero_count = 0;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    result.attempts = attempt + 1;
    const Mat3<Complex> m = random_unitary(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    TernaryForm<Complex> qt = q.transformed(m);
    TernaryForm<Complex> ct = c.transformed(m);
    qt = scaled_copy(qt, Complex(1.0 / qt.magnitude_sum()));
    ct = scaled_copy(ct, Complex(1.0 / ct.magnitude_sum()));
    if (std::abs(qt.coefficient(0, 0, 2)) < kLeadingTol || std::abs(ct.coefficient(0, 0, 3)) < kLeadingTol) continue;

    const ComplexResultant res = complex_resultant(qt, ct);
    result.resultant_relative = res.relative;
    if (res.relative <= kZeroResultantTol) {
      if (++zero_count >= 3) {
        result.infinite = true;
        return result;
      }
      continue;
    }
    const RootList<Complex> roots = polynomial_roots(res.coeffs, cluster_radius);
    if (total_multiplicity(roots) != 6) continue;
    auto pts = back_substitute(qt, ct, roots);
    if (!pts) continue;
    result.points.clear();
    for (auto& ip : *pts) {
      std::array<Complex, 3> p{};
      for (int i = 0; i < 3; ++i) p[i] = m[i][0] * ip.point[0] + m[i][1] * ip.point[1] + m[i][2] * ip.point[2];
      p = ip.multiplicity == 1 ? newton_polish(q, c, p) : normalized(p);
      result.points.push_back({p, ip.multiplicity});
    }
    return result;
  }
  fail(ErrorKind::Solver, "conic-cubic intersection degenerate after " + std::to_string(max_attempts) + " coordinate changes");
}

}  // namespace

template <>
PlaneIntersection conic_cubic_intersect(const TernaryForm<Complex>& q, const TernaryForm<Complex>& c,
                                        std::uint64_t seed, double cluster_radius, int max_attempts) {
  return intersect_complex(q, c, seed, cluster_radius, max_attempts);
}

bool has_common_component(const TernaryForm<Rational>& q, const TernaryForm<Rational>& c, std::uint64_t seed,
                          int max_attempts) {
  if (q.is_zero() || c.is_zero()) fail(ErrorKind::Input, "zero input polynomial");
  int zero_count = 0;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const Mat3<Rational> m = random_integer_change(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    const TernaryForm<Rational> qt = q.transformed(m);
    const TernaryForm<Rational> ct = c.transformed(m);
    if (sgn(qt.coefficient(0, 0, q.degree())) == 0 || sgn(ct.coefficient(0, 0, c.degree())) == 0) continue;
    const Vec<Rational> res = exact_resultant(qt, ct);
    if (!std::all_of(res.begin(), res.end(), [](const Rational& v) { return sgn(v) == 0; })) return false;
    if (++zero_count >= 3) return true;
  }
  fail(ErrorKind::Solver, "no admissible coordinate change found for the resultant");
}

template <>
PlaneIntersection conic_cubic_intersect(const TernaryForm<Rational>& q, const TernaryForm<Rational>& c,
                                        std::uint64_t seed, double cluster_radius, int max_attempts) {
  if (q.degree() != 2 || c.degree() != 3) fail(ErrorKind::Input, "expected a conic and a cubic");
  if (has_common_component(q, c, seed, max_attempts)) {
    PlaneIntersection out;
    out.infinite = true;
    return out;
  }
  return intersect_complex(to_complex(q), to_complex(c), seed, cluster_radius, max_attempts);
}

template class TernaryForm<Rational>;
template class TernaryForm<Complex>;

}  // namespace cubicspray
