#include "cubicspray/forms.hpp"

#include <algorithm>

#include <json.hpp>

#include "cubicspray/errors.hpp"
#include "cubicspray/json_io.hpp"

namespace cubicspray {

Monomial make_monomial(int i, int j, int k) {
  Monomial m{i, j, k};
  std::sort(m.begin(), m.end());
  return m;
}

int multinomial_count(const Monomial& m) {
  if (m[0] == m[1] && m[1] == m[2]) return 1;
  if (m[0] == m[1] || m[1] == m[2]) return 3;
  return 6;
}

template <class T>
HomogeneousCubic<T>::HomogeneousCubic(int num_vars, const std::map<Monomial, T>& coefficients)
    : num_vars_(num_vars) {
  if (num_vars < 1) fail(ErrorKind::Input, "cubic needs at least one variable");
  for (const auto& [key, value] : coefficients) {
    for (int idx : key)
      if (idx < 0 || idx >= num_vars) fail(ErrorKind::Input, "monomial index out of range");
    if (!Field<T>::finite(value)) fail(ErrorKind::Input, "non-finite coefficient");
    const Monomial m = make_monomial(key[0], key[1], key[2]);
    coeffs_[m] += value;
  }
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (is_zero(it->second))
      it = coeffs_.erase(it);
    else
      ++it;
  }
  if (coeffs_.empty()) fail(ErrorKind::Input, "zero form");
  for (const auto& [m, c] : coeffs_) scale_ += Field<T>::magnitude(c);
}

template <class T>
T HomogeneousCubic<T>::evaluate(const Vec<T>& p) const {
  if (static_cast<int>(p.size()) != num_vars_) fail(ErrorKind::Input, "dimension mismatch");
  T s(0);
  for (const auto& [m, c] : coeffs_) s += c * p[m[0]] * p[m[1]] * p[m[2]];
  return s;
}

template <class T>
Vec<T> HomogeneousCubic<T>::gradient(const Vec<T>& p) const {
  if (static_cast<int>(p.size()) != num_vars_) fail(ErrorKind::Input, "dimension mismatch");
  Vec<T> g(num_vars_, T(0));
  for (const auto& [m, c] : coeffs_) {
    // d/dx_r of x_i x_j x_k: one term per occurrence of r.
    g[m[0]] += c * p[m[1]] * p[m[2]];
    g[m[1]] += c * p[m[0]] * p[m[2]];
    g[m[2]] += c * p[m[0]] * p[m[1]];
  }
  return g;
}

template <class T>
TrilinearForm<T>::TrilinearForm(const HomogeneousCubic<T>& f)
    : n_(f.num_vars()), dense_(static_cast<std::size_t>(n_) * n_ * n_, T(0)) {
  for (const auto& [m, c] : f.coefficients()) {
    const T value = c / T(multinomial_count(m));
    std::array<int, 3> perm = m;
    do {
      dense_[(static_cast<std::size_t>(perm[0]) * n_ + perm[1]) * n_ + perm[2]] = value;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

template <class T>
T TrilinearForm<T>::operator()(const Vec<T>& a, const Vec<T>& b, const Vec<T>& c) const {
  if (static_cast<int>(a.size()) != n_ || static_cast<int>(b.size()) != n_ || static_cast<int>(c.size()) != n_)
    fail(ErrorKind::Input, "dimension mismatch");
  T total(0);
  for (int i = 0; i < n_; ++i) {
    if (is_zero(a[i])) continue;
    T inner(0);
    for (int j = 0; j < n_; ++j) {
      if (is_zero(b[j])) continue;
      T row(0);
      const T* slice = &dense_[(static_cast<std::size_t>(i) * n_ + j) * n_];
      for (int k = 0; k < n_; ++k)
        if (!is_zero(slice[k])) row += slice[k] * c[k];
      inner += b[j] * row;
    }
    total += a[i] * inner;
  }
  return total;
}

template <class T>
Vec<T> TrilinearForm<T>::contract(const Vec<T>& a, const Vec<T>& b) const {
  if (static_cast<int>(a.size()) != n_ || static_cast<int>(b.size()) != n_) fail(ErrorKind::Input, "dimension mismatch");
  Vec<T> w(n_, T(0));
  for (int i = 0; i < n_; ++i) {
    if (is_zero(a[i])) continue;
    for (int j = 0; j < n_; ++j) {
      if (is_zero(b[j])) continue;
      const T ab = a[i] * b[j];
      const T* slice = &dense_[(static_cast<std::size_t>(i) * n_ + j) * n_];
      for (int k = 0; k < n_; ++k)
        if (!is_zero(slice[k])) w[k] += ab * slice[k];
    }
  }
  return w;
}

template <class T>
LineRestriction<T> restrict_to_line(const TrilinearForm<T>& p, const Vec<T>& x, const Vec<T>& v) {
  LineRestriction<T> r;
  r.c[0] = p(x, x, x);
  r.c[1] = T(3) * p(x, x, v);
  r.c[2] = T(3) * p(x, v, v);
  r.c[3] = p(v, v, v);
  return r;
}

namespace {

template <class T>
bool proportional(const Vec<T>& x, const Vec<T>& v) {
  // All 2x2 minors vanish. Exact for rationals, relative 1e-14 for doubles.
  const double scale = norm_inf(x) * norm_inf(v);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (!Field<T>::negligible(x[i] * v[j] - x[j] * v[i], scale, 1e-14)) return false;
  return true;
}

}  // namespace

template <class T>
LineRestriction<T> restrict_to_line(const HomogeneousCubic<T>& f, const Vec<T>& x, const Vec<T>& v) {
  if (static_cast<int>(x.size()) != f.num_vars() || static_cast<int>(v.size()) != f.num_vars())
    fail(ErrorKind::Input, "dimension mismatch");
  if (proportional(x, v)) fail(ErrorKind::Input, "degenerate line: direction proportional to base point");
  return restrict_to_line(TrilinearForm<T>(f), x, v);
}

template <class T>
HomogeneousCubic<T> restrict_to_subspace(const TrilinearForm<T>& p, const Mat<T>& basis) {
  const int m = static_cast<int>(basis.size());
  std::map<Monomial, T> coeffs;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const Vec<T> w = p.contract(basis[i], basis[j]);
      for (int k = j; k < m; ++k) {
        const Monomial mono{i, j, k};
        T value = T(multinomial_count(mono)) * dot(w, basis[k]);
        if (!is_zero(value)) coeffs[mono] = value;
      }
    }
  if (coeffs.empty()) {
    // The subspace lies inside X; represent by an explicit zero-free failure.
    fail(ErrorKind::Solver, "restriction of the cubic to the subspace vanishes identically");
  }
  return HomogeneousCubic<T>(m, coeffs);
}

HomogeneousCubic<Complex> to_complex(const HomogeneousCubic<Rational>& f) {
  std::map<Monomial, Complex> c;
  for (const auto& [m, v] : f.coefficients()) c[m] = to_complex(v);
  return HomogeneousCubic<Complex>(f.num_vars(), c);
}

HomogeneousCubic<Rational> fermat_cubic(int dim) {
  std::map<Monomial, Rational> c;
  for (int i = 0; i < dim + 2; ++i) c[{i, i, i}] = Rational(1);
  return HomogeneousCubic<Rational>(dim + 2, c);
}


ParsedCubic parse_cubic(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc["dim"].is_number_integer() || !doc.contains("coeffs") ||
      !doc["coeffs"].is_array())
    fail(ErrorKind::Input, "malformed document: expected {\"dim\": n, \"coeffs\": [...]}");
  const int dim = doc["dim"].get<int>();
  if (dim < 2) fail(ErrorKind::Input, "dimension < 2");
  const int num_vars = dim + 2;

  std::map<Monomial, Rational> exact;
  std::map<Monomial, Complex> numeric;
  bool all_exact = true;
  for (const auto& entry : doc["coeffs"]) {
    if (!entry.is_object() || !entry.contains("mono") || !entry.contains("val") || !entry["mono"].is_array())
      fail(ErrorKind::Input, "malformed document: coefficient entries need \"mono\" and \"val\"");
    const auto& mono = entry["mono"];
    if (mono.size() != 3) fail(ErrorKind::Input, "non-cubic monomial " + mono.dump());
    std::array<int, 3> idx{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!mono[i].is_number_integer()) fail(ErrorKind::Input, "malformed document: monomial indices must be integers");
      idx[i] = mono[i].get<int>();
      if (idx[i] < 0 || idx[i] >= num_vars) fail(ErrorKind::Input, "monomial index out of range " + mono.dump());
    }
    const Monomial m = make_monomial(idx[0], idx[1], idx[2]);
    ParsedScalar v = parse_scalar(entry["val"]);
    numeric[m] += v.numeric;
    if (v.exact)
      exact[m] += *v.exact;
    else
      all_exact = false;
  }

  bool nonzero = false;
  for (const auto& [m, c] : numeric)
    if (c != Complex(0.0, 0.0)) nonzero = true;
  if (all_exact) {
    nonzero = false;
    for (const auto& [m, c] : exact)
      if (sgn(c) != 0) nonzero = true;
  }
  if (!nonzero) fail(ErrorKind::Input, "zero form");

  std::optional<HomogeneousCubic<Rational>> exact_form;
  if (all_exact) exact_form.emplace(num_vars, exact);
  HomogeneousCubic<Complex> numeric_form = exact_form ? to_complex(*exact_form) : HomogeneousCubic<Complex>(num_vars, numeric);

  std::optional<Vec<Rational>> base;
  if (doc.contains("base_point")) {
    const auto& bp = doc["base_point"];
    if (!bp.is_array() || static_cast<int>(bp.size()) != num_vars)
      fail(ErrorKind::Input, "malformed document: base_point must have n+2 entries");
    Vec<Rational> pt;
    for (const auto& e : bp) {
      ParsedScalar v = parse_scalar(e);
      if (!v.exact) fail(ErrorKind::Input, "base_point must be rational");
      pt.push_back(*v.exact);
    }
    base = std::move(pt);
  }
  return ParsedCubic{dim, std::move(exact_form), std::move(numeric_form), std::move(base)};
}

template class HomogeneousCubic<Rational>;
template class HomogeneousCubic<Complex>;
template class TrilinearForm<Rational>;
template class TrilinearForm<Complex>;
template LineRestriction<Rational> restrict_to_line(const TrilinearForm<Rational>&, const Vec<Rational>&, const Vec<Rational>&);
template LineRestriction<Complex> restrict_to_line(const TrilinearForm<Complex>&, const Vec<Complex>&, const Vec<Complex>&);
template LineRestriction<Rational> restrict_to_line(const HomogeneousCubic<Rational>&, const Vec<Rational>&, const Vec<Rational>&);
template LineRestriction<Complex> restrict_to_line(const HomogeneousCubic<Complex>&, const Vec<Complex>&, const Vec<Complex>&);
template HomogeneousCubic<Rational> restrict_to_subspace(const TrilinearForm<Rational>&, const Mat<Rational>&);
template HomogeneousCubic<Complex> restrict_to_subspace(const TrilinearForm<Complex>&, const Mat<Complex>&);

}  // namespace cubicspray
