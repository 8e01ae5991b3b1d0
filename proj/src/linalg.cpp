#include "cubicspray/linalg.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Dense>

#include "cubicspray/errors.hpp"

namespace cubicspray {

namespace {

using MatrixXcd = Eigen::MatrixXcd;

MatrixXcd to_eigen(const Mat<Complex>& m) {
  const auto rows = static_cast<Eigen::Index>(m.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(m.front().size());
  MatrixXcd e(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) e(i, j) = m[i][j];
  return e;
}

// Each row multiplied by the lcm of its denominators.
std::vector<std::vector<mpz_class>> integer_rows(const Mat<Rational>& m) {
  std::vector<std::vector<mpz_class>> out;
  out.reserve(m.size());
  for (const auto& row : m) {
    mpz_class l = 1;
    for (const auto& e : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
    std::vector<mpz_class> r;
    r.reserve(row.size());
    for (const auto& e : row) r.push_back(e.get_num() * (l / e.get_den()));
    out.push_back(std::move(r));
  }
  return out;
}

struct BareissOutcome {
  int rank = 0;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

// Fraction-free elimination with full pivot search. Returns the pivot rows
// and columns, which index a nonzero maximal minor of the input.
BareissOutcome bareiss(std::vector<std::vector<mpz_class>> a) {
  BareissOutcome out;
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a.front().size();
  std::vector<std::size_t> row_id(m), col_id(n);
  std::iota(row_id.begin(), row_id.end(), 0);
  std::iota(col_id.begin(), col_id.end(), 0);
  mpz_class prev = 1;
  std::size_t k = 0;
  for (; k < std::min(m, n); ++k) {
    std::size_t pr = m, pc = n;
    for (std::size_t i = k; i < m && pr == m; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (a[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == m) break;
    std::swap(a[k], a[pr]);
    std::swap(row_id[k], row_id[pr]);
    if (pc != k) {
      for (auto& row : a) std::swap(row[k], row[pc]);
      std::swap(col_id[k], col_id[pc]);
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  out.rank = static_cast<int>(k);
  out.rows.assign(row_id.begin(), row_id.begin() + k);
  out.cols.assign(col_id.begin(), col_id.begin() + k);
  std::sort(out.rows.begin(), out.rows.end());
  std::sort(out.cols.begin(), out.cols.end());
  return out;
}

}  // namespace

Rational determinant(const Mat<Rational>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  // Fraction-free elimination on integer-scaled rows.
  auto a = integer_rows(m);
  mpz_class row_scale = 1;
  for (const auto& row : m) {
    mpz_class l = 1;
    for (const auto& e : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
    row_scale *= l;
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return Rational(0);
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational det(sign * a[n - 1][n - 1], row_scale);
  det.canonicalize();
  return det;
}

Complex determinant(const Mat<Complex>& m) {
  if (m.empty()) return Complex(1.0, 0.0);
  return to_eigen(m).partialPivLu().determinant();
}

RankResult span_rank(const Mat<Rational>& rows, double /*tol*/) {
  RankResult r;
  if (rows.empty()) return r;
  auto outcome = bareiss(integer_rows(rows));
  r.rank = outcome.rank;
  if (r.rank > 0) {
    Mat<Rational> sub;
    for (auto i : outcome.rows) {
      Vec<Rational> row;
      for (auto j : outcome.cols) row.push_back(rows[i][j]);
      sub.push_back(std::move(row));
    }
    r.minor = determinant(sub);
    r.minor_rows = std::move(outcome.rows);
    r.minor_cols = std::move(outcome.cols);
  }
  return r;
}

std::vector<double> singular_values(const Mat<Complex>& m) {
  if (m.empty()) return {};
  Eigen::JacobiSVD<MatrixXcd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

RankResult span_rank(const Mat<Complex>& rows, double tol) {
  RankResult r;
  if (rows.empty()) return r;
  r.singular_values = singular_values(rows);
  if (r.singular_values.empty() || r.singular_values.front() == 0.0) return r;
  const double cut = tol * r.singular_values.front();
  r.rank = static_cast<int>(std::count_if(r.singular_values.begin(), r.singular_values.end(),
                                          [cut](double s) { return s > cut; }));
  return r;
}

Mat<Complex> null_space(const Mat<Complex>& a) {
  if (a.empty()) fail(ErrorKind::Internal, "null_space of empty matrix");
  const MatrixXcd e = to_eigen(a);
  Eigen::JacobiSVD<MatrixXcd> svd(e, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = 1e-12 * (s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  const MatrixXcd& v = svd.matrixV();
  Mat<Complex> out;
  for (Eigen::Index j = rank; j < v.cols(); ++j) {
    Vec<Complex> col(static_cast<std::size_t>(v.rows()));
    for (Eigen::Index i = 0; i < v.rows(); ++i) col[i] = v(i, j);
    out.push_back(std::move(col));
  }
  return out;
}

std::optional<Vec<Rational>> solve_exact(const Mat<Rational>& a, const Vec<Rational>& b) {
  const std::size_t m = a.size();
  const std::size_t k = m == 0 ? 0 : a.front().size();
  Mat<Rational> aug(m, Vec<Rational>(k + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = a[i][j];
    aug[i][k] = b[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < k && row < m; ++col) {
    std::size_t p = row;
    while (p < m && sgn(aug[p][col]) == 0) ++p;
    if (p == m) return std::nullopt;  // rank deficient
    std::swap(aug[p], aug[row]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || sgn(aug[i][col]) == 0) continue;
      Rational f = aug[i][col] / aug[row][col];
      for (std::size_t j = col; j <= k; ++j) aug[i][j] -= f * aug[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (pivot_col.size() != k) return std::nullopt;
  for (std::size_t i = row; i < m; ++i)
    if (sgn(aug[i][k]) != 0) return std::nullopt;  // inconsistent
  Vec<Rational> x(k);
  for (std::size_t i = 0; i < k; ++i) x[pivot_col[i]] = aug[i][k] / aug[i][pivot_col[i]];
  return x;
}

template <class T>
static Mat<T> transpose_impl(const Mat<T>& m) {
  if (m.empty()) return {};
  Mat<T> t(m.front().size(), Vec<T>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Mat<Rational> transpose(const Mat<Rational>& m) { return transpose_impl(m); }
Mat<Complex> transpose(const Mat<Complex>& m) { return transpose_impl(m); }

}  // namespace cubicspray
