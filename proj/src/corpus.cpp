#include "cubicspray/corpus.hpp"

#include <json.hpp>

#include "cubicspray/errors.hpp"
#include "cubicspray/random.hpp"

namespace cubicspray {

CorpusSpec parse_corpus_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, std::string("malformed corpus spec: ") + e.what());
  }
  CorpusSpec s;
  try {
    s.count = j.at("count").get<int>();
    s.dim = j.at("dim").get<int>();
    s.coeff_bound = j.value("coeff_bound", 5);
    s.seed = j.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, std::string("malformed corpus spec: ") + e.what());
  }
  if (s.count < 0 || s.dim < 2 || s.coeff_bound < 1) fail(ErrorKind::Input, "corpus spec out of range");
  return s;
}

bool passes_smoothness_policy(const HomogeneousCubic<Rational>& f, const Vec<Rational>& base, std::uint64_t seed,
                              const Tolerances& tol) {
  const CubicHypersurface<Rational> exact(f, tol);
  if (!check_smooth_at(exact, ProjectivePoint<Rational>(base))) return false;
  const CubicHypersurface<Complex> X(to_complex(f), tol);
  try {
    for (int i = 0; i < 50; ++i) {
      const auto p = random_point_on_cubic(X.form(), derive_seed(seed, static_cast<std::uint64_t>(i)), tol.membership);
      if (!check_smooth_at(X, p)) return false;
      if (X.n() == 3 && i < 5) {
        const LineSet ls = lines_through(X, p, derive_seed(seed, 100 + static_cast<std::uint64_t>(i)));
        if (ls.infinite || ls.total_multiplicity() != 6) return false;
      }
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

std::vector<CorpusCubic> generate_corpus(const CorpusSpec& spec, const Tolerances& tol) {
  std::vector<CorpusCubic> out;
  const int nv = spec.dim + 2;
  constexpr int kMaxCandidatesPerCubic = 64;
  std::uint64_t candidate = 0;
  for (int k = 0; k < spec.count; ++k) {
    bool accepted = false;
    for (int tries = 1; tries <= kMaxCandidatesPerCubic && !accepted; ++tries, ++candidate) {
      Rng rng(derive_seed(spec.seed, candidate));
      std::map<Monomial, Rational> coeffs;
      for (int i = 0; i < nv; ++i)
        for (int j = i; j < nv; ++j)
          for (int l = j; l < nv; ++l) coeffs[{i, j, l}] = Rational(rng.integer(-spec.coeff_bound, spec.coeff_bound));
      Vec<Rational> base(nv);
      base[0] = 1;
      for (int i = 1; i < nv; ++i) base[i] = Rational(rng.integer(-2, 2));
      // b0 = 1, so subtracting F(b) from the x0^3 coefficient puts b on X.
      Rational fb = 0;
      for (const auto& [m, c] : coeffs) fb += c * base[m[0]] * base[m[1]] * base[m[2]];
      coeffs[{0, 0, 0}] -= fb;
      std::map<Monomial, Rational> nz;
      for (const auto& [m, c] : coeffs)
        if (sgn(c) != 0) nz[m] = c;
      if (nz.empty()) continue;
      HomogeneousCubic<Rational> f(nv, nz);
      if (!passes_smoothness_policy(f, base, derive_seed(spec.seed, 0x10000 + candidate), tol)) continue;
      out.push_back({"corpus[" + std::to_string(k) + "]", std::move(f), std::move(base), tries});
      accepted = true;
    }
    if (!accepted) fail(ErrorKind::ResampleExhausted, "corpus generation: no smooth candidate within the retry limit");
  }
  return out;
}

std::optional<Vec<Rational>> find_small_rational_point(const HomogeneousCubic<Rational>& f, int bound) {
  const int nv = f.num_vars();
  std::vector<long> digits(nv, -bound);
  // Enumerate in a fixed order; the first nonzero coordinate is kept positive.
  while (true) {
    Vec<Rational> p(nv);
    bool nonzero = false, leading_positive = true;
    for (int i = 0; i < nv; ++i) {
      p[i] = digits[i];
      if (!nonzero && digits[i] != 0) {
        nonzero = true;
        leading_positive = digits[i] > 0;
      }
    }
    if (nonzero && leading_positive && sgn(f.evaluate(p)) == 0 && !is_zero_vector(f.gradient(p))) {
      // Tangent-line sampling degenerates where every tangent line meets X
      // to order 3 (Eckardt points), so such points are passed over.
      try {
        random_point_on_cubic(f, p, 0);
        return p;
      } catch (const Error&) {
      }
    }
    int i = nv - 1;
    while (i >= 0 && digits[i] == bound) digits[i--] = -bound;
    if (i < 0) break;
    ++digits[i];
  }
  return std::nullopt;
}

}  // namespace cubicspray
