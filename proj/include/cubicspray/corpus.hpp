#pragma once
// Seeded corpus of cubics that pass the point-local smoothness policy.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubicspray/cubic_geom.hpp"

namespace cubicspray {

struct CorpusSpec {
  int count = 0;
  int dim = 3;
  int coeff_bound = 5;
  std::uint64_t seed = 0;
};

/// {"count": k, "dim": n, "coeff_bound": b, "seed": s}
CorpusSpec parse_corpus_spec(std::string_view text);

struct CorpusCubic {
  std::string label;
  HomogeneousCubic<Rational> form;
  Vec<Rational> base_point;  // rational point of X, first coordinate 1
  int candidates_tried = 0;
};

/// Smooth at 50 sampled complex points and, for n = 3, finitely many lines
/// through 5 sampled points.
bool passes_smoothness_policy(const HomogeneousCubic<Rational>& f, const Vec<Rational>& base, std::uint64_t seed,
                              const Tolerances& tol = {});

/// Random coefficients in [-b, b]; a rational point with first coordinate 1 and
/// entries in [-2, 2] is planted by correcting the x0^3 coefficient.
std::vector<CorpusCubic> generate_corpus(const CorpusSpec& spec, const Tolerances& tol = {});

/// A smooth rational point of X with integer entries in [-bound, bound] from
/// which tangent-line sampling produces new points.
std::optional<Vec<Rational>> find_small_rational_point(const HomogeneousCubic<Rational>& f, int bound = 2);

}  // namespace cubicspray
