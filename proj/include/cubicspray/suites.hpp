#pragma once
// Randomized invariant suites behind `cubicspray suite`. Every trial draws
// from its own derived seed, so reports do not depend on thread scheduling.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubicspray/json_io.hpp"

namespace cubicspray {

struct SuiteInput {
  std::string label;
  json spec;  // the cubic document
  std::optional<HomogeneousCubic<Rational>> exact;
  HomogeneousCubic<Complex> numeric;
  std::optional<Vec<Rational>> base_point;  // smooth rational point, needed by rational sampling
};

/// Wraps a parsed document; searches small integer points when it has no base point.
SuiteInput make_suite_input(std::string label, const json& spec);

struct SuiteOptions {
  std::string suite = "all";
  int trials = 20;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::optional<Backend> backend;  // unset: rational where an exact form and a rational point exist
  unsigned threads = 0;            // 0: hardware concurrency
};

const std::vector<std::string>& suite_names();

/// Runs one suite (or "all") over the inputs, trial i on input i mod count.
json run_suite(const std::vector<SuiteInput>& inputs, const SuiteOptions& opts);

/// 0 when every record passed, 1 otherwise.
int report_exit_code(const json& report);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace cubicspray
