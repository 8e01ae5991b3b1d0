#pragma once

#include <cstdint>

#include "cubicspray/scalar.hpp"

namespace cubicspray {

/// splitmix64 stream. Every sampler takes an explicit seed; there is no global state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();                 // [0, 1)
  double normal();                  // standard normal (Box-Muller)
  long integer(long lo, long hi);   // inclusive range
  Complex complex_normal();

  Vec<Complex> complex_vector(std::size_t n);
  Vec<Rational> integer_vector(std::size_t n, long lo, long hi);

 private:
  std::uint64_t state_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace cubicspray
