#pragma once

#include <random>

#include "openchain/scalar.hpp"

namespace openchain {

// Deterministic sampler for randomized property suites. Small numerators and
// denominators keep exact arithmetic fast while exercising generic points.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  // Nonzero rational with |num| <= 9, 1 <= den <= 9.
  Rational nonzero() {
    long num = pick(1, 9) * sign();
    return Rational(num, pick(1, 9));
  }

  // Any small rational, zero included.
  Rational any() {
    long num = pick(0, 9) * sign();
    return Rational(num, pick(1, 9));
  }

  Rational positive() { return Rational(pick(1, 9), pick(1, 9)); }

  long integer(long lo, long hi) { return pick(lo, hi); }

  std::mt19937_64& engine() { return rng_; }

 private:
  long pick(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng_);
  }
  long sign() { return pick(0, 1) ? 1 : -1; }

  std::mt19937_64 rng_;
};

}  // namespace openchain
