#pragma once

#include <cstdint>

#include "windmill/rational.hpp"

namespace windmill {

// SplitMix64: every draw hashes an advancing 64-bit counter, so runs are
// reproducible from the seed and independent substreams are cheap to derive
// with mix().
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next();
  // Uniform in [0, bound); unbiased via rejection. bound must be > 0.
  uint64_t below(uint64_t bound);
  bool coin();
  // True with probability min(1, max(0, p)), discretized at one part in 2^64.
  bool bernoulli(const Rational& p);

  static uint64_t mix(uint64_t x);

 private:
  uint64_t state_;
};

}  // namespace windmill
