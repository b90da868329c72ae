#include "windmill/rng.hpp"

#include <stdexcept>

namespace windmill {

uint64_t SplitMix64::mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t SplitMix64::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return draw % bound;
}

bool SplitMix64::coin() { return next() & 1; }

bool SplitMix64::bernoulli(const Rational& p) {
  if (p >= 1) return true;
  if (p <= 0) return false;
  // Accept iff draw < floor(p * 2^64), exact integer comparison.
  Integer threshold = p.get_num() << 64;
  threshold /= p.get_den();
  const uint64_t r = next();
  Integer draw(0);
  mpz_import(draw.get_mpz_t(), 1, 1, sizeof(uint64_t), 0, 0, &r);
  return draw < threshold;
}

}  // namespace windmill
