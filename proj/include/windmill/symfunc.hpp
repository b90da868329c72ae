#pragma once

#include <cstdint>
#include <vector>

#include "windmill/rational.hpp"

namespace windmill {

// Bit vector over half-edges or function inputs.
using Bits = std::vector<uint8_t>;

// A symmetric constraint on {0,1}^d: the value depends only on the Hamming
// weight of the input, stored as [f_0, f_1, ..., f_d]. Values are
// nonnegative exact rationals; instances are immutable, so they can be
// shared freely across threads.
class SymmetricFunction {
 public:
  // values[w] is the value at Hamming weight w; must be nonempty and
  // entrywise >= 0. Arity 0 (a single scalar) is allowed.
  explicit SymmetricFunction(std::vector<Rational> values);

  int arity() const { return static_cast<int>(values_.size()) - 1; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at_weight(int w) const;

  // Fixes `zeros` inputs to 0 and `ones` inputs to 1; keeps the
  // consecutive value window [f_ones .. f_{arity-zeros}].
  SymmetricFunction pin(int zeros, int ones) const;

  // Flips every input before evaluation: reverses the value list.
  SymmetricFunction complement() const;

  bool operator==(const SymmetricFunction&) const = default;

 private:
  std::vector<Rational> values_;
};

// Entrywise product; arities must match.
SymmetricFunction pointwise_product(const SymmetricFunction& f,
                                    const SymmetricFunction& g);

// Prefix [h_0 .. h_floor(m/2)] of g * complement(g). The full product is
// palindromic (h_i = h_{m-i} exactly), so the prefix carries all of it.
// Requires arity >= 1.
std::vector<Rational> complement_product_prefix(const SymmetricFunction& g);

// Named families. Out-of-range thresholds clamp to the all-zero /
// all-one function rather than erroring, which keeps pinning-driven
// enumeration simple.
SymmetricFunction make_zeros(int arity);
SymmetricFunction make_ones(int arity);
SymmetricFunction make_even(int arity);
SymmetricFunction make_odd(int arity);
SymmetricFunction make_exact(long k, int arity);
SymmetricFunction make_at_least(long k, int arity);
SymmetricFunction make_at_most(long k, int arity);
SymmetricFunction make_range(long a, long b, int arity);
// [1, 0, w]; always arity 2, w >= 0.
SymmetricFunction make_edge_gadget(const Rational& w);

}  // namespace windmill
