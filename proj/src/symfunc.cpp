#include "windmill/symfunc.hpp"

#include <algorithm>
#include <stdexcept>

namespace windmill {

SymmetricFunction::SymmetricFunction(std::vector<Rational> values)
    : values_(std::move(values)) {
  if (values_.empty())
    throw std::invalid_argument("symmetric function needs at least one value");
  for (const Rational& v : values_)
    if (v < 0)
      throw std::invalid_argument("symmetric function values must be >= 0");
}

const Rational& SymmetricFunction::at_weight(int w) const {
  if (w < 0 || w > arity())
    throw std::out_of_range("weight outside [0, arity]");
  return values_[static_cast<size_t>(w)];
}

SymmetricFunction SymmetricFunction::pin(int zeros, int ones) const {
  if (zeros < 0 || ones < 0)
    throw std::invalid_argument("pin counts must be nonnegative");
  if (zeros + ones > arity())
    throw std::invalid_argument("pinning more inputs than the arity");
  std::vector<Rational> sub(values_.begin() + ones,
                            values_.end() - zeros);
  return SymmetricFunction(std::move(sub));
}

SymmetricFunction SymmetricFunction::complement() const {
  std::vector<Rational> rev(values_.rbegin(), values_.rend());
  return SymmetricFunction(std::move(rev));
}

SymmetricFunction pointwise_product(const SymmetricFunction& f,
                                    const SymmetricFunction& g) {
  if (f.arity() != g.arity())
    throw std::invalid_argument("pointwise product needs equal arities");
  std::vector<Rational> out(f.values().size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = f.values()[i] * g.values()[i];
  return SymmetricFunction(std::move(out));
}

std::vector<Rational> complement_product_prefix(const SymmetricFunction& g) {
  const int m = g.arity();
  if (m < 1)
    throw std::invalid_argument("complement product prefix needs arity >= 1");
  SymmetricFunction h = pointwise_product(g, g.complement());
  for (int i = 0; i <= m / 2; ++i)
    if (h.values()[static_cast<size_t>(i)] !=
        h.values()[static_cast<size_t>(m - i)])
      throw std::logic_error("complement product is not palindromic");
  return {h.values().begin(), h.values().begin() + m / 2 + 1};
}

namespace {

int checked_arity(int arity) {
  if (arity < 0) throw std::invalid_argument("negative arity");
  return arity;
}

SymmetricFunction from_predicate(int arity, auto&& pred) {
  std::vector<Rational> v(static_cast<size_t>(checked_arity(arity)) + 1);
  for (int w = 0; w <= arity; ++w)
    v[static_cast<size_t>(w)] = pred(w) ? 1 : 0;
  return SymmetricFunction(std::move(v));
}

}  // namespace

SymmetricFunction make_zeros(int arity) {
  return from_predicate(arity, [](int) { return false; });
}

SymmetricFunction make_ones(int arity) {
  return from_predicate(arity, [](int) { return true; });
}

SymmetricFunction make_even(int arity) {
  return from_predicate(arity, [](int w) { return w % 2 == 0; });
}

SymmetricFunction make_odd(int arity) {
  return from_predicate(arity, [](int w) { return w % 2 == 1; });
}

SymmetricFunction make_exact(long k, int arity) {
  if (k < 0) throw std::invalid_argument("negative threshold");
  return from_predicate(arity, [k](int w) { return w == k; });
}

SymmetricFunction make_at_least(long k, int arity) {
  if (k < 0) throw std::invalid_argument("negative threshold");
  return from_predicate(arity, [k](int w) { return w >= k; });
}

SymmetricFunction make_at_most(long k, int arity) {
  if (k < 0) throw std::invalid_argument("negative threshold");
  return from_predicate(arity, [k](int w) { return w <= k; });
}

SymmetricFunction make_range(long a, long b, int arity) {
  return from_predicate(arity, [a, b](int w) { return a <= w && w <= b; });
}

SymmetricFunction make_edge_gadget(const Rational& w) {
  if (w < 0) throw std::invalid_argument("edge weight must be >= 0");
  return SymmetricFunction({Rational(1), Rational(0), w});
}

}  // namespace windmill
