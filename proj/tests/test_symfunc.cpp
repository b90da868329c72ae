#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "windmill/symfunc.hpp"

using namespace windmill;
using windmill::testing::rand_function;
using windmill::testing::rand_int;

namespace {

SymmetricFunction fn(std::initializer_list<long> values) {
  std::vector<Rational> v;
  for (long x : values) v.emplace_back(x);
  return SymmetricFunction(std::move(v));
}

}  // namespace

TEST_CASE("named families") {
  CHECK(make_at_most(1, 2) == fn({1, 1, 0}));
  CHECK(make_even(3) == fn({1, 0, 1, 0}));
  CHECK(make_odd(4) == fn({0, 1, 0, 1, 0}));
  CHECK(make_exact(2, 4) == fn({0, 0, 1, 0, 0}));
  CHECK(make_range(1, 2, 3) == fn({0, 1, 1, 0}));
  CHECK(make_edge_gadget(parse_rational("7/2")) ==
        SymmetricFunction({Rational(1), Rational(0), parse_rational("7/2")}));

  // thresholds beyond the arity clamp to all-zero / all-one
  CHECK(make_exact(5, 3) == make_zeros(3));
  CHECK(make_at_least(9, 4) == make_zeros(4));
  CHECK(make_at_most(9, 4) == make_ones(4));
  CHECK(make_range(5, 2, 3) == make_zeros(3));

  CHECK_THROWS_AS(make_ones(-1), std::invalid_argument);
  CHECK_THROWS_AS(make_at_most(-1, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_edge_gadget(Rational(-1)), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricFunction({Rational(1), Rational(-1)}),
                  std::invalid_argument);
}

TEST_CASE("pinning takes consecutive windows") {
  CHECK(fn({1, 1, 0, 0}).pin(1, 0) == fn({1, 1, 0}));
  CHECK(fn({0, 0, 1, 1, 1}).pin(1, 2) == fn({1, 1}));
  const SymmetricFunction f = fn({2, 3, 5, 7});
  CHECK(f.pin(0, 0) == f);
  CHECK(f.pin(3, 0).arity() == 0);
  CHECK_THROWS_AS(f.pin(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(f.pin(-1, 0), std::invalid_argument);
}

TEST_CASE("complement reverses") {
  CHECK(fn({1, 1, 0}).complement() == fn({0, 1, 1}));
  CHECK(fn({3, 5, 3}).complement() == fn({3, 5, 3}));
  const SymmetricFunction f({parse_rational("1/7"), Rational(1), Rational(1),
                             Rational(1)});
  CHECK(f.complement() == SymmetricFunction({Rational(1), Rational(1),
                                             Rational(1), parse_rational("1/7")}));
}

TEST_CASE("pointwise product") {
  CHECK(pointwise_product(fn({1, 1, 1, 1}), make_even(3)) == fn({1, 0, 1, 0}));
  const SymmetricFunction f = fn({2, 0, 5});
  CHECK(pointwise_product(f, make_ones(2)) == f);
  CHECK(pointwise_product(fn({0, 1, 1}), fn({1, 1, 0})) == fn({0, 1, 0}));
  CHECK_THROWS_AS(pointwise_product(fn({1, 1}), fn({1, 1, 1})),
                  std::invalid_argument);
}

TEST_CASE("complement product prefix") {
  CHECK(complement_product_prefix(fn({1, 1, 0})) ==
        std::vector<Rational>{Rational(0), Rational(1)});
  CHECK(complement_product_prefix(fn({0, 1, 1})) ==
        std::vector<Rational>{Rational(0), Rational(1)});
  CHECK(complement_product_prefix(make_ones(4)) ==
        std::vector<Rational>(3, Rational(1)));
  CHECK_THROWS_AS(complement_product_prefix(fn({5})), std::invalid_argument);
}

TEST_CASE("pinning composes additively") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int arity = rand_int(rng, 0, 8);
    const SymmetricFunction f = rand_function(rng, arity);
    const int z1 = rand_int(rng, 0, arity);
    const int o1 = rand_int(rng, 0, arity - z1);
    const int rest = arity - z1 - o1;
    const int z2 = rand_int(rng, 0, rest);
    const int o2 = rand_int(rng, 0, rest - z2);
    CHECK(f.pin(z1, o1).pin(z2, o2) == f.pin(z1 + z2, o1 + o2));
  }
}

TEST_CASE("complement is an involution and fixes the prefix") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int arity = rand_int(rng, 1, 9);
    const SymmetricFunction f = rand_function(rng, arity);
    CHECK(f.complement().complement() == f);
    CHECK(complement_product_prefix(f) ==
          complement_product_prefix(f.complement()));
  }
}

TEST_CASE("rational parsing round-trips") {
  for (const char* text : {"0", "7", "-3", "1/3", "-22/7", "5/2"}) {
    CHECK(to_string(parse_rational(text)) == text);
  }
  CHECK(parse_rational("4/6") == parse_rational("2/3"));
  CHECK(parse_rational("0.1") == parse_rational("1/10"));
  CHECK(parse_rational("-2.5") == parse_rational("-5/2"));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(7) == 105);
  CHECK(double_factorial(8) == 384);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(6, 2) == 15);
}
