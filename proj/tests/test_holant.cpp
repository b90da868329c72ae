#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "windmill/holant.hpp"

using namespace windmill;
using namespace windmill::testing;

namespace {

const Graph kTriangle{3, {{0, 1}, {1, 2}, {2, 0}}};

HolantInstance two_endpoint_instance(const SymmetricFunction& f) {
  return HolantInstance({f, f}, {{0, 1}});
}

}  // namespace

TEST_CASE("construction validates") {
  CHECK_THROWS_AS(HolantInstance({make_ones(2)}, {{0, 0}}),
                  std::invalid_argument);  // self-loop
  CHECK_THROWS_AS(HolantInstance({make_ones(2), make_ones(1)}, {{0, 1}}),
                  std::invalid_argument);  // arity vs degree
  CHECK_THROWS_AS(HolantInstance({make_ones(1), make_ones(1)}, {{0, 2}}),
                  std::invalid_argument);  // endpoint range
  // parallel edges are allowed
  const HolantInstance multi({make_ones(2), make_ones(2)}, {{0, 1}, {1, 0}});
  CHECK(multi.half_edge_count() == 4);
  CHECK(multi.half_edge_owner(0) == 0);
  CHECK(multi.half_edge_owner(3) == 0);
}

TEST_CASE("weights and disagreement") {
  const HolantInstance pair = two_endpoint_instance(make_at_least(1, 1));
  CHECK(assignment_weight(pair, {1, 1}) == 1);
  CHECK(assignment_weight(pair, {0, 0}) == 0);
  CHECK(disagreement_count(pair, {0, 0}) == 0);
  CHECK(disagreement_count(pair, {1, 0}) == 1);
  CHECK_THROWS_AS(assignment_weight(pair, {1}), std::invalid_argument);

  const HolantInstance tri = matching_instance(kTriangle, 1);
  CHECK(assignment_weight(tri, Bits(6, 0)) == 1);
  CHECK(disagreement_count(tri, {1, 0, 0, 1, 0, 0}) == 2);
}

TEST_CASE("brute-force stratum weights") {
  CHECK(exact_stratum_weight(matching_instance(kTriangle, 1), 0) == 4);
  CHECK(exact_stratum_weight(edge_cover_instance(kTriangle, 1), 0) == 4);

  // matches the direct filtered enumeration, stratum by stratum
  SplitMix64 rng(81);
  for (int trial = 0; trial < 12; ++trial) {
    const HolantInstance inst = rand_windable_instance(rng, 4, 5);
    const auto z = exact_stratum_weights(inst);
    for (int k = 0; k <= inst.edge_count(); ++k)
      CHECK(z[static_cast<size_t>(k)] == brute_stratum_filter(inst, k));
  }

  // degree-0 vertices multiply in as scalars
  const HolantInstance scalar({SymmetricFunction({Rational(3)})}, {});
  CHECK(exact_stratum_weights(scalar) == std::vector<Rational>{Rational(3)});

  // enumeration guard
  Graph big{2, {}};
  for (int e = 0; e < 14; ++e) big.edges.emplace_back(0, 1);
  CHECK_THROWS_AS(exact_stratum_weights(matching_instance(big, 1)),
                  std::invalid_argument);
}

TEST_CASE("edge pinning") {
  const HolantInstance tri = matching_instance(kTriangle, 1);
  CHECK(exact_stratum_weight(pin_edge(tri, 0, 1), 0) == 1);
  CHECK(exact_stratum_weight(pin_edge(tri, 0, 0), 0) == 3);

  // pinned subinstances equal restricted sums on the original
  SplitMix64 rng(82);
  for (int trial = 0; trial < 10; ++trial) {
    const HolantInstance inst = rand_windable_instance(rng, 4, 4);
    for (int e = 0; e < inst.edge_count(); ++e) {
      const Rational z0 = exact_stratum_weight(inst, 0);
      const Rational z_zero = exact_stratum_weight(pin_edge(inst, e, 0), 0);
      const Rational z_one = exact_stratum_weight(pin_edge(inst, e, 1), 0);
      CHECK(z0 == z_zero + z_one);
      CHECK(z_one == brute_stratum_filter(inst, 0, std::pair{e, 1}));
    }
  }

  // pinning every edge along a consistent assignment telescopes to a weight
  const HolantInstance path = matching_instance({3, {{0, 1}, {1, 2}}}, 1);
  HolantInstance reduced = pin_edge(pin_edge(path, 0, 1), 0, 0);
  CHECK(reduced.edge_count() == 0);
  Rational scalar(1);
  for (int v = 0; v < reduced.vertex_count(); ++v)
    scalar *= reduced.vertex_function(v).at_weight(0);
  CHECK(scalar == assignment_weight(path, {1, 1, 0, 0}));

  CHECK_THROWS_AS(pin_edge(tri, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(pin_edge(tri, 0, 2), std::invalid_argument);
}

TEST_CASE("edge weight gadget") {
  SplitMix64 rng(83);
  for (int trial = 0; trial < 8; ++trial) {
    const HolantInstance inst = rand_windable_instance(rng, 4, 4);
    const std::vector<Rational> unit(static_cast<size_t>(inst.edge_count()),
                                     Rational(1));
    CHECK(exact_stratum_weight(apply_edge_weights(inst, unit), 0) ==
          exact_stratum_weight(inst, 0));
  }

  const HolantInstance single = two_endpoint_instance(make_at_least(1, 1));
  CHECK(exact_stratum_weight(apply_edge_weights(single, {Rational(5)}), 0) == 5);

  const HolantInstance tri = matching_instance(kTriangle, 1);
  const std::vector<Rational> twos(3, Rational(2));
  CHECK(exact_stratum_weight(apply_edge_weights(tri, twos), 0) == 7);

  CHECK_THROWS_AS(apply_edge_weights(tri, {Rational(1)}), std::invalid_argument);
  CHECK_THROWS_AS(apply_edge_weights(tri, {Rational(1), Rational(-1), Rational(1)}),
                  std::invalid_argument);
}

TEST_CASE("stratum and ratio bounds on random instances") {
  SplitMix64 rng(84);
  int checked = 0;
  while (checked < 25) {
    const bool matching = rng.coin();
    const Graph g = rand_graph(rng, 5, 7);
    const int b = matching ? rand_int(rng, 1, 3) : rand_int(rng, 1, 2);
    HolantInstance inst = matching ? matching_instance(g, b)
                                   : edge_cover_instance(g, b);
    const auto z = exact_stratum_weights(inst);
    if (z[0] <= 0) continue;
    ++checked;
    const Rational z2 = z.size() > 2 ? z[2] : Rational(0);
    const Rational z4 = z.size() > 4 ? z[4] : Rational(0);
    const Rational n(static_cast<long>(g.edges.size()));
    CHECK(z2 / z[0] <= Rational(4) * n * n);
    CHECK(z[0] * z4 <= z2 * z2);
  }
}
