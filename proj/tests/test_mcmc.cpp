#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <queue>

#include "oracles.hpp"
#include "windmill/mcmc.hpp"

using namespace windmill;
using namespace windmill::testing;

namespace {

const Graph kTriangle{3, {{0, 1}, {1, 2}, {2, 0}}};
const Graph kPath2{3, {{0, 1}, {1, 2}}};

HolantInstance ones_instance(const Graph& g) {
  std::vector<SymmetricFunction> functions;
  for (int d : graph_degrees(g)) functions.push_back(make_ones(d));
  return HolantInstance(std::move(functions), g.edges);
}

std::vector<size_t> omega0_indices(const HolantInstance& inst,
                                   const TransitionMatrix& tm) {
  std::vector<size_t> out;
  for (size_t i = 0; i < tm.states.size(); ++i)
    if (disagreement_count(inst, tm.states[i]) == 0) out.push_back(i);
  return out;
}

Rational tv_distance(const std::vector<Rational>& dist,
                     const std::vector<Rational>& target) {
  Rational tv(0);
  for (size_t i = 0; i < dist.size(); ++i) {
    Rational diff = dist[i] - target[i];
    if (diff < 0) diff = -diff;
    tv += diff;
  }
  return tv / 2;
}

std::vector<Rational> advance(const TransitionMatrix& tm,
                              const std::vector<Rational>& dist) {
  std::vector<Rational> next(dist.size(), Rational(0));
  for (size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] == 0) continue;
    for (size_t j = 0; j < dist.size(); ++j)
      if (tm.rows[i][j] != 0) next[j] += dist[i] * tm.rows[i][j];
  }
  return next;
}

}  // namespace

TEST_CASE("chain state validation") {
  const HolantInstance tri = matching_instance(kTriangle, 1);
  CHECK_THROWS_AS(make_chain_state(tri, {1, 0, 0, 0, 0, 0}),
                  std::invalid_argument);  // one bad edge
  CHECK_THROWS_AS(make_chain_state(tri, {1, 1, 1, 1, 0, 0}),
                  std::invalid_argument);  // weight zero (two edges at vertex 1)
  const ChainState s = make_chain_state(tri, Bits(6, 0));
  CHECK(s.weight == 1);
  CHECK(s.disagreement == 0);
}

TEST_CASE("steps never leave the positive part of the state space") {
  const HolantInstance tri = matching_instance(kTriangle, 1);
  SplitMix64 rng(91);
  ChainState state = make_chain_state(tri, Bits(6, 0));
  for (int t = 0; t < 5000; ++t) {
    chain_step(tri, state, rng);
    CHECK(state.weight == assignment_weight(tri, state.assignment));
    CHECK(state.disagreement == disagreement_count(tri, state.assignment));
    REQUIRE((state.disagreement == 0 || state.disagreement == 2));
    REQUIRE(state.weight > 0);
  }
}

TEST_CASE("single-edge chain hits the stationary frequencies") {
  // Two states (00 and 11), each with stationary mass 1/2.
  const HolantInstance single({make_ones(1), make_ones(1)}, {{0, 1}});
  SplitMix64 rng(92);
  ChainState state = make_chain_state(single, Bits(2, 0));
  const int steps = 1000000;
  long long ones = 0;
  for (int t = 0; t < steps; ++t) {
    chain_step(single, state, rng);
    ones += state.assignment[0];
  }
  const double freq = static_cast<double>(ones) / steps;
  // three standard errors of a fair-coin mean, ignoring autocorrelation
  // slack because the chain mixes in a handful of steps
  CHECK(std::abs(freq - 0.5) < 3 * 0.0005 * 4);
}

TEST_CASE("exact transition matrix") {
  SplitMix64 rng(93);
  int checked = 0;
  while (checked < 8) {
    const HolantInstance inst = rand_windable_instance(rng, 4, 5);
    const TransitionMatrix tm = exact_transition_matrix(inst);
    if (tm.states.size() < 2) continue;
    ++checked;
    Rational stationary_total(0);
    for (size_t i = 0; i < tm.states.size(); ++i) {
      Rational row_sum(0);
      for (size_t j = 0; j < tm.states.size(); ++j) row_sum += tm.rows[i][j];
      CHECK(row_sum == 1);
      CHECK(tm.rows[i][i] >= make_fraction(1, 2));
      stationary_total += tm.stationary[i];
      // detailed balance, exactly
      for (size_t j = 0; j < tm.states.size(); ++j)
        CHECK(tm.stationary[i] * tm.rows[i][j] ==
              tm.stationary[j] * tm.rows[j][i]);
    }
    CHECK(stationary_total == 1);
    // stationarity: mu P == mu
    for (size_t j = 0; j < tm.states.size(); ++j) {
      Rational acc(0);
      for (size_t i = 0; i < tm.states.size(); ++i)
        acc += tm.stationary[i] * tm.rows[i][j];
      CHECK(acc == tm.stationary[j]);
    }
  }
}

TEST_CASE("transition graph is connected on the named fixtures") {
  for (const HolantInstance& inst :
       {matching_instance(kTriangle, 1), edge_cover_instance(kTriangle, 1),
        matching_instance(kPath2, 1), ones_instance(kPath2)}) {
    const TransitionMatrix tm = exact_transition_matrix(inst);
    REQUIRE(!tm.states.empty());
    std::vector<bool> seen(tm.states.size(), false);
    std::queue<size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    while (!frontier.empty()) {
      const size_t i = frontier.front();
      frontier.pop();
      for (size_t j = 0; j < tm.states.size(); ++j)
        if (!seen[j] && i != j && tm.rows[i][j] > 0) {
          seen[j] = true;
          frontier.push(j);
        }
    }
    for (bool s : seen) CHECK(s);
  }
}

TEST_CASE("exact TV decay is monotone and obeys the mixing bound") {
  // Fixtures small enough that the bound goes below 1 within the horizon.
  struct Fixture {
    HolantInstance inst;
    int horizon;
  };
  const std::vector<Fixture> fixtures = {
      {HolantInstance({make_ones(1), make_ones(1)}, {{0, 1}}), 150},
      {ones_instance(kPath2), 1500},
  };
  for (const auto& [inst, horizon] : fixtures) {
    const TransitionMatrix tm = exact_transition_matrix(inst);
    REQUIRE(tm.states.size() >= 2);
    Rational mu0(0);
    for (size_t i : omega0_indices(inst, tm)) mu0 += tm.stationary[i];
    const double mu0_d = mpq_get_d(mu0.get_mpq_t());
    const double n = inst.half_edge_count();
    for (size_t start = 0; start < tm.states.size(); ++start) {
      std::vector<Rational> dist(tm.states.size(), Rational(0));
      dist[start] = 1;
      Rational prev = tv_distance(dist, tm.stationary);
      const double mu_start = mpq_get_d(tm.stationary[start].get_mpq_t());
      bool bound_went_nontrivial = false;
      for (int t = 1; t <= horizon; ++t) {
        dist = advance(tm, dist);
        const Rational tv = tv_distance(dist, tm.stationary);
        CHECK(tv <= prev);
        prev = tv;
        const double bound = 0.5 / std::sqrt(mu_start) *
                             std::exp(-t * mu0_d * mu0_d / (n * n * n * n));
        if (bound < 1.0) bound_went_nontrivial = true;
        CHECK(mpq_get_d(tv.get_mpq_t()) <= bound);
      }
      CHECK(bound_went_nontrivial);
    }
  }
}

TEST_CASE("run_chain with zero steps returns the start") {
  const HolantInstance tri = matching_instance(kTriangle, 1);
  SplitMix64 rng(94);
  CHECK(run_chain(tri, Bits(6, 0), 0, rng) == Bits(6, 0));
  CHECK(default_burn_in(tri, 0.05) > 0);
  CHECK_THROWS_AS(default_burn_in(tri, 0.0), std::invalid_argument);
}

TEST_CASE("find_consistent_start") {
  CHECK(find_consistent_start(matching_instance(kTriangle, 1)) == Bits(6, 0));
  CHECK(find_consistent_start(edge_cover_instance(kTriangle, 1)).has_value());
  // exactly-one at both endpoints of a single edge: neither all-zeros nor
  // all-ones works at a degree-1 vertex... all-ones does; force a scan with
  // exact(1) of arity 2 against parallel edges
  const HolantInstance awkward(
      {make_exact(1, 2), make_exact(1, 2)}, {{0, 1}, {0, 1}});
  const auto start = find_consistent_start(awkward);
  REQUIRE(start.has_value());
  CHECK(assignment_weight(awkward, *start) > 0);
  CHECK(disagreement_count(awkward, *start) == 0);
}

TEST_CASE("trivial canonical path") {
  const HolantInstance tri = matching_instance(kTriangle, 1);
  const Bits sigma(6, 0);
  const auto z = exact_stratum_weights(tri);
  const Rational z_total = z[0] + z[2];
  const auto tuples = all_vertex_pairings(tri, sigma, sigma);
  REQUIRE(tuples.size() == 1);
  const CanonicalPath path = canonical_path(tri, sigma, sigma, tuples[0], z_total);
  CHECK(path.states.size() == 1);
  CHECK(path.flip_pairs.empty());
  CHECK(path.weight == Rational(1) / (z_total * z_total));  // weight 1 squared
}

TEST_CASE("cycle walk on the all-ones triangle") {
  const HolantInstance tri = ones_instance(kTriangle);
  const Bits sigma(6, 0);
  const Bits pi(6, 1);
  const auto z = exact_stratum_weights(tri);
  const Rational z_total = z[0] + z[2];
  const auto tuples = all_vertex_pairings(tri, sigma, pi);
  REQUIRE(tuples.size() == 1);  // each degree-2 vertex pairs its two halves
  const CanonicalPath path = canonical_path(tri, sigma, pi, tuples[0], z_total);
  CHECK(path.states.front() == sigma);
  CHECK(path.states.back() == pi);
  CHECK(path.flip_pairs.size() == 3);
  for (size_t t = 0; t + 1 < path.states.size(); ++t) {
    int ham = 0;
    for (size_t i = 0; i < path.states[t].size(); ++i)
      ham += path.states[t][i] != path.states[t + 1][i];
    CHECK(ham == 2);
    const int d = disagreement_count(tri, path.states[t]);
    CHECK((d == 0 || d == 2));
  }
}

TEST_CASE("flow identity: path weights sum to mu(sigma) mu(pi)") {
  // the paw graph gives a degree-3 vertex, so tuples with several pairings
  const Graph paw{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}};
  std::vector<HolantInstance> fixtures;
  fixtures.push_back(ones_instance(kPath2));
  fixtures.push_back(matching_instance(kTriangle, 1));
  fixtures.push_back(edge_cover_instance(kTriangle, 1));
  fixtures.push_back(HolantInstance(
      {make_at_most(2, 3), make_ones(2), make_ones(2), make_ones(1)},
      paw.edges));
  for (const HolantInstance& inst : fixtures) {
    const auto z = exact_stratum_weights(inst);
    const Rational z_total = z[0] + (z.size() > 2 ? z[2] : Rational(0));
    REQUIRE(z_total > 0);
    const int h = inst.half_edge_count();
    for (uint32_t sm = 0; sm < (1u << h); ++sm) {
      Bits sigma(static_cast<size_t>(h));
      for (int b = 0; b < h; ++b) sigma[static_cast<size_t>(b)] = (sm >> b) & 1;
      if (disagreement_count(inst, sigma) != 0) continue;
      for (uint32_t pm = 0; pm < (1u << h); ++pm) {
        Bits pi(static_cast<size_t>(h));
        for (int b = 0; b < h; ++b) pi[static_cast<size_t>(b)] = (pm >> b) & 1;
        const int d = disagreement_count(inst, pi);
        if (d != 0 && d != 2) continue;
        Rational flow(0);
        for (const VertexPairings& tuple : all_vertex_pairings(inst, sigma, pi)) {
          const CanonicalPath path =
              canonical_path(inst, sigma, pi, tuple, z_total);
          CHECK(path.states.front() == sigma);
          CHECK(path.states.back() == pi);
          flow += path.weight;
        }
        const Rational expected = assignment_weight(inst, sigma) *
                                  assignment_weight(inst, pi) /
                                  (z_total * z_total);
        CHECK(flow == expected);
      }
    }
  }
}

TEST_CASE("canonical path rejects malformed input") {
  const HolantInstance tri = ones_instance(kTriangle);
  const Bits sigma(6, 0);
  Bits one_bad(6, 0);
  one_bad[0] = 1;  // a single bad edge
  const auto tuples = all_vertex_pairings(tri, sigma, sigma);
  CHECK_THROWS_AS(canonical_path(tri, one_bad, sigma, tuples[0], Rational(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(canonical_path(tri, sigma, one_bad, tuples[0], Rational(1)),
                  std::invalid_argument);
  // wrong pairing shape: pretend vertex 0 has a pair although nothing differs
  VertexPairings bad(3);
  bad[0].pairs.emplace_back(0, 1);
  CHECK_THROWS_AS(canonical_path(tri, sigma, sigma, bad, Rational(1)),
                  std::invalid_argument);
}
