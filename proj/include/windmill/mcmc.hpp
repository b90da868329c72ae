#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "windmill/holant.hpp"
#include "windmill/rng.hpp"
#include "windmill/windability.hpp"

namespace windmill {

// State of the lazy Metropolis walk on the union of the consistent and
// two-bad-edge strata. Weight, disagreement and per-vertex Hamming weights
// stay cached and consistent with the assignment.
struct ChainState {
  Bits assignment;
  Rational weight;
  int disagreement = 0;
  std::vector<int> vertex_weights;
};

// Validates disagreement in {0, 2} and weight > 0.
ChainState make_chain_state(const HolantInstance& inst, const Bits& bits);

// One lazy step: hold with probability 1/2, otherwise propose flipping an
// unordered pair of distinct half-edges (each specific pair with
// probability 2/n^2, n = half-edge count) and Metropolis-accept within the
// positive-weight part of the state space.
void chain_step(const HolantInstance& inst, ChainState& state, SplitMix64& rng);

// All-zeros, then all-ones, then (small instances) an enumeration scan.
std::optional<Bits> find_consistent_start(const HolantInstance& inst);

// ceil(n^4 / mu_hat^2 * ln(2/tv_epsilon)) with n the half-edge count and
// mu_hat the 1/(1 + 4 m^2) stationary-mass lower bound (m = edge count).
// Deliberately conservative; callers usually override.
long long default_burn_in(const HolantInstance& inst, double tv_epsilon);

Bits run_chain(const HolantInstance& inst, const Bits& start, long long steps,
               SplitMix64& rng);

// Exact kernel over the enumerated positive-weight states, plus the
// stationary distribution w / (Z_0 + Z_2).
struct TransitionMatrix {
  std::vector<Bits> states;  // sorted; disagreement in {0, 2}, weight > 0
  std::vector<Rational> weights;
  std::vector<Rational> stationary;
  std::vector<std::vector<Rational>> rows;
};

// Guarded: at most 20 half-edges and 4096 states.
TransitionMatrix exact_transition_matrix(const HolantInstance& inst);

// One pairing per vertex, over the local indices (positions in the
// vertex's incidence list) of its disagreeing half-edges.
using VertexPairings = std::vector<Pairing>;

struct CanonicalPath {
  std::vector<Bits> states;                    // sigma .. pi
  std::vector<std::pair<int, int>> flip_pairs; // global half-edge pairs
  Rational weight;
};

// Builds the flow path from sigma (consistent) to pi (at most two bad
// edges) induced by the given per-vertex pairings: leftover singletons are
// paired in half-edge order, the pair graph decomposes into cycles plus at
// most one open path, and pairs are flipped cycle by cycle with the open
// path last so every intermediate state stays inside the chain's state
// space. Path weight is prod_v B_v(sigma|v, pi|v, M_v) / z_total^2.
CanonicalPath canonical_path(const HolantInstance& inst, const Bits& sigma,
                             const Bits& pi, const VertexPairings& pairings,
                             const Rational& z_total);

// Convenience overload: computes z_total = Z_0 + Z_2 by enumeration.
CanonicalPath canonical_path(const HolantInstance& inst, const Bits& sigma,
                             const Bits& pi, const VertexPairings& pairings);

// Every tuple of per-vertex pairings for the disagreement of sigma and pi.
std::vector<VertexPairings> all_vertex_pairings(const HolantInstance& inst,
                                                const Bits& sigma,
                                                const Bits& pi);

}  // namespace windmill
