#pragma once

#include <utility>
#include <vector>

#include "windmill/symfunc.hpp"

namespace windmill {

struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

// A graph whose vertices carry symmetric functions over their incident
// half-edges. Edge i owns half-edges 2i (first endpoint) and 2i+1 (second
// endpoint). Parallel edges are fine; self-loops are rejected because the
// half-edge machinery assumes the two sides of an edge sit on distinct
// vertices. Instances are immutable after construction.
class HolantInstance {
 public:
  HolantInstance(std::vector<SymmetricFunction> vertex_functions,
                 std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return static_cast<int>(functions_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int half_edge_count() const { return 2 * edge_count(); }

  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const SymmetricFunction& vertex_function(int v) const;
  int half_edge_owner(int h) const;
  // Half-edges at v, ascending; defines the input order for f_v.
  const std::vector<int>& incident_half_edges(int v) const;

 private:
  std::vector<SymmetricFunction> functions_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> owner_;
  std::vector<std::vector<int>> incident_;
};

// prod_v f_v(sigma restricted to v); bits length must match.
Rational assignment_weight(const HolantInstance& inst, const Bits& bits);

// Number of edges whose two half-edges disagree.
int disagreement_count(const HolantInstance& inst, const Bits& bits);

// Exact stratum weights [Z_0, ..., Z_E] by enumerating all assignments.
// Guarded at 26 half-edges; honors WINDMILL_THREADS.
std::vector<Rational> exact_stratum_weights(const HolantInstance& inst);
Rational exact_stratum_weight(const HolantInstance& inst, int k);

// Removes edge `edge_index` and pins both endpoint functions to `value`.
// Z_0 of the result is the contribution to Z_0 of assignments giving that
// edge the pinned value.
HolantInstance pin_edge(const HolantInstance& inst, int edge_index, int value);

// Splits every edge with a degree-2 gadget vertex [1, 0, w_e]; Z_0 of the
// result is the edge-weighted partition function of the original.
HolantInstance apply_edge_weights(const HolantInstance& inst,
                                  const std::vector<Rational>& weights);

// at-most-b / at-least-b at every vertex, arity = degree.
HolantInstance matching_instance(const Graph& graph, int b);
HolantInstance edge_cover_instance(const Graph& graph, int b);

}  // namespace windmill
