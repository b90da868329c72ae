#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "windmill/counter.hpp"
#include "windmill/holant.hpp"
#include "windmill/windability.hpp"

namespace windmill {

// Insertion-ordered objects keep CLI output byte-stable.
using Json = nlohmann::ordered_json;

Json rational_json(const Rational& value);

// {"arity": d, "values": ["p/q", ...]}
Json function_json(const SymmetricFunction& f);

// Accepts the explicit {"arity", "values"} form or a named form like
// {"kind": "atmost", "k": 7, "arity": 12}. A missing arity falls back to
// expected_arity (the vertex degree).
SymmetricFunction function_from_json(const Json& spec,
                                     std::optional<int> expected_arity = {});

Json matrix_json(const PartitionMatrix& a);
Json report_json(const WindabilityReport& report);

struct GraphInput {
  Graph graph;
  std::vector<Json> vertex_function_specs;  // empty when none given
  std::optional<std::vector<Rational>> edge_weights;
};

// {"vertices":[{"id":0,"function":{...}},...],"edges":[[0,1],...],
//  "edge_weights":["2","1/3"]}; functions and edge_weights optional.
GraphInput graph_input_from_json(const Json& doc);

// Builds the instance from per-vertex function specs, validating arity
// against degree.
HolantInstance instance_from_graph_input(const GraphInput& input);

Json count_estimate_json(const CountEstimate& est);

}  // namespace windmill
