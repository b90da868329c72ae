#include "windmill/json_io.hpp"

#include <stdexcept>

namespace windmill {

Json rational_json(const Rational& value) { return to_string(value); }

Json function_json(const SymmetricFunction& f) {
  Json values = Json::array();
  for (const Rational& v : f.values()) values.push_back(to_string(v));
  return Json{{"arity", f.arity()}, {"values", std::move(values)}};
}

namespace {

long required_long(const Json& spec, const char* key) {
  if (!spec.contains(key))
    throw std::invalid_argument(std::string("function spec missing '") + key + "'");
  return spec.at(key).get<long>();
}

}  // namespace

SymmetricFunction function_from_json(const Json& spec,
                                     std::optional<int> expected_arity) {
  if (spec.contains("values")) {
    std::vector<Rational> values;
    for (const auto& item : spec.at("values"))
      values.push_back(parse_rational(item.get<std::string>()));
    SymmetricFunction f{std::move(values)};
    if (spec.contains("arity") && spec.at("arity").get<int>() != f.arity())
      throw std::invalid_argument("declared arity conflicts with values");
    if (expected_arity && f.arity() != *expected_arity)
      throw std::invalid_argument("function arity does not match vertex degree");
    return f;
  }
  const std::string kind = spec.at("kind").get<std::string>();
  int arity = 0;
  if (spec.contains("arity"))
    arity = spec.at("arity").get<int>();
  else if (expected_arity)
    arity = *expected_arity;
  else if (kind != "edgegadget")
    throw std::invalid_argument("function spec needs an arity");
  SymmetricFunction f = [&]() -> SymmetricFunction {
    if (kind == "zeros") return make_zeros(arity);
    if (kind == "ones") return make_ones(arity);
    if (kind == "even") return make_even(arity);
    if (kind == "odd") return make_odd(arity);
    if (kind == "exact") return make_exact(required_long(spec, "k"), arity);
    if (kind == "atleast") return make_at_least(required_long(spec, "k"), arity);
    if (kind == "atmost") return make_at_most(required_long(spec, "k"), arity);
    if (kind == "range")
      return make_range(required_long(spec, "a"), required_long(spec, "b"), arity);
    if (kind == "edgegadget")
      return make_edge_gadget(parse_rational(spec.at("w").get<std::string>()));
    throw std::invalid_argument("unknown function kind '" + kind + "'");
  }();
  if (expected_arity && f.arity() != *expected_arity)
    throw std::invalid_argument("function arity does not match vertex degree");
  return f;
}

Json matrix_json(const PartitionMatrix& a) {
  Json rows = Json::array();
  for (const auto& row : a.entries) {
    Json cells = Json::array();
    for (const Rational& v : row) cells.push_back(to_string(v));
    rows.push_back(std::move(cells));
  }
  return rows;
}

Json report_json(const WindabilityReport& report) {
  Json pinnings = Json::array();
  for (const PinningRecord& rec : report.pinnings) {
    Json h = Json::array();
    for (const Rational& v : rec.h) h.push_back(to_string(v));
    Json solution = Json::array();
    for (const Rational& v : rec.solution) solution.push_back(to_string(v));
    pinnings.push_back(Json{{"zeros", rec.zeros},
                            {"ones", rec.ones},
                            {"h", std::move(h)},
                            {"solution", std::move(solution)},
                            {"nonneg", rec.nonneg}});
  }
  Json out{{"function", function_json(report.function)},
           {"verdict", report.windable ? "windable" : "not-windable"},
           {"pinnings", std::move(pinnings)}};
  if (report.counterexample)
    out["counterexample"] = Json{{"zeros", report.counterexample->first},
                                 {"ones", report.counterexample->second}};
  else
    out["counterexample"] = nullptr;
  return out;
}

GraphInput graph_input_from_json(const Json& doc) {
  GraphInput input;
  if (!doc.contains("vertices") || !doc.contains("edges"))
    throw std::invalid_argument("graph JSON needs 'vertices' and 'edges'");
  const auto& vertices = doc.at("vertices");
  input.graph.vertex_count = static_cast<int>(vertices.size());
  input.vertex_function_specs.assign(vertices.size(), Json());
  std::vector<bool> seen(vertices.size(), false);
  bool any_function = false;
  for (const auto& vertex : vertices) {
    const int id = vertex.at("id").get<int>();
    if (id < 0 || id >= input.graph.vertex_count || seen[static_cast<size_t>(id)])
      throw std::invalid_argument("vertex ids must be 0..V-1, each once");
    seen[static_cast<size_t>(id)] = true;
    if (vertex.contains("function")) {
      input.vertex_function_specs[static_cast<size_t>(id)] = vertex.at("function");
      any_function = true;
    }
  }
  for (const auto& edge : doc.at("edges")) {
    if (!edge.is_array() || edge.size() != 2)
      throw std::invalid_argument("each edge must be a pair of vertex ids");
    input.graph.edges.emplace_back(edge[0].get<int>(), edge[1].get<int>());
  }
  if (!any_function) input.vertex_function_specs.clear();
  if (doc.contains("edge_weights")) {
    std::vector<Rational> weights;
    for (const auto& item : doc.at("edge_weights"))
      weights.push_back(parse_rational(item.get<std::string>()));
    if (weights.size() != input.graph.edges.size())
      throw std::invalid_argument("need one edge weight per edge");
    input.edge_weights = std::move(weights);
  }
  return input;
}

HolantInstance instance_from_graph_input(const GraphInput& input) {
  if (input.vertex_function_specs.empty())
    throw std::invalid_argument("graph JSON carries no vertex functions");
  std::vector<int> degree(static_cast<size_t>(input.graph.vertex_count), 0);
  for (const auto& [u, v] : input.graph.edges) {
    ++degree[static_cast<size_t>(u)];
    ++degree[static_cast<size_t>(v)];
  }
  std::vector<SymmetricFunction> functions;
  functions.reserve(static_cast<size_t>(input.graph.vertex_count));
  for (int v = 0; v < input.graph.vertex_count; ++v) {
    const Json& spec = input.vertex_function_specs[static_cast<size_t>(v)];
    if (spec.is_null())
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " is missing a function");
    functions.push_back(function_from_json(spec, degree[static_cast<size_t>(v)]));
  }
  return HolantInstance(std::move(functions), input.graph.edges);
}

Json count_estimate_json(const CountEstimate& est) {
  Json marginals = Json::array();
  for (const EdgeMarginal& m : est.marginals)
    marginals.push_back(Json{{"edge", m.edge},
                             {"pinned_value", m.pinned_value},
                             {"estimated_p", to_string(m.estimated_p)}});
  return Json{{"estimate", to_string(est.estimate)},
              {"estimate_double", mpq_get_d(est.estimate.get_mpq_t())},
              {"log_estimate", est.log_estimate},
              {"seed", est.seed},
              {"total_steps", est.total_steps},
              {"rejected_omega2_fraction", est.rejected_omega2_fraction},
              {"marginals", std::move(marginals)}};
}

}  // namespace windmill
