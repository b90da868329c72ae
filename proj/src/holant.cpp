#include "windmill/holant.hpp"

#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace windmill {

HolantInstance::HolantInstance(std::vector<SymmetricFunction> vertex_functions,
                               std::vector<std::pair<int, int>> edges)
    : functions_(std::move(vertex_functions)), edges_(std::move(edges)) {
  const int v_count = vertex_count();
  owner_.resize(static_cast<size_t>(2) * edges_.size());
  incident_.resize(static_cast<size_t>(v_count));
  for (size_t e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    if (u < 0 || u >= v_count || v < 0 || v >= v_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not supported");
    owner_[2 * e] = u;
    owner_[2 * e + 1] = v;
    incident_[static_cast<size_t>(u)].push_back(static_cast<int>(2 * e));
    incident_[static_cast<size_t>(v)].push_back(static_cast<int>(2 * e + 1));
  }
  for (int v = 0; v < v_count; ++v) {
    const auto degree = incident_[static_cast<size_t>(v)].size();
    if (functions_[static_cast<size_t>(v)].arity() != static_cast<int>(degree))
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  ": function arity does not match degree");
  }
}

const SymmetricFunction& HolantInstance::vertex_function(int v) const {
  if (v < 0 || v >= vertex_count())
    throw std::out_of_range("vertex index out of range");
  return functions_[static_cast<size_t>(v)];
}

int HolantInstance::half_edge_owner(int h) const {
  if (h < 0 || h >= half_edge_count())
    throw std::out_of_range("half-edge index out of range");
  return owner_[static_cast<size_t>(h)];
}

const std::vector<int>& HolantInstance::incident_half_edges(int v) const {
  if (v < 0 || v >= vertex_count())
    throw std::out_of_range("vertex index out of range");
  return incident_[static_cast<size_t>(v)];
}

Rational assignment_weight(const HolantInstance& inst, const Bits& bits) {
  if (bits.size() != static_cast<size_t>(inst.half_edge_count()))
    throw std::invalid_argument("assignment length mismatch");
  Rational w(1);
  for (int v = 0; v < inst.vertex_count(); ++v) {
    int ham = 0;
    for (int h : inst.incident_half_edges(v)) ham += bits[static_cast<size_t>(h)];
    const Rational& val = inst.vertex_function(v).at_weight(ham);
    if (val == 0) return Rational(0);
    w *= val;
  }
  return w;
}

int disagreement_count(const HolantInstance& inst, const Bits& bits) {
  if (bits.size() != static_cast<size_t>(inst.half_edge_count()))
    throw std::invalid_argument("assignment length mismatch");
  int d = 0;
  for (int e = 0; e < inst.edge_count(); ++e)
    if (bits[static_cast<size_t>(2 * e)] != bits[static_cast<size_t>(2 * e + 1)]) ++d;
  return d;
}

namespace {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("WINDMILL_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < hw) hw = cap;
  }
  return hw;
}

// Walks assignments [first, last) in Gray-code order, accumulating stratum
// weights. Each step flips a single bit, so per-vertex weights, the
// disagreement count and the running product update in O(1).
std::vector<Rational> stratum_sweep(const HolantInstance& inst, uint64_t first,
                                    uint64_t last) {
  const int h = inst.half_edge_count();
  std::vector<Rational> z(static_cast<size_t>(inst.edge_count()) + 1, Rational(0));
  const uint64_t start_state = first ^ (first >> 1);
  Bits bits(static_cast<size_t>(h), 0);
  for (int b = 0; b < h; ++b) bits[static_cast<size_t>(b)] = (start_state >> b) & 1;

  std::vector<int> ham(static_cast<size_t>(inst.vertex_count()), 0);
  for (int b = 0; b < h; ++b)
    if (bits[static_cast<size_t>(b)]) ++ham[static_cast<size_t>(inst.half_edge_owner(b))];
  int bad = 0;
  for (int e = 0; e < inst.edge_count(); ++e)
    if (bits[static_cast<size_t>(2 * e)] != bits[static_cast<size_t>(2 * e + 1)]) ++bad;
  int zero_vertices = 0;
  Rational prod(1);
  for (int v = 0; v < inst.vertex_count(); ++v) {
    const Rational& val = inst.vertex_function(v).at_weight(ham[static_cast<size_t>(v)]);
    if (val == 0)
      ++zero_vertices;
    else
      prod *= val;
  }

  auto visit = [&] {
    if (zero_vertices == 0) z[static_cast<size_t>(bad)] += prod;
  };
  visit();
  for (uint64_t i = first + 1; i < last; ++i) {
    const int b = std::countr_zero(i);
    const int v = inst.half_edge_owner(b);
    const Rational& old_val = inst.vertex_function(v).at_weight(ham[static_cast<size_t>(v)]);
    const int new_ham = ham[static_cast<size_t>(v)] + (bits[static_cast<size_t>(b)] ? -1 : 1);
    const Rational& new_val = inst.vertex_function(v).at_weight(new_ham);
    if (old_val != new_val) {
      if (old_val == 0)
        --zero_vertices;
      else
        prod /= old_val;
      if (new_val == 0)
        ++zero_vertices;
      else
        prod *= new_val;
    }
    ham[static_cast<size_t>(v)] = new_ham;
    const int partner = b ^ 1;
    bad += bits[static_cast<size_t>(b)] == bits[static_cast<size_t>(partner)] ? 1 : -1;
    bits[static_cast<size_t>(b)] ^= 1;
    visit();
  }
  return z;
}

}  // namespace

std::vector<Rational> exact_stratum_weights(const HolantInstance& inst) {
  const int h = inst.half_edge_count();
  if (h > 26)
    throw std::invalid_argument("instance too large for exact enumeration");
  const uint64_t total = uint64_t{1} << h;
  int workers = worker_count();
  if (total < (uint64_t{1} << 16)) workers = 1;
  if (workers == 1) return stratum_sweep(inst, 0, total);

  std::vector<std::vector<Rational>> partial(static_cast<size_t>(workers));
  std::vector<std::thread> threads;
  const uint64_t chunk = total / static_cast<uint64_t>(workers);
  for (int w = 0; w < workers; ++w) {
    const uint64_t first = chunk * static_cast<uint64_t>(w);
    const uint64_t last = w + 1 == workers ? total : first + chunk;
    threads.emplace_back([&inst, &partial, w, first, last] {
      partial[static_cast<size_t>(w)] = stratum_sweep(inst, first, last);
    });
  }
  for (auto& t : threads) t.join();
  std::vector<Rational> z(static_cast<size_t>(inst.edge_count()) + 1, Rational(0));
  for (const auto& part : partial)
    for (size_t k = 0; k < z.size(); ++k) z[k] += part[k];
  return z;
}

Rational exact_stratum_weight(const HolantInstance& inst, int k) {
  if (k < 0) throw std::invalid_argument("stratum index must be >= 0");
  if (k > inst.edge_count()) return Rational(0);
  return exact_stratum_weights(inst)[static_cast<size_t>(k)];
}

HolantInstance pin_edge(const HolantInstance& inst, int edge_index, int value) {
  if (edge_index < 0 || edge_index >= inst.edge_count())
    throw std::invalid_argument("edge index out of range");
  if (value != 0 && value != 1)
    throw std::invalid_argument("pin value must be 0 or 1");
  const auto [u, v] = inst.edges()[static_cast<size_t>(edge_index)];
  std::vector<SymmetricFunction> functions;
  functions.reserve(static_cast<size_t>(inst.vertex_count()));
  for (int w = 0; w < inst.vertex_count(); ++w) functions.push_back(inst.vertex_function(w));
  functions[static_cast<size_t>(u)] = functions[static_cast<size_t>(u)].pin(1 - value, value);
  functions[static_cast<size_t>(v)] = functions[static_cast<size_t>(v)].pin(1 - value, value);
  auto edges = inst.edges();
  edges.erase(edges.begin() + edge_index);
  return HolantInstance(std::move(functions), std::move(edges));
}

HolantInstance apply_edge_weights(const HolantInstance& inst,
                                  const std::vector<Rational>& weights) {
  if (weights.size() != static_cast<size_t>(inst.edge_count()))
    throw std::invalid_argument("need one weight per edge");
  for (const Rational& w : weights)
    if (w < 0) throw std::invalid_argument("edge weights must be >= 0");
  std::vector<SymmetricFunction> functions;
  functions.reserve(static_cast<size_t>(inst.vertex_count() + inst.edge_count()));
  for (int v = 0; v < inst.vertex_count(); ++v) functions.push_back(inst.vertex_function(v));
  std::vector<std::pair<int, int>> edges;
  edges.reserve(2 * inst.edges().size());
  for (size_t e = 0; e < inst.edges().size(); ++e) {
    const int gadget = inst.vertex_count() + static_cast<int>(e);
    functions.push_back(make_edge_gadget(weights[e]));
    edges.emplace_back(inst.edges()[e].first, gadget);
    edges.emplace_back(gadget, inst.edges()[e].second);
  }
  return HolantInstance(std::move(functions), std::move(edges));
}

namespace {

std::vector<int> degrees(const Graph& graph) {
  if (graph.vertex_count < 0) throw std::invalid_argument("negative vertex count");
  std::vector<int> deg(static_cast<size_t>(graph.vertex_count), 0);
  for (const auto& [u, v] : graph.edges) {
    if (u < 0 || u >= graph.vertex_count || v < 0 || v >= graph.vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    ++deg[static_cast<size_t>(u)];
    ++deg[static_cast<size_t>(v)];
  }
  return deg;
}

}  // namespace

HolantInstance matching_instance(const Graph& graph, int b) {
  if (b < 0) throw std::invalid_argument("b must be >= 0");
  std::vector<SymmetricFunction> functions;
  for (int deg : degrees(graph)) functions.push_back(make_at_most(b, deg));
  return HolantInstance(std::move(functions), graph.edges);
}

HolantInstance edge_cover_instance(const Graph& graph, int b) {
  if (b < 0) throw std::invalid_argument("b must be >= 0");
  std::vector<SymmetricFunction> functions;
  for (int deg : degrees(graph)) functions.push_back(make_at_least(b, deg));
  return HolantInstance(std::move(functions), graph.edges);
}

}  // namespace windmill
