#include "windmill/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace windmill {

ChainState make_chain_state(const HolantInstance& inst, const Bits& bits) {
  ChainState s;
  s.assignment = bits;
  s.weight = assignment_weight(inst, bits);
  s.disagreement = disagreement_count(inst, bits);
  if (s.disagreement != 0 && s.disagreement != 2)
    throw std::invalid_argument("chain state needs 0 or 2 bad edges");
  if (s.weight <= 0)
    throw std::invalid_argument("chain state needs positive weight");
  s.vertex_weights.assign(static_cast<size_t>(inst.vertex_count()), 0);
  for (int h = 0; h < inst.half_edge_count(); ++h)
    if (bits[static_cast<size_t>(h)])
      ++s.vertex_weights[static_cast<size_t>(inst.half_edge_owner(h))];
  return s;
}

void chain_step(const HolantInstance& inst, ChainState& state, SplitMix64& rng) {
  if (rng.coin()) return;  // lazy half
  const int n = inst.half_edge_count();
  if (n < 2) return;
  const int a = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
  const int b = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
  if (a == b) return;  // residual self-loop mass

  // Disagreement after flipping both bits. Flipping the two halves of the
  // same edge keeps that edge's status.
  int nd = state.disagreement;
  if ((a ^ 1) == b) {
    // same edge: unchanged
  } else {
    const auto toggles = [&](int h) {
      return state.assignment[static_cast<size_t>(h)] ==
                     state.assignment[static_cast<size_t>(h ^ 1)]
                 ? 1
                 : -1;
    };
    nd += toggles(a) + toggles(b);
  }
  if (nd != 0 && nd != 2) return;

  const int va = inst.half_edge_owner(a);
  const int vb = inst.half_edge_owner(b);
  const auto delta = [&](int h) {
    return state.assignment[static_cast<size_t>(h)] ? -1 : 1;
  };
  Rational ratio(1);
  if (va == vb) {
    const int old_ham = state.vertex_weights[static_cast<size_t>(va)];
    const int new_ham = old_ham + delta(a) + delta(b);
    const Rational& nv = inst.vertex_function(va).at_weight(new_ham);
    if (nv == 0) return;
    ratio = nv / inst.vertex_function(va).at_weight(old_ham);
  } else {
    const int ham_a = state.vertex_weights[static_cast<size_t>(va)];
    const int ham_b = state.vertex_weights[static_cast<size_t>(vb)];
    const Rational& nva = inst.vertex_function(va).at_weight(ham_a + delta(a));
    if (nva == 0) return;
    const Rational& nvb = inst.vertex_function(vb).at_weight(ham_b + delta(b));
    if (nvb == 0) return;
    ratio = (nva * nvb) / (inst.vertex_function(va).at_weight(ham_a) *
                           inst.vertex_function(vb).at_weight(ham_b));
  }
  if (!rng.bernoulli(ratio)) return;

  state.vertex_weights[static_cast<size_t>(va)] += delta(a);
  state.vertex_weights[static_cast<size_t>(vb)] += delta(b);
  state.assignment[static_cast<size_t>(a)] ^= 1;
  state.assignment[static_cast<size_t>(b)] ^= 1;
  state.weight *= ratio;
  state.disagreement = nd;
}

std::optional<Bits> find_consistent_start(const HolantInstance& inst) {
  const size_t n = static_cast<size_t>(inst.half_edge_count());
  for (uint8_t fill : {uint8_t{0}, uint8_t{1}}) {
    Bits bits(n, fill);
    if (assignment_weight(inst, bits) > 0) return bits;
  }
  if (inst.edge_count() <= 20) {
    // Scan consistent assignments only: one bit per edge.
    const uint64_t total = uint64_t{1} << inst.edge_count();
    for (uint64_t mask = 0; mask < total; ++mask) {
      Bits bits(n, 0);
      for (int e = 0; e < inst.edge_count(); ++e)
        if ((mask >> e) & 1) {
          bits[static_cast<size_t>(2 * e)] = 1;
          bits[static_cast<size_t>(2 * e + 1)] = 1;
        }
      if (assignment_weight(inst, bits) > 0) return bits;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

long long default_burn_in(const HolantInstance& inst, double tv_epsilon) {
  if (tv_epsilon <= 0 || tv_epsilon >= 1)
    throw std::invalid_argument("tv epsilon must lie in (0, 1)");
  const long double n = inst.half_edge_count();
  const long double m = inst.edge_count();
  const long double mu_hat = 1.0L / (1.0L + 4.0L * m * m);
  const long double t =
      std::ceil(n * n * n * n / (mu_hat * mu_hat) * std::log(2.0L / tv_epsilon));
  if (t > 9.0e18L) throw std::overflow_error("burn-in bound overflows");
  return static_cast<long long>(t);
}

Bits run_chain(const HolantInstance& inst, const Bits& start, long long steps,
               SplitMix64& rng) {
  ChainState state = make_chain_state(inst, start);
  for (long long i = 0; i < steps; ++i) chain_step(inst, state, rng);
  return state.assignment;
}

TransitionMatrix exact_transition_matrix(const HolantInstance& inst) {
  const int h = inst.half_edge_count();
  if (h > 20)
    throw std::invalid_argument("state space too large to enumerate");
  TransitionMatrix tm;
  const uint64_t total = uint64_t{1} << h;
  for (uint64_t mask = 0; mask < total; ++mask) {
    Bits bits(static_cast<size_t>(h), 0);
    for (int b = 0; b < h; ++b) bits[static_cast<size_t>(b)] = (mask >> b) & 1;
    const int d = disagreement_count(inst, bits);
    if (d != 0 && d != 2) continue;
    Rational w = assignment_weight(inst, bits);
    if (w <= 0) continue;
    tm.states.push_back(std::move(bits));
    tm.weights.push_back(std::move(w));
    if (tm.states.size() > 4096)
      throw std::invalid_argument("state space too large to enumerate");
  }
  if (tm.states.empty()) return tm;
  std::map<Bits, size_t> index;
  for (size_t i = 0; i < tm.states.size(); ++i) index[tm.states[i]] = i;

  Rational z_total(0);
  for (const Rational& w : tm.weights) z_total += w;
  tm.stationary.reserve(tm.weights.size());
  for (const Rational& w : tm.weights) tm.stationary.push_back(w / z_total);

  const Rational pair_prob =
      h >= 2 ? make_fraction(2, Integer(h) * h) : Rational(0);
  tm.rows.assign(tm.states.size(),
                 std::vector<Rational>(tm.states.size(), Rational(0)));
  for (size_t i = 0; i < tm.states.size(); ++i) {
    Rational off_diagonal(0);
    Bits probe = tm.states[i];
    for (int a = 0; a < h; ++a) {
      for (int b = a + 1; b < h; ++b) {
        probe[static_cast<size_t>(a)] ^= 1;
        probe[static_cast<size_t>(b)] ^= 1;
        auto it = index.find(probe);
        if (it != index.end()) {
          const size_t j = it->second;
          Rational accept = tm.weights[j] / tm.weights[i];
          if (accept > 1) accept = 1;
          // lazy chain: half the Metropolis kernel off the diagonal
          Rational p = pair_prob * accept / 2;
          off_diagonal += p;
          tm.rows[i][j] = std::move(p);
        }
        probe[static_cast<size_t>(a)] ^= 1;
        probe[static_cast<size_t>(b)] ^= 1;
      }
    }
    tm.rows[i][i] = Rational(1) - off_diagonal;
  }
  return tm;
}

namespace {

std::vector<int> local_disagreement(const HolantInstance& inst, int v,
                                    const Bits& z) {
  std::vector<int> out;
  const auto& inc = inst.incident_half_edges(v);
  for (size_t pos = 0; pos < inc.size(); ++pos)
    if (z[static_cast<size_t>(inc[pos])]) out.push_back(static_cast<int>(pos));
  return out;
}

}  // namespace

CanonicalPath canonical_path(const HolantInstance& inst, const Bits& sigma,
                             const Bits& pi, const VertexPairings& pairings,
                             const Rational& z_total) {
  const size_t n = static_cast<size_t>(inst.half_edge_count());
  if (sigma.size() != n || pi.size() != n)
    throw std::invalid_argument("assignment length mismatch");
  if (disagreement_count(inst, sigma) != 0)
    throw std::invalid_argument("path source must be consistent");
  const int d_pi = disagreement_count(inst, pi);
  if (d_pi != 0 && d_pi != 2)
    throw std::invalid_argument("path target must have 0 or 2 bad edges");
  if (pairings.size() != static_cast<size_t>(inst.vertex_count()))
    throw std::invalid_argument("need one pairing per vertex");

  Bits z(n, 0);
  for (size_t i = 0; i < n; ++i) z[i] = sigma[i] ^ pi[i];

  // Per-vertex pairings in global half-edge ids; singletons get paired
  // with each other in ascending order.
  std::vector<int> partner(n, -1);
  std::vector<int> singletons;
  for (int v = 0; v < inst.vertex_count(); ++v) {
    const auto local = local_disagreement(inst, v, z);
    const auto& inc = inst.incident_half_edges(v);
    const Pairing& pairing = pairings[static_cast<size_t>(v)];
    std::vector<int> covered;
    for (const auto& [a, b] : pairing.pairs) {
      if (a < 0 || b < 0 || a >= static_cast<int>(inc.size()) ||
          b >= static_cast<int>(inc.size()) || a == b)
        throw std::invalid_argument("pairing index out of range");
      const int ga = inc[static_cast<size_t>(a)];
      const int gb = inc[static_cast<size_t>(b)];
      partner[static_cast<size_t>(ga)] = gb;
      partner[static_cast<size_t>(gb)] = ga;
      covered.push_back(a);
      covered.push_back(b);
    }
    if (pairing.singleton) {
      covered.push_back(*pairing.singleton);
      singletons.push_back(inc[static_cast<size_t>(*pairing.singleton)]);
    }
    std::sort(covered.begin(), covered.end());
    if (covered != local)
      throw std::invalid_argument(
          "pairing does not partition the vertex's disagreeing half-edges");
  }
  if (singletons.size() % 2 != 0)
    throw std::logic_error("odd number of leftover singletons");
  std::sort(singletons.begin(), singletons.end());
  for (size_t i = 0; i + 1 < singletons.size(); i += 2) {
    partner[static_cast<size_t>(singletons[i])] = singletons[i + 1];
    partner[static_cast<size_t>(singletons[i + 1])] = singletons[i];
  }

  // Pair graph on the disagreeing half-edges: the chosen pairs plus the
  // own-edge link when both halves disagree. Components are cycles and at
  // most one open path (exactly one when pi has two bad edges).
  const auto edge_partner = [&](int g) -> int {
    const int other = g ^ 1;
    return z[static_cast<size_t>(other)] ? other : -1;
  };
  std::vector<int> z_nodes;
  for (size_t i = 0; i < n; ++i)
    if (z[i]) z_nodes.push_back(static_cast<int>(i));

  std::vector<uint8_t> seen(n, 0);
  std::vector<std::vector<int>> cycles;  // node walks, M-pair first
  std::vector<int> path_walk;
  for (int start : z_nodes) {
    if (seen[static_cast<size_t>(start)]) continue;
    // Find whether this component is open: walk to an endpoint first.
    int entry = start;
    {
      int cur = start, from = -1;
      while (true) {
        const int via_edge = edge_partner(cur);
        const int step = (from == -1 || from == via_edge)
                             ? partner[static_cast<size_t>(cur)]
                             : via_edge;
        if (step == -1 || step == start) break;
        from = cur;
        cur = step;
        if (cur == start) break;
      }
      entry = cur;
    }
    // Walk the component from `entry`, M-pair first.
    std::vector<int> walk;
    int cur = entry, from = -1;
    bool open = false;
    while (true) {
      walk.push_back(cur);
      seen[static_cast<size_t>(cur)] = 1;
      const int mp = partner[static_cast<size_t>(cur)];
      const int ep = edge_partner(cur);
      const int step = (from == -1 || from == ep) ? mp : ep;
      if (step == -1) {
        open = true;
        break;
      }
      if (step == entry) break;  // cycle closed
      from = cur;
      cur = step;
    }
    if (open)
      path_walk = std::move(walk);
    else
      cycles.push_back(std::move(walk));
  }
  if (!path_walk.empty() && d_pi != 2)
    throw std::logic_error("open component with a consistent target");
  if (path_walk.empty() && d_pi == 2)
    throw std::logic_error("missing open component");

  // Deterministic order: cycles by smallest half-edge, entered at that
  // half-edge's pair; the open path last, entered at its smaller endpoint.
  // Running the path first would push intermediate states to four bad
  // edges whenever cycles remain, so cycles go first.
  for (auto& cycle : cycles) {
    const auto smallest = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), smallest, cycle.end());
    // ensure the first step is the M-pair
    if (partner[static_cast<size_t>(cycle[0])] != cycle[1]) {
      std::reverse(cycle.begin() + 1, cycle.end());
    }
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  if (!path_walk.empty() && path_walk.front() > path_walk.back())
    std::reverse(path_walk.begin(), path_walk.end());

  CanonicalPath out;
  out.states.push_back(sigma);
  Bits current = sigma;
  const auto flip_walk = [&](const std::vector<int>& walk) {
    for (size_t i = 0; i + 1 < walk.size(); i += 2) {
      const int a = walk[i];
      const int b = walk[i + 1];
      current[static_cast<size_t>(a)] ^= 1;
      current[static_cast<size_t>(b)] ^= 1;
      out.flip_pairs.emplace_back(std::min(a, b), std::max(a, b));
      out.states.push_back(current);
    }
  };
  for (const auto& cycle : cycles) flip_walk(cycle);
  flip_walk(path_walk);
  if (current != pi) throw std::logic_error("path did not reach the target");

  if (z_total <= 0)
    throw std::invalid_argument("path weight needs Z_0 + Z_2 > 0");
  out.weight = Rational(1) / (z_total * z_total);
  for (int v = 0; v < inst.vertex_count(); ++v) {
    const auto& inc = inst.incident_half_edges(v);
    Bits xv(inc.size()), yv(inc.size());
    for (size_t pos = 0; pos < inc.size(); ++pos) {
      xv[pos] = sigma[static_cast<size_t>(inc[pos])];
      yv[pos] = pi[static_cast<size_t>(inc[pos])];
    }
    const auto witness = windability_witness(inst.vertex_function(v), xv, yv);
    const auto it = witness.find(pairings[static_cast<size_t>(v)]);
    if (it == witness.end())
      throw std::logic_error("pairing missing from the witness map");
    out.weight *= it->second;
  }
  return out;
}

CanonicalPath canonical_path(const HolantInstance& inst, const Bits& sigma,
                             const Bits& pi, const VertexPairings& pairings) {
  const auto z = exact_stratum_weights(inst);
  Rational z_total = z[0];
  if (z.size() > 2) z_total += z[2];
  return canonical_path(inst, sigma, pi, pairings, z_total);
}

std::vector<VertexPairings> all_vertex_pairings(const HolantInstance& inst,
                                                const Bits& sigma,
                                                const Bits& pi) {
  const size_t n = static_cast<size_t>(inst.half_edge_count());
  if (sigma.size() != n || pi.size() != n)
    throw std::invalid_argument("assignment length mismatch");
  Bits z(n, 0);
  for (size_t i = 0; i < n; ++i) z[i] = sigma[i] ^ pi[i];
  std::vector<std::vector<Pairing>> per_vertex;
  per_vertex.reserve(static_cast<size_t>(inst.vertex_count()));
  for (int v = 0; v < inst.vertex_count(); ++v)
    per_vertex.push_back(pairings_of(local_disagreement(inst, v, z)));
  std::vector<VertexPairings> out;
  VertexPairings scratch(static_cast<size_t>(inst.vertex_count()));
  const auto rec = [&](auto&& self, size_t v) -> void {
    if (v == per_vertex.size()) {
      out.push_back(scratch);
      return;
    }
    for (const Pairing& p : per_vertex[v]) {
      scratch[v] = p;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace windmill
