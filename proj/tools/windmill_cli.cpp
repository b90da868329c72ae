// Batch front end over the windmill library: exact pairing matrices,
// windability certificates, brute-force oracles, chain sampling, FPRAS
// counting, and built-in invariant suites. All output is JSON with fixed
// key order; exit codes are 0 (success / windable), 1 (negative verdict or
// failed suite), 2 (usage or runtime error).

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "windmill/counter.hpp"
#include "windmill/json_io.hpp"
#include "windmill/mcmc.hpp"

namespace {

using namespace windmill;

void emit(const std::string& output_path, const std::string& text) {
  if (output_path.empty() || output_path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw std::runtime_error("cannot open output file " + output_path);
  out << text << "\n";
}

Json load_json(const std::string& input_path) {
  if (input_path.empty()) throw std::runtime_error("--input is required");
  std::ifstream in(input_path);
  if (!in) throw std::runtime_error("cannot open input file " + input_path);
  return Json::parse(in);
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) out.push_back(parse_rational(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) out.push_back(std::stoi(item));
  return out;
}

SymmetricFunction function_from_flags(const std::string& kind,
                                      const std::string& values_csv, long k,
                                      long a, long b, const std::string& w,
                                      int arity) {
  if (!values_csv.empty()) return SymmetricFunction(parse_rational_list(values_csv));
  Json spec;
  spec["kind"] = kind;
  spec["arity"] = arity;
  if (kind == "exact" || kind == "atleast" || kind == "atmost") spec["k"] = k;
  if (kind == "range") {
    spec["a"] = a;
    spec["b"] = b;
  }
  if (kind == "edgegadget") spec["w"] = w;
  return function_from_json(spec);
}

struct LoadedProblem {
  HolantInstance instance;                       // possibly weight-transformed
  Graph graph;                                   // original graph
  std::optional<std::vector<Rational>> weights;  // original edge weights
  std::string problem;
};

LoadedProblem load_problem(const std::string& input_path,
                           const std::string& problem, int b,
                           const std::string& weights_csv) {
  const GraphInput input = graph_input_from_json(load_json(input_path));
  std::optional<std::vector<Rational>> weights = input.edge_weights;
  if (!weights_csv.empty()) {
    auto parsed = parse_rational_list(weights_csv);
    if (parsed.size() != input.graph.edges.size())
      throw std::runtime_error("--weights needs one value per edge");
    weights = std::move(parsed);
  }
  HolantInstance base = [&] {
    if (problem == "matching") return matching_instance(input.graph, b);
    if (problem == "edgecover") return edge_cover_instance(input.graph, b);
    if (problem == "holant") return instance_from_graph_input(input);
    throw std::runtime_error("unknown problem '" + problem + "'");
  }();
  HolantInstance inst = weights ? apply_edge_weights(base, *weights) : std::move(base);
  return {std::move(inst), input.graph, std::move(weights), problem};
}

int cmd_matrix(int m, const std::string& output) {
  emit(output, matrix_json(pairing_count_matrix(m)).dump());
  return 0;
}

int cmd_windcheck(const SymmetricFunction& f, const std::string& output) {
  const WindabilityReport report = check_windable(f);
  emit(output, report_json(report).dump());
  return report.windable ? 0 : 1;
}

int cmd_oracle(const LoadedProblem& problem, const std::vector<int>& ks,
               const std::string& output) {
  const auto z = exact_stratum_weights(problem.instance);
  Json z_json = Json::object();
  for (int k : ks) {
    if (k < 0) throw std::runtime_error("stratum index must be >= 0");
    const Rational value =
        k < static_cast<int>(z.size()) ? z[static_cast<size_t>(k)] : Rational(0);
    z_json[std::to_string(k)] = to_string(value);
  }
  Json out{{"Z", std::move(z_json)}};
  const bool wants_ratio =
      std::count(ks.begin(), ks.end(), 0) && std::count(ks.begin(), ks.end(), 2);
  if (wants_ratio && z[0] > 0) {
    const Rational ratio = (z.size() > 2 ? z[2] : Rational(0)) / z[0];
    out["z2_over_z0"] = to_string(ratio);
    const Rational n(static_cast<long>(problem.graph.edges.size()));
    std::optional<Rational> bound;
    if (!problem.weights) {
      if (problem.problem != "holant") bound = Rational(4) * n * n;
    } else if (!problem.weights->empty() && problem.problem != "holant") {
      Rational lo = (*problem.weights)[0], hi = (*problem.weights)[0];
      for (const Rational& w : *problem.weights) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
      if (problem.problem == "matching")
        bound = Rational(16) * n * n * hi * hi;
      else if (lo > 0)
        bound = Rational(16) * n * n / (lo * lo);
    }
    if (bound) {
      out["ratio_bound"] = to_string(*bound);
      out["bound_ok"] = ratio <= *bound;
    }
  }
  emit(output, out.dump());
  return 0;
}

int cmd_count(const std::string& input, const std::string& problem, int b,
              const std::string& epsilon, double delta, uint64_t seed,
              long long samples, long long burn_in, const std::string& weights_csv,
              bool exact_marginals, const std::string& output) {
  const GraphInput graph_input = graph_input_from_json(load_json(input));
  std::optional<std::vector<Rational>> weights = graph_input.edge_weights;
  if (!weights_csv.empty()) {
    auto parsed = parse_rational_list(weights_csv);
    if (parsed.size() != graph_input.graph.edges.size())
      throw std::runtime_error("--weights needs one value per edge");
    weights = std::move(parsed);
  }
  const Rational eps = parse_rational(epsilon);
  const MarginalSource source =
      exact_marginals ? MarginalSource::ExactOracle : MarginalSource::Mcmc;
  const CountEstimate est = [&] {
    if (problem == "matching")
      return count_b_matching(graph_input.graph, b, weights, eps, delta, seed,
                              samples, burn_in, source);
    if (problem == "edgecover")
      return count_b_edge_cover(graph_input.graph, b, weights, eps, delta, seed,
                                samples, burn_in, source);
    throw std::runtime_error("count supports problems 'matching' and 'edgecover'");
  }();
  Json out = count_estimate_json(est);
  out["epsilon"] = epsilon;
  out["delta"] = delta;
  // Attach the exact value when the instance is small enough to enumerate.
  const HolantInstance base = problem == "matching"
                                  ? matching_instance(graph_input.graph, b)
                                  : edge_cover_instance(graph_input.graph, b);
  const HolantInstance full = weights ? apply_edge_weights(base, *weights) : base;
  if (full.half_edge_count() <= 20)
    out["oracle"] = to_string(exact_stratum_weight(full, 0));
  emit(output, out.dump());
  return 0;
}

int cmd_sample(const LoadedProblem& problem, uint64_t seed, long long burn_in,
               const std::string& trajectory_path, bool diagnostics,
               const std::string& output) {
  const HolantInstance& inst = problem.instance;
  const auto start = find_consistent_start(inst);
  if (!start) throw std::runtime_error("no positive-weight consistent start state");
  const long long steps = burn_in >= 0 ? burn_in : default_burn_in(inst, 0.05);

  SplitMix64 rng(seed);
  ChainState state = make_chain_state(inst, *start);
  std::ofstream trajectory;
  if (!trajectory_path.empty()) {
    trajectory.open(trajectory_path);
    if (!trajectory)
      throw std::runtime_error("cannot open trajectory file " + trajectory_path);
  }
  const auto bits_hex = [](const Bits& bits) {
    std::string hex;
    for (size_t i = 0; i < bits.size(); i += 4) {
      int nibble = 0;
      for (size_t j = 0; j < 4 && i + j < bits.size(); ++j)
        nibble |= bits[i + j] << j;
      hex += "0123456789abcdef"[nibble];
    }
    return hex;
  };
  for (long long t = 0; t < steps; ++t) {
    chain_step(inst, state, rng);
    if (trajectory.is_open())
      trajectory << Json{{"step", t + 1},
                         {"assignment", bits_hex(state.assignment)},
                         {"weight", to_string(state.weight)}}
                        .dump()
                 << "\n";
  }

  Json out{{"assignment", bits_hex(state.assignment)},
           {"weight", to_string(state.weight)},
           {"disagreement", state.disagreement},
           {"steps", steps},
           {"seed", seed}};
  if (diagnostics) {
    const TransitionMatrix tm = exact_transition_matrix(inst);
    bool stationary_ok = true;
    for (size_t j = 0; j < tm.states.size(); ++j) {
      Rational acc(0);
      for (size_t i = 0; i < tm.states.size(); ++i)
        acc += tm.stationary[i] * tm.rows[i][j];
      if (acc != tm.stationary[j]) stationary_ok = false;
    }
    bool balance_ok = true;
    for (size_t i = 0; i < tm.states.size(); ++i)
      for (size_t j = 0; j < tm.states.size(); ++j)
        if (tm.stationary[i] * tm.rows[i][j] != tm.stationary[j] * tm.rows[j][i])
          balance_ok = false;
    // TV decay from the worst (lightest) start state, exact distribution.
    size_t start_idx = 0;
    for (size_t i = 0; i < tm.states.size(); ++i)
      if (tm.stationary[i] < tm.stationary[start_idx]) start_idx = i;
    std::vector<Rational> dist(tm.states.size(), Rational(0));
    dist[start_idx] = 1;
    Json tv_curve = Json::array();
    for (int t = 1; t <= 32; ++t) {
      std::vector<Rational> next(tm.states.size(), Rational(0));
      for (size_t i = 0; i < tm.states.size(); ++i) {
        if (dist[i] == 0) continue;
        for (size_t j = 0; j < tm.states.size(); ++j)
          next[j] += dist[i] * tm.rows[i][j];
      }
      dist = std::move(next);
      if ((t & (t - 1)) == 0) {  // powers of two
        Rational tv(0);
        for (size_t i = 0; i < tm.states.size(); ++i) {
          Rational diff = dist[i] - tm.stationary[i];
          if (diff < 0) diff = -diff;
          tv += diff;
        }
        tv /= 2;
        tv_curve.push_back(Json::array({t, to_string(tv)}));
      }
    }
    out["diagnostics"] = Json{
        {"states", tm.states.size()},
        {"stationary_check", stationary_ok ? "exact-pass" : "fail"},
        {"detailed_balance", balance_ok ? "exact-pass" : "fail"},
        {"tv_curve", std::move(tv_curve)}};
  }
  emit(output, out.dump());
  return 0;
}

// Small built-in instances for the verify suites.
std::vector<std::pair<std::string, HolantInstance>> bundled_fixtures() {
  std::vector<std::pair<std::string, HolantInstance>> fixtures;
  const Graph single{2, {{0, 1}}};
  const Graph path2{3, {{0, 1}, {1, 2}}};
  const Graph triangle{3, {{0, 1}, {1, 2}, {2, 0}}};
  const Graph k4{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  fixtures.emplace_back("single-edge", matching_instance(single, 1));
  fixtures.emplace_back("path2-matching", matching_instance(path2, 1));
  fixtures.emplace_back("triangle-matching", matching_instance(triangle, 1));
  fixtures.emplace_back("triangle-cover", edge_cover_instance(triangle, 1));
  fixtures.emplace_back("k4-matching2", matching_instance(k4, 2));
  fixtures.emplace_back("k4-cover2", edge_cover_instance(k4, 2));
  return fixtures;
}

int cmd_verify(const std::string& suite, const std::string& output) {
  std::vector<std::pair<std::string, bool>> results;
  const bool all = suite == "all";

  if (all || suite == "rowsums") {
    bool ok = true;
    for (int m = 1; m <= 14; ++m) {
      const PartitionMatrix a = pairing_count_matrix(m);
      const Rational expected(double_factorial(2L * ((m - 1) / 2) + 1));
      for (const auto& row : a.entries) {
        Rational sum(0);
        for (const Rational& v : row) sum += v;
        if (sum != expected) ok = false;
      }
    }
    results.emplace_back("rowsums m<=14", ok);
  }
  if (all || suite == "com") {
    bool ok = true;
    for (int n = 2; n <= 30; ++n)
      for (int m = 1; m < n; ++m)
        if (!alternating_binomial_sum_is_zero(m, n)) ok = false;
    results.emplace_back("com identity n<=30", ok);
  }
  if (all || suite == "pdecom") {
    bool ok = true;
    for (int m = 2; m <= 12; m += 2) {
      const PartitionMatrix big = pairing_count_matrix(m);
      const PartitionMatrix small = pairing_count_matrix(m - 1);
      const int n = big.n;
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j) {
          if ((i - j) % 2 != 0) continue;
          const auto small_at = [&](int r, int c) {
            if (r < 0 || c < 0 || r >= n || c >= n) return Rational(0);
            return small.entries[static_cast<size_t>(r)][static_cast<size_t>(c)];
          };
          if (i < n &&
              big.entries[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                  small_at(i, j - 1) + small_at(i, j))
            ok = false;
          if (i > 0 &&
              big.entries[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                  small_at(i - 1, j - 1) + small_at(i - 1, j))
            ok = false;
        }
    }
    results.emplace_back("pdecom relation m<=12", ok);
  }
  if (all || suite == "detailed-balance") {
    bool ok = true;
    for (const auto& [name, inst] : bundled_fixtures()) {
      const TransitionMatrix tm = exact_transition_matrix(inst);
      for (size_t i = 0; i < tm.states.size() && ok; ++i) {
        Rational row_sum(0);
        for (size_t j = 0; j < tm.states.size(); ++j) {
          row_sum += tm.rows[i][j];
          if (tm.stationary[i] * tm.rows[i][j] != tm.stationary[j] * tm.rows[j][i])
            ok = false;
        }
        if (row_sum != 1) ok = false;
        if (tm.rows[i][i] < make_fraction(1, 2)) ok = false;
      }
    }
    results.emplace_back("detailed balance on fixtures", ok);
  }
  if (all || suite == "z2bound") {
    bool ok = true;
    for (const auto& [name, inst] : bundled_fixtures()) {
      const auto z = exact_stratum_weights(inst);
      const Rational z0 = z[0];
      const Rational z2 = z.size() > 2 ? z[2] : Rational(0);
      const Rational z4 = z.size() > 4 ? z[4] : Rational(0);
      if (z0 * z4 > z2 * z2) ok = false;
      const Rational n(static_cast<long>(inst.edge_count()));
      if (z0 > 0 && z2 / z0 > Rational(4) * n * n) ok = false;
    }
    results.emplace_back("Z0*Z4 <= Z2^2 and Z2/Z0 <= 4n^2 on fixtures", ok);
  }
  if (results.empty()) throw std::runtime_error("unknown suite '" + suite + "'");

  std::string table;
  bool all_ok = true;
  for (const auto& [name, ok] : results) {
    table += name + ": " + (ok ? "pass" : "FAIL") + "\n";
    all_ok = all_ok && ok;
  }
  if (!table.empty()) table.pop_back();
  emit(output, table);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"windmill: windability certificates and FPRAS counting"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --output after the subcommand name

  std::string output;
  app.add_option("--output", output, "output file (default stdout)")->capture_default_str();

  // matrix
  auto* matrix = app.add_subcommand("matrix", "print the pairing-count matrix");
  int matrix_m = 0;
  matrix->add_option("--m", matrix_m, "ball count m >= 1")->required();

  // windcheck
  auto* windcheck = app.add_subcommand("windcheck", "certify or refute windability");
  std::string wc_kind = "atmost", wc_values, wc_w = "1";
  long wc_k = 0, wc_a = 0, wc_b = 0;
  int wc_arity = 0;
  windcheck->add_option("--kind", wc_kind,
                        "zeros|ones|even|odd|exact|atleast|atmost|range|edgegadget");
  windcheck->add_option("--k", wc_k, "threshold for exact/atleast/atmost");
  windcheck->add_option("--a", wc_a, "range lower bound");
  windcheck->add_option("--b", wc_b, "range upper bound");
  windcheck->add_option("--w", wc_w, "edge gadget weight");
  windcheck->add_option("--arity", wc_arity, "function arity");
  windcheck->add_option("--values", wc_values, "explicit values, e.g. \"3,1,1,1,1\"");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact stratum weights by enumeration");
  std::string or_input, or_problem = "matching", or_klist = "0", or_weights;
  int or_b = 1;
  oracle->add_option("--input", or_input, "graph JSON file")->required();
  oracle->add_option("--problem", or_problem, "matching|edgecover|holant");
  oracle->add_option("--b", or_b, "b for matching/edgecover");
  oracle->add_option("--k", or_klist, "comma-separated stratum indices");
  oracle->add_option("--weights", or_weights, "comma-separated edge weights");

  // count
  auto* count = app.add_subcommand("count", "FPRAS estimate of Z0");
  std::string ct_input, ct_problem = "matching", ct_epsilon = "1/10", ct_weights;
  int ct_b = 1;
  double ct_delta = 0.05;
  uint64_t ct_seed = 0;
  long long ct_samples = 0, ct_burn = -1;
  bool ct_exact = false;
  count->add_option("--input", ct_input, "graph JSON file")->required();
  count->add_option("--problem", ct_problem, "matching|edgecover");
  count->add_option("--b", ct_b, "b");
  count->add_option("--epsilon", ct_epsilon, "relative error target");
  count->add_option("--delta", ct_delta, "failure probability");
  count->add_option("--seed", ct_seed, "RNG seed");
  count->add_option("--samples", ct_samples, "samples per marginal (0: default)");
  count->add_option("--burn-in", ct_burn, "burn-in steps (-1: default bound)");
  count->add_option("--weights", ct_weights, "comma-separated edge weights");
  count->add_flag("--exact-marginals", ct_exact,
                  "use exact enumeration for the marginals");

  // sample
  auto* sample = app.add_subcommand("sample", "run the chain and dump a sample");
  std::string sm_input, sm_problem = "holant", sm_weights, sm_trajectory;
  int sm_b = 1;
  uint64_t sm_seed = 0;
  long long sm_burn = -1;
  bool sm_diagnostics = false;
  sample->add_option("--input", sm_input, "graph JSON file")->required();
  sample->add_option("--problem", sm_problem, "matching|edgecover|holant");
  sample->add_option("--b", sm_b, "b for matching/edgecover");
  sample->add_option("--seed", sm_seed, "RNG seed");
  sample->add_option("--burn-in", sm_burn, "steps (-1: default bound)");
  sample->add_option("--weights", sm_weights, "comma-separated edge weights");
  sample->add_option("--trajectory", sm_trajectory, "NDJSON trajectory dump file");
  sample->add_flag("--diagnostics", sm_diagnostics,
                   "exact stationarity / balance / TV diagnostics");

  // verify
  auto* verify = app.add_subcommand("verify", "run a named invariant suite");
  std::string vf_suite = "all";
  verify->add_option("--suite", vf_suite,
                     "rowsums|com|pdecom|detailed-balance|z2bound|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (matrix->parsed()) return cmd_matrix(matrix_m, output);
    if (windcheck->parsed())
      return cmd_windcheck(
          function_from_flags(wc_kind, wc_values, wc_k, wc_a, wc_b, wc_w, wc_arity),
          output);
    if (oracle->parsed())
      return cmd_oracle(load_problem(or_input, or_problem, or_b, or_weights),
                        parse_int_list(or_klist), output);
    if (count->parsed())
      return cmd_count(ct_input, ct_problem, ct_b, ct_epsilon, ct_delta, ct_seed,
                       ct_samples, ct_burn, ct_weights, ct_exact, output);
    if (sample->parsed())
      return cmd_sample(load_problem(sm_input, sm_problem, sm_b, sm_weights),
                        sm_seed, sm_burn, sm_trajectory, sm_diagnostics, output);
    if (verify->parsed()) return cmd_verify(vf_suite, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
