#include "windmill/counter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace windmill {

PreconditionReport check_preconditions(
    const HolantInstance& inst, const std::optional<Rational>& ratio_bound) {
  PreconditionReport report;
  report.ok = true;
  std::map<std::vector<Rational>, bool> verdict_cache;
  for (int v = 0; v < inst.vertex_count(); ++v) {
    const SymmetricFunction& f = inst.vertex_function(v);
    if (f.arity() == 0) continue;  // scalar factor, trivially fine
    auto [it, fresh] = verdict_cache.try_emplace(f.values(), false);
    if (!fresh) continue;
    it->second = check_windable(f).windable;
    report.verdicts.push_back({v, it->second});
    if (!it->second) {
      report.ok = false;
      if (report.failure.empty())
        report.failure =
            "vertex " + std::to_string(v) + " carries a non-windable function";
    }
  }
  report.start_found = find_consistent_start(inst).has_value();
  if (!report.start_found) {
    report.ok = false;
    if (report.failure.empty())
      report.failure = "no positive-weight consistent assignment found";
  }
  if (inst.half_edge_count() <= 20 && inst.edge_count() > 0) {
    const auto z = exact_stratum_weights(inst);
    const Rational& z0 = z[0];
    const Rational z2 = z.size() > 2 ? z[2] : Rational(0);
    if (z0 > 0) {
      report.z2_over_z0 = z2 / z0;
      if (ratio_bound) {
        report.ratio_bound = *ratio_bound;
        if (*report.z2_over_z0 > *ratio_bound) {
          report.ok = false;
          if (report.failure.empty())
            report.failure = "Z2/Z0 exceeds the applicable ratio bound";
        }
      }
    }
  }
  return report;
}

long long default_sample_count(const HolantInstance& inst,
                               const Rational& epsilon, double delta) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");
  if (delta <= 0 || delta >= 1)
    throw std::invalid_argument("delta must lie in (0, 1)");
  const double m = std::max(1, inst.edge_count());
  const double eps = mpq_get_d(epsilon.get_mpq_t());
  const double s = std::ceil(64.0 * m * m / (eps * eps) * std::log(4.0 * m / delta));
  if (s > 9.0e18) throw std::overflow_error("sample bound overflows");
  return static_cast<long long>(s);
}

namespace {

Bits drop_first_edge(const Bits& bits) {
  return Bits(bits.begin() + 2, bits.end());
}

}  // namespace

CountEstimate estimate_partition(const CountJob& job, MarginalSource source) {
  if (job.epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");
  if (job.delta <= 0 || job.delta >= 1)
    throw std::invalid_argument("delta must lie in (0, 1)");

  CountEstimate est;
  est.seed = job.seed;

  HolantInstance current = job.instance;
  const int total_edges = current.edge_count();
  const long long samples = job.samples_per_ratio > 0
                                ? job.samples_per_ratio
                                : default_sample_count(current, job.epsilon,
                                                       job.delta);

  Bits carried;
  if (source == MarginalSource::Mcmc) {
    auto start = find_consistent_start(current);
    if (!start)
      throw std::runtime_error("no positive-weight consistent start state");
    carried = *start;
  }

  Rational marginal_product(1);
  long long rejected = 0;
  long long recorded = 0;

  for (int round = 0; round < total_edges; ++round) {
    int pinned_value = 0;
    Rational p_hat;
    if (source == MarginalSource::ExactOracle) {
      const Rational z_now = exact_stratum_weight(current, 0);
      if (z_now <= 0) throw std::runtime_error("exact marginal on a dead instance");
      const Rational z_one = exact_stratum_weight(pin_edge(current, 0, 1), 0);
      const Rational z_zero = z_now - z_one;
      pinned_value = z_one > z_zero ? 1 : 0;
      p_hat = (pinned_value ? z_one : z_zero) / z_now;
    } else {
      SplitMix64 rng(SplitMix64::mix(job.seed ^
                                     (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(round + 1))));
      ChainState state = make_chain_state(current, carried);
      const long long burn = job.burn_in >= 0 ? job.burn_in
                                              : default_burn_in(current, 0.05);
      for (long long i = 0; i < burn; ++i) chain_step(current, state, rng);
      est.total_steps += burn;

      long long count[2] = {0, 0};
      Bits keep[2];
      for (long long i = 0; i < samples; ++i) {
        chain_step(current, state, rng);
        if (state.disagreement == 0) {
          const int bit = state.assignment[0];
          ++count[bit];
          keep[bit] = state.assignment;
        } else {
          ++rejected;
        }
      }
      est.total_steps += samples;
      recorded += samples;
      const long long kept = count[0] + count[1];
      if (kept == 0)
        throw std::runtime_error(
            "all samples fell in the two-bad-edge stratum; increase burn-in or "
            "samples");
      pinned_value = count[1] > count[0] ? 1 : 0;
      p_hat = make_fraction(Integer(static_cast<long>(count[pinned_value])),
                            Integer(static_cast<long>(kept)));
      if (p_hat < make_fraction(1, 4))
        throw std::runtime_error(
            "estimated marginal below 1/4; sampling looks unstable");
      carried = drop_first_edge(keep[pinned_value]);
    }
    est.marginals.push_back({round, pinned_value, p_hat});
    marginal_product *= p_hat;
    current = pin_edge(current, 0, pinned_value);
  }

  Rational final_weight(1);
  for (int v = 0; v < current.vertex_count(); ++v)
    final_weight *= current.vertex_function(v).at_weight(0);

  est.estimate = final_weight / marginal_product;
  est.log_estimate = est.estimate > 0
                         ? std::log(mpq_get_d(est.estimate.get_mpq_t()))
                         : -HUGE_VAL;
  est.rejected_omega2_fraction =
      recorded > 0 ? static_cast<double>(rejected) / static_cast<double>(recorded)
                   : 0.0;
  return est;
}

namespace {

CountEstimate run_named_count(HolantInstance inst,
                              const std::optional<std::vector<Rational>>& weights,
                              const Rational& ratio_bound_unweighted,
                              const Rational& epsilon, double delta,
                              uint64_t seed, long long samples_override,
                              long long burn_in_override, MarginalSource source) {
  std::optional<Rational> bound = ratio_bound_unweighted;
  if (weights) {
    inst = apply_edge_weights(inst, *weights);
    bound.reset();  // weighted bounds depend on min/max w; reported upstream
  }
  const auto pre = check_preconditions(inst, bound);
  if (!pre.ok) throw std::runtime_error("preconditions failed: " + pre.failure);
  CountJob job{std::move(inst), epsilon, delta, seed, samples_override,
               burn_in_override};
  return estimate_partition(job, source);
}

}  // namespace

CountEstimate count_b_matching(const Graph& graph, int b,
                               const std::optional<std::vector<Rational>>& weights,
                               const Rational& epsilon, double delta,
                               uint64_t seed, long long samples_override,
                               long long burn_in_override, MarginalSource source) {
  if (b < 0) throw std::invalid_argument("b must be >= 0");
  if (b > 7)
    throw std::domain_error(
        "b-matchings are supported for b <= 7 only: the at-most-b constraint "
        "stops being windable at degree b + 3 once b >= 8");
  const Rational bound =
      Rational(4) * Rational(static_cast<long>(graph.edges.size())) *
      Rational(static_cast<long>(graph.edges.size()));
  return run_named_count(matching_instance(graph, b), weights, bound, epsilon,
                         delta, seed, samples_override, burn_in_override,
                         source);
}

CountEstimate count_b_edge_cover(const Graph& graph, int b,
                                 const std::optional<std::vector<Rational>>& weights,
                                 const Rational& epsilon, double delta,
                                 uint64_t seed, long long samples_override,
                                 long long burn_in_override,
                                 MarginalSource source) {
  if (b < 0) throw std::invalid_argument("b must be >= 0");
  if (b > 2)
    throw std::domain_error(
        "b-edge-covers are supported for b <= 2 only: the at-least-b "
        "constraint stops being windable at degree b + 8 once b >= 3");
  std::vector<int> degree(static_cast<size_t>(graph.vertex_count), 0);
  for (const auto& [u, v] : graph.edges) {
    ++degree[static_cast<size_t>(u)];
    ++degree[static_cast<size_t>(v)];
  }
  for (int d : degree)
    if (d < b) {
      CountEstimate zero;
      zero.estimate = Rational(0);
      zero.log_estimate = -HUGE_VAL;
      zero.seed = seed;
      return zero;  // a vertex of degree < b cannot be covered b times
    }
  const Rational bound =
      Rational(4) * Rational(static_cast<long>(graph.edges.size())) *
      Rational(static_cast<long>(graph.edges.size()));
  return run_named_count(edge_cover_instance(graph, b), weights, bound, epsilon,
                         delta, seed, samples_override, burn_in_override,
                         source);
}

}  // namespace windmill
