#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "windmill/holant.hpp"
#include "windmill/mcmc.hpp"

namespace windmill {

struct CountJob {
  HolantInstance instance;
  Rational epsilon;                 // relative error target, > 0
  double delta = 0.05;              // failure probability, in (0, 1)
  uint64_t seed = 0;
  long long samples_per_ratio = 0;  // 0: Chernoff default
  long long burn_in = -1;           // < 0: mixing-bound default
};

struct FunctionVerdict {
  int vertex = 0;  // representative vertex carrying this function
  bool windable = false;
};

struct PreconditionReport {
  bool ok = false;
  std::vector<FunctionVerdict> verdicts;  // one per distinct function
  bool start_found = false;
  std::string failure;  // empty when ok
  std::optional<Rational> z2_over_z0;  // filled when small enough to enumerate
  std::optional<Rational> ratio_bound; // the applicable bound, when known
};

// Windability of every distinct vertex function, existence of a
// positive-weight consistent start, and (small instances, when a bound is
// supplied) the Z_2/Z_0 ratio against it.
PreconditionReport check_preconditions(
    const HolantInstance& inst,
    const std::optional<Rational>& ratio_bound = std::nullopt);

struct EdgeMarginal {
  int edge = 0;
  int pinned_value = 0;
  Rational estimated_p;
};

struct CountEstimate {
  Rational estimate;
  double log_estimate = 0.0;
  std::vector<EdgeMarginal> marginals;
  uint64_t seed = 0;
  long long total_steps = 0;
  double rejected_omega2_fraction = 0.0;
};

enum class MarginalSource { Mcmc, ExactOracle };

// Telescopes Z_0 over the edges in index order: sample, reject the
// two-bad-edge stratum, estimate the majority marginal, pin, carry a
// feasible sample into the reduced chain. With MarginalSource::ExactOracle
// the marginals come from exact enumeration and the result equals Z_0.
CountEstimate estimate_partition(const CountJob& job,
                                 MarginalSource source = MarginalSource::Mcmc);

CountEstimate count_b_matching(const Graph& graph, int b,
                               const std::optional<std::vector<Rational>>& weights,
                               const Rational& epsilon, double delta,
                               uint64_t seed, long long samples_override = 0,
                               long long burn_in_override = -1,
                               MarginalSource source = MarginalSource::Mcmc);

CountEstimate count_b_edge_cover(const Graph& graph, int b,
                                 const std::optional<std::vector<Rational>>& weights,
                                 const Rational& epsilon, double delta,
                                 uint64_t seed, long long samples_override = 0,
                                 long long burn_in_override = -1,
                                 MarginalSource source = MarginalSource::Mcmc);

// ceil(64 m^2 / eps^2 * ln(4 m / delta)) with m the edge count.
long long default_sample_count(const HolantInstance& inst, const Rational& epsilon,
                               double delta);

}  // namespace windmill
