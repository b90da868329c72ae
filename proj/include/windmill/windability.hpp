#pragma once

#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "windmill/symfunc.hpp"

namespace windmill {

// Counts of partitions of m labeled balls (i red, m - i blue) into pairs
// and at most one singleton, bucketed by the number of mixed-color pairs.
// Lower triangular with positive diagonal, so A x = h always has a unique
// solution; every row sums to (2*floor((m-1)/2)+1)!!.
struct PartitionMatrix {
  int m = 0;  // ball count
  int n = 0;  // floor(m/2); entries is (n+1) x (n+1)
  std::vector<std::vector<Rational>> entries;
};

PartitionMatrix pairing_count_matrix(int m);

// Forward substitution in exact rationals; rhs must have n+1 entries.
std::vector<Rational> solve_lower_triangular(const PartitionMatrix& a,
                                             const std::vector<Rational>& rhs);

struct TwoDecomposition {
  int m = 0;
  std::vector<Rational> class_values;  // D_k indexed by mixed-pair count
};

// The unique solution of A_m x = h when it is entrywise >= 0; nullopt
// otherwise, which is a proof that the palindromic profile h has no
// 2-decomposition.
std::optional<TwoDecomposition> find_two_decomposition(
    const std::vector<Rational>& h, int m);

struct PinningRecord {
  int zeros = 0;
  int ones = 0;
  std::vector<Rational> h;
  std::vector<Rational> solution;
  bool nonneg = false;
};

struct WindabilityReport {
  SymmetricFunction function;
  bool windable = false;
  // Every pinning with residual arity >= 1, ascending zeros then ones.
  std::vector<PinningRecord> pinnings;
  // First failing (zeros, ones) in that order, when not windable.
  std::optional<std::pair<int, int>> counterexample;
};

// Certifies or refutes windability of a symmetric function by solving
// A_m x = h for every pinning. Requires arity >= 1.
WindabilityReport check_windable(const SymmetricFunction& f);

// Closed-form solution of A_m x = (>=2)*Even (b = 1) or (>=3)*Odd (b = 2)
// for even m >= 2. Must match solve_lower_triangular entrywise.
std::vector<Rational> edge_cover_closed_form(int b, int m);

// Even m only: (h with odd-indexed entries zeroed, h with even-indexed
// entries zeroed). A_m x = h has a nonnegative solution iff both parts do.
std::pair<std::vector<Rational>, std::vector<Rational>> split_by_index_parity(
    const std::vector<Rational>& h, int m);

enum class IndexParity { Even, Odd };

// For odd m = 2n-1 and a profile h' in the structured form tied to
// `parity` (consecutive entries paired), returns the profile h such that
// A_{2n} x = h has a nonnegative solution iff A_m x' = h' does. Routes
// odd-arity checks through the even-arity closed forms.
std::vector<Rational> lift_profile_to_even(const std::vector<Rational>& h_odd,
                                           int m, IndexParity parity);

// Partition of an index set into pairs and at most one singleton, kept in
// canonical order: pairs as (lo, hi) sorted by first element.
struct Pairing {
  std::vector<std::pair<int, int>> pairs;
  std::optional<int> singleton;

  auto operator<=>(const Pairing&) const = default;
  size_t part_count() const { return pairs.size() + (singleton ? 1 : 0); }
};

// All pair-plus-at-most-one-singleton partitions of `elements`
// (m!! of them for odd m, (m-1)!! for even m), in a deterministic order.
std::vector<Pairing> pairings_of(const std::vector<int>& elements);

// Witness values B(x, y, M) over partitions M of the disagreement set of
// x and y: B = D_k where D solves the pinned system and k counts pairs of
// M on which x internally disagrees. Throws if the induced pinning has no
// 2-decomposition (f not windable there); callers wanting a full
// certificate should run check_windable first.
std::map<Pairing, Rational> windability_witness(const SymmetricFunction& f,
                                                const Bits& x, const Bits& y);

// sum_{j=0}^{m} (-1)^j C(m,j) C(n-j,m) / (n-j), which vanishes for
// 1 <= m < n; the cancellation behind the edge-cover closed forms.
Rational alternating_binomial_sum(int m, int n);
bool alternating_binomial_sum_is_zero(int m, int n);

}  // namespace windmill
