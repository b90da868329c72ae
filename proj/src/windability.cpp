#include "windmill/windability.hpp"

#include <algorithm>
#include <stdexcept>

namespace windmill {

PartitionMatrix pairing_count_matrix(int m) {
  if (m < 1) throw std::invalid_argument("pairing count matrix needs m >= 1");
  const int n = m / 2;
  PartitionMatrix a;
  a.m = m;
  a.n = n;
  a.entries.assign(static_cast<size_t>(n) + 1,
                   std::vector<Rational>(static_cast<size_t>(n) + 1, Rational(0)));
  const bool even = m % 2 == 0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= i; ++j) {
      Integer count;
      if (even) {
        // Mixed pairs use one ball of each color; leftovers pair within
        // their color, which forces i = j (mod 2).
        if ((i - j) % 2 != 0) continue;
        count = binomial(i, j) * binomial(m - i, j) * factorial(j) *
                double_factorial(i - j - 1) * double_factorial(m - i - j - 1);
      } else if ((i - j) % 2 == 0) {
        // Odd m: the singleton sits in whichever color class has odd
        // leftover count. Here it is blue.
        count = binomial(i, j) * binomial(m - i, j) * factorial(j) *
                double_factorial(i - j - 1) * double_factorial(m - i - j);
      } else {
        // Red leftover count is odd: singleton is red.
        count = binomial(i, j) * binomial(m - i, j) * factorial(j) *
                double_factorial(i - j) * double_factorial(m - i - j - 1);
      }
      a.entries[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          Rational(std::move(count));
    }
  }
  return a;
}

std::vector<Rational> solve_lower_triangular(const PartitionMatrix& a,
                                             const std::vector<Rational>& rhs) {
  const size_t dim = static_cast<size_t>(a.n) + 1;
  if (rhs.size() != dim)
    throw std::invalid_argument("right-hand side has wrong length");
  std::vector<Rational> x(dim, Rational(0));
  for (size_t i = 0; i < dim; ++i) {
    Rational acc = rhs[i];
    for (size_t j = 0; j < i; ++j) acc -= a.entries[i][j] * x[j];
    if (a.entries[i][i] <= 0)
      throw std::logic_error("partition matrix diagonal must be positive");
    x[i] = acc / a.entries[i][i];
  }
  return x;
}

std::optional<TwoDecomposition> find_two_decomposition(
    const std::vector<Rational>& h, int m) {
  auto x = solve_lower_triangular(pairing_count_matrix(m), h);
  for (const Rational& v : x)
    if (v < 0) return std::nullopt;
  return TwoDecomposition{m, std::move(x)};
}

WindabilityReport check_windable(const SymmetricFunction& f) {
  const int d = f.arity();
  if (d < 1) throw std::invalid_argument("windability check needs arity >= 1");
  WindabilityReport report{f, true, {}, std::nullopt};
  // Cache A_m across pinnings with the same residual arity.
  std::vector<std::optional<PartitionMatrix>> matrices(static_cast<size_t>(d) + 1);
  for (int zeros = 0; zeros <= d - 1; ++zeros) {
    for (int ones = 0; zeros + ones <= d - 1; ++ones) {
      const SymmetricFunction g = f.pin(zeros, ones);
      const int m = g.arity();
      auto& mat = matrices[static_cast<size_t>(m)];
      if (!mat) mat = pairing_count_matrix(m);
      PinningRecord rec;
      rec.zeros = zeros;
      rec.ones = ones;
      rec.h = complement_product_prefix(g);
      rec.solution = solve_lower_triangular(*mat, rec.h);
      rec.nonneg = std::none_of(rec.solution.begin(), rec.solution.end(),
                                [](const Rational& v) { return v < 0; });
      if (!rec.nonneg) {
        report.windable = false;
        if (!report.counterexample) report.counterexample = {zeros, ones};
      }
      report.pinnings.push_back(std::move(rec));
    }
  }
  return report;
}

std::vector<Rational> edge_cover_closed_form(int b, int m) {
  if (b != 1 && b != 2)
    throw std::invalid_argument("closed form covers b in {1, 2} only");
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("closed form needs even m >= 2");
  const int n = m / 2;
  std::vector<Rational> x(static_cast<size_t>(n) + 1, Rational(0));
  const Integer row_total = double_factorial(2L * n - 1);
  if (b == 1) {
    for (int j = 0; 2 * j <= n; ++j) {
      Integer denom = 1;
      for (int i = 1; i <= j; ++i) denom *= 2 * (n - i);
      Rational term = make_fraction(double_factorial(2L * j - 1), denom);
      if (j % 2 != 0) term = -term;
      x[static_cast<size_t>(2 * j)] = (Rational(1) - term) / Rational(row_total);
    }
  } else {
    for (int j = 0; 2 * j + 1 <= n; ++j) {
      Integer denom = 1;
      for (int i = 2; i <= j + 1; ++i) denom *= 2 * (n - i);
      Rational term = make_fraction(double_factorial(2L * j + 1), denom);
      if (j % 2 != 0) term = -term;
      x[static_cast<size_t>(2 * j + 1)] =
          (Rational(1) - term) / Rational(row_total);
    }
  }
  return x;
}

std::pair<std::vector<Rational>, std::vector<Rational>> split_by_index_parity(
    const std::vector<Rational>& h, int m) {
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("parity split needs even m");
  if (h.size() != static_cast<size_t>(m / 2) + 1)
    throw std::invalid_argument("profile has wrong length");
  std::vector<Rational> even_part(h.size(), Rational(0));
  std::vector<Rational> odd_part(h.size(), Rational(0));
  for (size_t i = 0; i < h.size(); ++i)
    (i % 2 == 0 ? even_part[i] : odd_part[i]) = h[i];
  return {std::move(even_part), std::move(odd_part)};
}

std::vector<Rational> lift_profile_to_even(const std::vector<Rational>& h_odd,
                                           int m, IndexParity parity) {
  if (m < 1 || m % 2 == 0)
    throw std::invalid_argument("lift needs odd m");
  const int n = (m + 1) / 2;  // target is A_{2n}
  if (h_odd.size() != static_cast<size_t>(n))
    throw std::invalid_argument("profile has wrong length");
  std::vector<Rational> h(static_cast<size_t>(n) + 1, Rational(0));
  if (parity == IndexParity::Odd) {
    for (int t = 1; t <= n; t += 2) {
      h[static_cast<size_t>(t)] = h_odd[static_cast<size_t>(t - 1)];
      if (t <= n - 1 && h_odd[static_cast<size_t>(t)] != h_odd[static_cast<size_t>(t - 1)])
        throw std::invalid_argument("profile not in odd structured form");
    }
  } else {
    h[0] = h_odd[0];
    for (int t = 2; t <= n; t += 2) {
      h[static_cast<size_t>(t)] = h_odd[static_cast<size_t>(t - 1)];
      if (t <= n - 1 && h_odd[static_cast<size_t>(t)] != h_odd[static_cast<size_t>(t - 1)])
        throw std::invalid_argument("profile not in even structured form");
    }
  }
  return h;
}

namespace {

void enumerate_even(std::vector<int>& rest, Pairing& current,
                    std::vector<Pairing>& out) {
  if (rest.empty()) {
    Pairing done = current;
    std::sort(done.pairs.begin(), done.pairs.end());
    out.push_back(std::move(done));
    return;
  }
  const int first = rest.front();
  for (size_t k = 1; k < rest.size(); ++k) {
    const int partner = rest[k];
    std::vector<int> remaining;
    remaining.reserve(rest.size() - 2);
    for (size_t t = 1; t < rest.size(); ++t)
      if (t != k) remaining.push_back(rest[t]);
    current.pairs.emplace_back(first, partner);
    enumerate_even(remaining, current, out);
    current.pairs.pop_back();
  }
}

}  // namespace

std::vector<Pairing> pairings_of(const std::vector<int>& elements) {
  std::vector<int> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Pairing> out;
  Pairing scratch;
  if (sorted.size() % 2 == 0) {
    enumerate_even(sorted, scratch, out);
  } else {
    for (size_t s = 0; s < sorted.size(); ++s) {
      std::vector<int> rest;
      rest.reserve(sorted.size() - 1);
      for (size_t t = 0; t < sorted.size(); ++t)
        if (t != s) rest.push_back(sorted[t]);
      scratch.singleton = sorted[s];
      enumerate_even(rest, scratch, out);
      scratch.singleton.reset();
    }
  }
  if (out.empty()) out.push_back(Pairing{});  // empty set: one empty partition
  return out;
}

std::map<Pairing, Rational> windability_witness(const SymmetricFunction& f,
                                                const Bits& x, const Bits& y) {
  const size_t d = static_cast<size_t>(f.arity());
  if (x.size() != d || y.size() != d)
    throw std::invalid_argument("assignments must match the arity");
  int zeros = 0, ones = 0;
  std::vector<int> disagreement;
  for (size_t i = 0; i < d; ++i) {
    if (x[i] == y[i]) {
      (x[i] ? ones : zeros) += 1;
    } else {
      disagreement.push_back(static_cast<int>(i));
    }
  }
  std::map<Pairing, Rational> witness;
  if (disagreement.empty()) {
    // x == y: the single empty partition carries F(x) * F(y).
    int wx = 0;
    for (uint8_t bit : x) wx += bit;
    witness[Pairing{}] = f.at_weight(wx) * f.at_weight(wx);
    return witness;
  }
  const SymmetricFunction g = f.pin(zeros, ones);
  const int m = g.arity();
  auto decomposition = find_two_decomposition(complement_product_prefix(g), m);
  if (!decomposition)
    throw std::domain_error(
        "function has no 2-decomposition at the induced pinning; not windable");
  for (Pairing& pairing : pairings_of(disagreement)) {
    int k = 0;
    for (const auto& [a, b] : pairing.pairs)
      if (x[static_cast<size_t>(a)] != x[static_cast<size_t>(b)]) ++k;
    witness.emplace(std::move(pairing),
                    decomposition->class_values[static_cast<size_t>(k)]);
  }
  return witness;
}

Rational alternating_binomial_sum(int m, int n) {
  if (m < 1 || n <= m)
    throw std::invalid_argument("sum needs 1 <= m < n");
  Rational acc(0);
  for (int j = 0; j <= m; ++j) {
    Rational term = make_fraction(binomial(m, j) * binomial(n - j, m),
                                  Integer(n - j));
    if (j % 2 != 0) term = -term;
    acc += term;
  }
  return acc;
}

bool alternating_binomial_sum_is_zero(int m, int n) {
  return alternating_binomial_sum(m, n) == 0;
}

}  // namespace windmill
