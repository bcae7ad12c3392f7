#ifndef DSMOOTH_HILBERT_HPP
#define DSMOOTH_HILBERT_HPP

#include "dsmooth/graded_basis.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dsmooth {

/// Graded dimensions of a truncated quotient together with a comparison
/// against the coefficients of 1/(1-t)^g.
struct HilbertData {
  std::size_t max_degree = 0;
  std::size_t generators = 0;
  std::vector<std::uint64_t> dims;
  std::vector<std::uint64_t> polynomial_ring_dims;
  bool matches_polynomial_ring = false;
};

/// Binomial coefficient C(n, k) with exact intermediate division.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

template <ExactField K>
HilbertData hilbert(const GradedBasis<K>& basis) {
  HilbertData h;
  h.max_degree = basis.max_degree();
  h.generators = basis.generators();
  h.matches_polynomial_ring = true;
  for (std::size_t n = 0; n <= h.max_degree; ++n) {
    h.dims.push_back(basis.dimension(n));
    // Coefficient of t^n in 1/(1-t)^g.
    h.polynomial_ring_dims.push_back(binomial(n + h.generators - 1, h.generators - 1));
    if (h.dims.back() != h.polynomial_ring_dims.back()) h.matches_polynomial_ring = false;
  }
  return h;
}

template <ExactField K>
HilbertData hilbert(const Presentation& p, std::size_t max_degree) {
  return hilbert(GradedBasis<K>::from(p, max_degree));
}

enum class GrowthClass { polynomial, exponential, inconclusive };

inline std::string to_string(GrowthClass g) {
  switch (g) {
    case GrowthClass::polynomial: return "polynomial";
    case GrowthClass::exponential: return "exponential";
    default: return "inconclusive";
  }
}

struct GrowthReport {
  GrowthClass classification = GrowthClass::inconclusive;
  /// Degree of the fitted polynomial for dims (GK estimate minus one).
  int polynomial_degree = -1;
  /// Degree of the fitted polynomial for the cumulative sums S_n.
  int gk_estimate = -1;
  /// Smallest ratio dims[n+1]/dims[n] over the exponential evidence window.
  double min_ratio = 0.0;
  std::size_t window_begin = 0;
  std::size_t window_end = 0;
  std::vector<std::int64_t> cumulative;
};

/// Ratio threshold for the exponential classification.
inline constexpr double kExponentialRatio = 1.5;

/// Fits the cumulative dimensions S_n = dims[0] + ... + dims[n] over the whole
/// window: the GK estimate is the least d with the (d+1)-st finite difference
/// of S identically zero (at least one value of that difference required).
/// Otherwise the sequence is exponential when every ratio over the second
/// half of the window is at least kExponentialRatio.
inline GrowthReport growth_estimate(const HilbertData& h) {
  GrowthReport g;
  const std::size_t n = h.dims.size();
  g.window_begin = 0;
  g.window_end = n == 0 ? 0 : n - 1;
  std::int64_t acc = 0;
  for (auto d : h.dims) {
    acc += static_cast<std::int64_t>(d);
    g.cumulative.push_back(acc);
  }
  std::vector<std::int64_t> diff = g.cumulative;
  bool vanished = false;
  for (std::size_t order = 1; order < n; ++order) {
    std::vector<std::int64_t> next;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) next.push_back(diff[i + 1] - diff[i]);
    diff = std::move(next);
    bool zero = std::all_of(diff.begin(), diff.end(), [](std::int64_t v) { return v == 0; });
    if (zero) {
      g.classification = GrowthClass::polynomial;
      g.gk_estimate = static_cast<int>(order) - 1;
      g.polynomial_degree = g.gk_estimate - 1;
      vanished = true;
      break;
    }
  }
  if (vanished || n < 3) return g;

  const std::size_t start = n / 2;
  double min_ratio = 1e300;
  bool ok = true;
  for (std::size_t i = std::max<std::size_t>(start, 1); i + 1 < n; ++i) {
    if (h.dims[i] == 0) {
      ok = false;
      break;
    }
    min_ratio = std::min(min_ratio, static_cast<double>(h.dims[i + 1]) / static_cast<double>(h.dims[i]));
  }
  g.window_begin = std::max<std::size_t>(start, 1);
  if (ok && min_ratio >= kExponentialRatio) {
    g.classification = GrowthClass::exponential;
    g.min_ratio = min_ratio;
  } else if (ok) {
    g.min_ratio = min_ratio;
  }
  return g;
}

}  // namespace dsmooth

#endif  // DSMOOTH_HILBERT_HPP
