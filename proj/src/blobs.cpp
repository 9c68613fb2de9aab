#include "sortclust/blobs.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace sortclust {

namespace {

// The draw sequence of numpy's legacy RandomState on a 32-bit Mersenne
// Twister, so a seed yields the same blobs as scikit-learn's make_blobs.
class LegacyRandom {
 public:
  explicit LegacyRandom(std::uint32_t seed) : mt_(seed) {}

  double uniform01() {
    const std::uint32_t a = mt_() >> 5;
    const std::uint32_t b = mt_() >> 6;
    return (a * 67108864.0 + b) / 9007199254740992.0;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Polar Box-Muller, caching the second variate.
  double gauss() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double x1, x2, r2;
    do {
      x1 = 2.0 * uniform01() - 1.0;
      x2 = 2.0 * uniform01() - 1.0;
      r2 = x1 * x1 + x2 * x2;
    } while (r2 >= 1.0 || r2 == 0.0);
    const double f = std::sqrt(-2.0 * std::log(r2) / r2);
    cached_ = f * x1;
    has_cached_ = true;
    return f * x2;
  }

  // Uniform integer in [0, max] by masked rejection.
  std::uint64_t interval(std::uint64_t max) {
    if (max == 0) return 0;
    std::uint64_t mask = max;
    for (int shift : {1, 2, 4, 8, 16, 32}) mask |= mask >> shift;
    std::uint64_t value;
    if (max <= 0xffffffffULL) {
      while ((value = (mt_() & mask)) > max) {
      }
    } else {
      while ((value = ((static_cast<std::uint64_t>(mt_()) << 32 | mt_()) & mask)) > max) {
      }
    }
    return value;
  }

 private:
  std::mt19937 mt_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace

Blobs make_blobs(Index n, Index d, Index k, double stddev, std::uint64_t seed) {
  if (k < 1 || n < k) throw ParameterError("make_blobs requires n >= k >= 1");
  if (d < 1) throw ParameterError("make_blobs requires d >= 1");
  if (!(stddev >= 0.0)) throw ParameterError("make_blobs requires a nonnegative standard deviation");
  if (seed > 0xffffffffULL) throw ParameterError("make_blobs seed must fit in 32 bits");

  LegacyRandom rng(static_cast<std::uint32_t>(seed));
  Blobs out;
  out.centers.resize(k, d);
  for (Index c = 0; c < k; ++c)
    for (Index j = 0; j < d; ++j) out.centers(c, j) = rng.uniform(-10.0, 10.0);

  Matrix<double> ordered(n, d);
  std::vector<int> ordered_labels(static_cast<std::size_t>(n));
  Index row = 0;
  for (Index c = 0; c < k; ++c) {
    const Index count = n / k + (c < n % k ? 1 : 0);
    for (Index i = 0; i < count; ++i, ++row) {
      for (Index j = 0; j < d; ++j) ordered(row, j) = out.centers(c, j) + stddev * rng.gauss();
      ordered_labels[static_cast<std::size_t>(row)] = static_cast<int>(c);
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  for (Index i = n - 1; i >= 1; --i)
    std::swap(order[static_cast<std::size_t>(i)], order[rng.interval(static_cast<std::uint64_t>(i))]);

  out.points.resize(n, d);
  out.labels.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Index from = order[static_cast<std::size_t>(i)];
    out.points.row(i) = ordered.row(from);
    out.labels[static_cast<std::size_t>(i)] = ordered_labels[static_cast<std::size_t>(from)];
  }
  return out;
}

}  // namespace sortclust
