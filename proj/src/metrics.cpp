#include "sortclust/metrics.hpp"


#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace sortclust {

namespace {

using i128 = __int128;

i128 pairs(std::int64_t m) { return static_cast<i128>(m) * (m - 1) / 2; }

std::vector<std::size_t> dense_ids(const LabelVector& labels, std::size_t& count) {
  std::unordered_map<int, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (int label : labels) out.push_back(ids.try_emplace(label, ids.size()).first->second);
  count = ids.size();
  return out;
}

}  // namespace

ContingencyTable ContingencyTable::from_labels(const LabelVector& truth, const LabelVector& pred) {
  if (truth.size() != pred.size())
    throw ParameterError("labelings differ in length (" + std::to_string(truth.size()) + " vs " +
                         std::to_string(pred.size()) + ")");
  if (truth.empty()) throw ParameterError("labelings are empty");
  std::size_t r = 0;
  std::size_t c = 0;
  const auto rows = dense_ids(truth, r);
  const auto cols = dense_ids(pred, c);

  ContingencyTable t;
  t.counts.assign(r, std::vector<std::int64_t>(c, 0));
  t.row_sums.assign(r, 0);
  t.col_sums.assign(c, 0);
  t.n = static_cast<std::int64_t>(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++t.counts[rows[i]][cols[i]];
    ++t.row_sums[rows[i]];
    ++t.col_sums[cols[i]];
  }
  return t;
}

double ari(const LabelVector& truth, const LabelVector& pred) {
  const auto t = ContingencyTable::from_labels(truth, pred);
  i128 index = 0;
  for (const auto& row : t.counts)
    for (std::int64_t v : row) index += pairs(v);
  i128 a = 0;
  for (std::int64_t v : t.row_sums) a += pairs(v);
  i128 b = 0;
  for (std::int64_t v : t.col_sums) b += pairs(v);
  const i128 total = pairs(t.n);

  // (index - a*b/total) / ((a+b)/2 - a*b/total), scaled by 2*total.
  const i128 numerator = 2 * index * total - 2 * a * b;
  const i128 denominator = (a + b) * total - 2 * a * b;
  if (denominator == 0) return 1.0;
  return static_cast<double>(static_cast<long double>(numerator) /
                             static_cast<long double>(denominator));
}

double entropy(const std::vector<std::int64_t>& sizes, std::int64_t n) {
  double h = 0.0;
  const double total = static_cast<double>(n);
  for (std::int64_t s : sizes) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / total;
    h -= p * std::log(p);
  }
  return h;
}

double mutual_information(const ContingencyTable& t) {
  const double n = static_cast<double>(t.n);
  double mi = 0.0;
  for (std::size_t i = 0; i < t.counts.size(); ++i) {
    for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
      const auto nij = t.counts[i][j];
      if (nij == 0) continue;
      const double v = static_cast<double>(nij);
      mi += v / n *
            std::log(n * v / (static_cast<double>(t.row_sums[i]) * static_cast<double>(t.col_sums[j])));
    }
  }
  return std::max(mi, 0.0);
}

double expected_mutual_information(const ContingencyTable& t) {
  const std::int64_t n = t.n;
  std::vector<double> log_fact(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::int64_t k = 2; k <= n; ++k)
    log_fact[static_cast<std::size_t>(k)] = log_fact[static_cast<std::size_t>(k - 1)] + std::log(static_cast<double>(k));
  auto lf = [&](std::int64_t k) { return log_fact[static_cast<std::size_t>(k)]; };

  const double nd = static_cast<double>(n);
  double emi = 0.0;
  for (std::int64_t a : t.row_sums) {
    for (std::int64_t b : t.col_sums) {
      const std::int64_t lo = std::max<std::int64_t>(1, a + b - n);
      const std::int64_t hi = std::min(a, b);
      const double fixed = lf(a) + lf(b) + lf(n - a) + lf(n - b) - lf(n);
      for (std::int64_t nij = lo; nij <= hi; ++nij) {
        const double v = static_cast<double>(nij);
        const double term = v / nd * std::log(nd * v / (static_cast<double>(a) * static_cast<double>(b)));
        const double log_prob = fixed - lf(nij) - lf(a - nij) - lf(b - nij) - lf(n - a - b + nij);
        emi += term * std::exp(log_prob);
      }
    }
  }
  return emi;
}

double ami(const LabelVector& truth, const LabelVector& pred) {
  const auto t = ContingencyTable::from_labels(truth, pred);
  const auto r = t.row_sums.size();
  const auto c = t.col_sums.size();
  // Identical partitions score exactly 1, which the floating-point formula
  // only reaches up to rounding. This also covers one cluster on both sides.
  if (r == c && std::all_of(t.counts.begin(), t.counts.end(), [](const auto& row) {
        return std::count_if(row.begin(), row.end(), [](std::int64_t v) { return v != 0; }) == 1;
      }))
    return 1.0;

  const double mi = mutual_information(t);
  const double emi = expected_mutual_information(t);
  const double mean_h = 0.5 * (entropy(t.row_sums, t.n) + entropy(t.col_sums, t.n));
  const double denominator = mean_h - emi;
  if (std::abs(denominator) < 1e-15) return 0.0;
  return (mi - emi) / denominator;
}

}  // namespace sortclust
