#pragma once

// Chance-adjusted agreement between two labelings.

#include "sortclust/types.hpp"

#include <cstdint>
#include <vector>

namespace sortclust {

/// Contingency table of two labelings. Clusters are numbered in order of first
/// appearance, so relabeling either input leaves the table unchanged.
struct ContingencyTable {
  std::vector<std::vector<std::int64_t>> counts;  ///< rows: truth, columns: prediction
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t n = 0;

  static ContingencyTable from_labels(const LabelVector& truth, const LabelVector& pred);
};

/// Adjusted Rand index. Pair counts are combined in exact integer arithmetic;
/// only the final quotient is rounded. Outlier labels count as a cluster.
double ari(const LabelVector& truth, const LabelVector& pred);

/// Adjusted mutual information with arithmetic-mean normalization, natural
/// logarithms and the exact expected mutual information under the
/// hypergeometric model.
double ami(const LabelVector& truth, const LabelVector& pred);

double mutual_information(const ContingencyTable& table);
double expected_mutual_information(const ContingencyTable& table);
double entropy(const std::vector<std::int64_t>& sizes, std::int64_t n);

}  // namespace sortclust
