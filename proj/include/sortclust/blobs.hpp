#pragma once

#include "sortclust/types.hpp"

#include <cstdint>

namespace sortclust {

struct Blobs {
  Matrix<double> points;
  LabelVector labels;
  Matrix<double> centers;
};

/// Isotropic Gaussian blobs: k centers uniform in [-10, 10]^d, points split as
/// evenly as possible (the first n % k blobs get one extra), coordinate noise
/// with standard deviation `stddev`, rows shuffled. A given seed (< 2^32)
/// reproduces scikit-learn's make_blobs with the same random_state.
Blobs make_blobs(Index n, Index d, Index k, double stddev, std::uint64_t seed);

}  // namespace sortclust
