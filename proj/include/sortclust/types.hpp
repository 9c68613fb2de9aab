#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace sortclust {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Row-major storage keeps each point contiguous for the distance loops.
template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using LabelVector = std::vector<int>;

/// Label given to points of clusters removed by the minPts rule.
inline constexpr int kOutlier = -1;

/// Bad numeric parameter (radius, scale, index, dimension, ...).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or non-finite input data.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operation requires a fitted model.
class StateError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace sortclust
