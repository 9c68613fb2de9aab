#pragma once

// Efficiency model for sorting-based aggregation on an elongated Gaussian
// blob: standard normal along the first axis, standard deviation s along the
// remaining d - 1 axes, and a query ball of radius R centred at (c, 0, ..., 0).

#include <functional>

namespace sortclust {

struct GaussianModelParams {
  double c = 0.0;
  double R = 1.0;
  double s = 0.3;
  int d = 2;
};

/// Probability that the first coordinate lies within R of c.
double model_p1(double c, double R);

/// Probability that the point lies within the R-ball around (c, 0, ..., 0).
double model_p2(const GaussianModelParams& params);

/// Conditional probability p2 / p1 (1 when both vanish).
double model_ratio(const GaussianModelParams& params);

/// Adaptive Simpson quadrature with an absolute tolerance and a cap on the
/// number of subintervals.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_intervals = 10000);

}  // namespace sortclust
