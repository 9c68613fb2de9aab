#include "sortclust/geometry.hpp"

#include "sortclust/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sortclust {

namespace {

void check_args(double R, int d) {
  if (!(R > 0.0) || !std::isfinite(R)) throw ParameterError("ball radius must be positive");
  if (d < 1) throw ParameterError("dimension must be at least 1");
}

void check_dist(double dist) {
  if (!(dist >= 0.0)) throw ParameterError("distance must be nonnegative");
}

}  // namespace

double log_ball_volume(double R, int d) {
  check_args(R, d);
  const double half = 0.5 * d;
  return half * std::log(std::numbers::pi) + d * std::log(R) - log_gamma(half + 1.0);
}

double ball_volume(double R, int d) {
  const double v = std::exp(log_ball_volume(R, d));
  if (v == 0.0 || !std::isfinite(v))
    throw std::range_error("ball volume not representable; use log_ball_volume");
  return v;
}

double intersection_fraction(double dist, double R, int d) {
  check_args(R, d);
  check_dist(dist);
  if (dist >= 2.0 * R) return 0.0;
  if (dist == 0.0) return 1.0;
  const double ratio = dist / (2.0 * R);
  return reg_inc_beta(1.0 - ratio * ratio, 0.5 * (d + 1), 0.5);
}

double intersection_volume(double dist, double R, int d) {
  const double frac = intersection_fraction(dist, R, d);
  if (frac == 0.0) return 0.0;
  return ball_volume(R, d) * frac;
}

double union_volume(double dist, double R, int d) {
  return ball_volume(R, d) * (2.0 - intersection_fraction(dist, R, d));
}

double log_intersection_volume(double dist, double R, int d) {
  const double frac = intersection_fraction(dist, R, d);
  if (frac == 0.0) return -std::numeric_limits<double>::infinity();
  return log_ball_volume(R, d) + std::log(frac);
}

double log_union_volume(double dist, double R, int d) {
  return log_ball_volume(R, d) + std::log(2.0 - intersection_fraction(dist, R, d));
}

}  // namespace sortclust
