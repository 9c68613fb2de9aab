#pragma once

// Volumes of d-dimensional balls and of the lens formed by two equal balls.

#include "sortclust/types.hpp"

namespace sortclust {

struct Ball {
  Vector<double> center;
  double radius = 1.0;
};

double log_ball_volume(double R, int d);

/// pi^(d/2) R^d / Gamma(d/2 + 1). Throws std::range_error when the result
/// over- or underflows; use log_ball_volume in that regime.
double ball_volume(double R, int d);

/// Fraction of one ball's volume covered by the intersection with an equal
/// ball whose center lies `dist` away: I_{1 - dist^2/(4R^2)}((d+1)/2, 1/2).
///
/// The cap formula is sometimes quoted with first beta parameter d/2 + 1.
/// That variant disagrees with the 1-D overlap 2R - dist and the 2-D lens
/// area; (d+1)/2 reproduces both.
double intersection_fraction(double dist, double R, int d);

double intersection_volume(double dist, double R, int d);
double union_volume(double dist, double R, int d);

/// log of the lens volume; -infinity for disjoint balls.
double log_intersection_volume(double dist, double R, int d);
double log_union_volume(double dist, double R, int d);

inline double intersection_volume(const Ball& a, const Ball& b) {
  return intersection_volume((a.center - b.center).norm(), a.radius, static_cast<int>(a.center.size()));
}

}  // namespace sortclust
