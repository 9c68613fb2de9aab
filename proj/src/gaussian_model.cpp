#include "sortclust/gaussian_model.hpp"

#include "sortclust/special_functions.hpp"
#include "sortclust/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sortclust {

namespace {

constexpr double kQuadratureTolerance = 1e-12;

double normal_pdf(double r) { return std::exp(-0.5 * r * r) / std::sqrt(2.0 * std::numbers::pi); }

// P(Z <= x), using erfc in the tails to avoid cancellation.
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

struct Panel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int& budget) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (budget <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  --budget;
  return refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, budget) +
         refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, budget);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_intervals) {
  if (a == b) return 0.0;
  // A few initial panels so a coincidentally small first error estimate
  // cannot end the refinement early.
  constexpr int panels = 8;
  int budget = max_intervals - panels;
  const double h = (b - a) / panels;
  double total = 0.0;
  double fa = f(a);
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h;
    const double hi = i + 1 == panels ? b : lo + h;
    const double fm = f(0.5 * (lo + hi));
    const double fb = f(hi);
    total += refine(f, {lo, hi, fa, fm, fb, simpson(lo, hi, fa, fm, fb)}, tol / panels, budget);
    fa = fb;
  }
  return total;
}

double model_p1(double c, double R) {
  if (!(R > 0.0)) throw ParameterError("model_p1 requires R > 0");
  const double lo = c - R;
  const double hi = c + R;
  if (lo > 0.0) return normal_cdf(-lo) - normal_cdf(-hi);
  return normal_cdf(hi) - normal_cdf(lo);
}

double model_p2(const GaussianModelParams& p) {
  if (p.d < 2) throw ParameterError("model_p2 requires d >= 2");
  if (!(p.R > 0.0)) throw ParameterError("model_p2 requires R > 0");
  if (!(p.s > 0.0)) throw ParameterError("model_p2 requires s > 0");
  const double dof = p.d - 1;
  // r = c - R cos(theta) removes the square-root behaviour of the integrand at
  // the window ends: R^2 - (r - c)^2 = R^2 sin^2(theta).
  auto integrand = [&](double theta) {
    const double sin_t = std::sin(theta);
    const double r = p.c - p.R * std::cos(theta);
    const double chi = p.R * p.R * sin_t * sin_t / (p.s * p.s);
    return normal_pdf(r) * chi_squared_cdf(chi, dof) * p.R * sin_t;
  };
  const double value = adaptive_simpson(integrand, 0.0, std::numbers::pi, kQuadratureTolerance);
  return std::clamp(value, 0.0, model_p1(p.c, p.R));
}

double model_ratio(const GaussianModelParams& params) {
  const double p1 = model_p1(params.c, params.R);
  const double p2 = model_p2(params);
  if (p1 == 0.0) return 1.0;
  return std::clamp(p2 / p1, 0.0, 1.0);
}

}  // namespace sortclust
