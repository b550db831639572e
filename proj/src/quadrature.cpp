#include "ritz/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ritz/errors.hpp"

namespace ritz {

QuadratureRule gauss_legendre(int points) {
  if (points < 1)
    throw Error(ErrorCode::InvalidInput, "gauss_legendre: points >= 1");
  QuadratureRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= points; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = points * (z * p1 - p2) / (z * z - 1.0);
      const double dz = -p1 / pp;
      z += dz;
      if (std::abs(dz) < std::numeric_limits<double>::epsilon()) break;
    }
    rule.nodes(i) = -z;
    rule.nodes(points - 1 - i) = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights(i) = w;
    rule.weights(points - 1 - i) = w;
  }
  return rule;
}

namespace {

const QuadratureRule& rule16() {
  static const QuadratureRule rule = gauss_legendre(16);
  return rule;
}

}  // namespace

double integrate_composite(const std::function<double(double)>& f, double a,
                           double b, int panels) {
  const QuadratureRule& rule = rule16();
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double acc = 0.0;
    for (Index i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights(i) * f(mid + 0.5 * h * rule.nodes(i));
    total += 0.5 * h * acc;
  }
  return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, int panels, double tol) {
  if (b <= a) return 0.0;
  panels = std::max(panels, 1);
  double prev = integrate_composite(f, a, b, panels);
  for (int round = 0; round < 20; ++round) {
    panels *= 2;
    const double next = integrate_composite(f, a, b, panels);
    if (std::abs(next - prev) < tol) return next;
    prev = next;
  }
  throw Error(ErrorCode::NoConvergence,
              "integrate_adaptive: refinement stalled above tolerance");
}

double integrate_pieces(const std::function<double(double)>& f,
                        const std::vector<double>& breakpoints, int panels,
                        double tol) {
  if (breakpoints.size() < 2)
    throw Error(ErrorCode::InvalidInput, "integrate_pieces: need an interval");
  double total = 0.0;
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
    total += integrate_adaptive(f, breakpoints[i], breakpoints[i + 1], panels,
                                tol / static_cast<double>(breakpoints.size()));
  return total;
}

}  // namespace ritz
