#pragma once

#include <functional>
#include <vector>

#include "ritz/types.hpp"

namespace ritz {

/// Nodes and weights on [-1, 1].
struct QuadratureRule {
  Vector nodes;
  Vector weights;
};

/// Gauss-Legendre rule computed by Newton iteration on the Legendre
/// polynomial roots.
QuadratureRule gauss_legendre(int points);

/// Composite 16-point Gauss-Legendre over [a, b] with `panels` uniform
/// panels.
double integrate_composite(const std::function<double(double)>& f, double a,
                           double b, int panels);

/// Panel doubling until two successive composite values differ by less than
/// tol; starts from `panels` panels.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, int panels, double tol);

/// Adaptive integration over smooth pieces delimited by ascending
/// breakpoints.
double integrate_pieces(const std::function<double(double)>& f,
                        const std::vector<double>& breakpoints, int panels,
                        double tol);

}  // namespace ritz
