#pragma once

#include <optional>

#include "ritz/forms.hpp"

namespace ritz {

/// Subspace geometry between two spaces: canonical angles, the sine of the
/// maximal canonical angle (1 when the dimensions differ), the sine of the
/// maximal acute principal angle, and eta = sin/(1-sin) when defined.
struct AngleReport {
  Vector canonicalAngles;  // radians, ascending, min(dim,dim) entries
  double sinTheta = 0.0;
  double sinThetaP = 0.0;
  std::optional<double> etaThetaP;      // empty when sinThetaP == 1
  std::optional<double> crossCheckGap;  // |pencil route - isometry route|
  int clampedSines = 0;                 // roundoff clamps into [0,1]
};

/// V = H^{1/2} P Hp^{+1/2} and W = H^{1/2} Pc Hp^{+1/2} together with the
/// scaled off-diagonal operator deltaHs = V^T W + W^T V.
struct IsometryPair {
  Matrix v;
  Matrix w;
  Matrix deltaHs;
};

/// Canonical angles between ran(u) and ran(v), both given by orthonormal
/// columns in the same ambient space.
AngleReport canonical_angles(const Matrix& u, const Matrix& v);

IsometryPair build_isometries(const OperatorRep& op, const Subspace& sub,
                              double rankTol = -1.0);

/// Orthonormal basis of {x : H^{1/2} x in ran(X)}, assembled as the
/// pseudoinverse root applied to ran(X) intersected with ran(H), plus the
/// kernel of H.
Matrix inverse_image(const OperatorRep& op, const Subspace& sub,
                     double rankTol = -1.0);

/// The energy-scaled residual measure. sinThetaP always comes from the
/// partial-isometry route ||V^T W||; for positive definite operators the
/// report also carries the gap against the inverse-pencil route.
AngleReport sin_theta_residual(const OperatorRep& op, const Subspace& sub,
                               double rankTol = -1.0);

/// The inverse-pencil route alone: largest generalized eigenvalue of
/// X^T(H^-1 - Hp^-1)X against X^T H^-1 X. Throws SingularOperator when H is
/// numerically singular.
double sin_theta_inverse_route(const OperatorRep& op, const Subspace& sub,
                               double rankTol = -1.0);

/// ||H^-1/2 deltaH H^-1/2||, the scaled maximum of |delta h(u,v)| over unit
/// energy vectors; equals sinTheta/(1-sinTheta) for definite operators.
double drmac_ratio(const OperatorRep& op, const Subspace& sub,
                   double rankTol = -1.0);

}  // namespace ritz
