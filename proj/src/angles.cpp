#include "ritz/angles.hpp"

#include <cmath>
#include <numbers>

namespace ritz {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kAngleClassifyTol = 1e-8;

double clamp_unit(double x, int& clampEvents) {
  if (x < 0.0 || x > 1.0) {
    ++clampEvents;
    return std::min(1.0, std::max(0.0, x));
  }
  return x;
}

// sin(arccos(sigma)) without forming the angle.
double sine_from_cosine(double sigma) {
  return std::sqrt(std::max(0.0, (1.0 - sigma) * (1.0 + sigma)));
}

// Eq.-style fallback for degenerate angle sets: the smaller of the two
// projector defect norms.
double min_projector_defect(const Matrix& u, const Matrix& v) {
  const Index n = u.rows();
  const Matrix pu = u * u.transpose();
  const Matrix pv = v * v.transpose();
  const Matrix id = Matrix::Identity(n, n);
  return std::min(spectral_norm(pu * (id - pv)), spectral_norm(pv * (id - pu)));
}

}  // namespace

AngleReport canonical_angles(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows())
    throw Error(ErrorCode::DimensionMismatch,
                "canonical_angles: ambient dimensions differ");
  if (u.cols() < 1 || v.cols() < 1)
    throw Error(ErrorCode::DimensionMismatch, "canonical_angles: empty basis");

  AngleReport report;
  const SvdDecomp d = svd(Matrix(v.transpose() * u));
  const Index count = d.singularValues.size();
  report.canonicalAngles.resize(count);
  double maxSine = 0.0;
  double maxAcuteSine = -1.0;
  for (Index i = 0; i < count; ++i) {
    const double sigma = clamp_unit(d.singularValues(i), report.clampedSines);
    const double theta = std::acos(sigma);
    report.canonicalAngles(i) = theta;
    maxSine = std::max(maxSine, sine_from_cosine(sigma));
    if (theta > kAngleClassifyTol && theta < kHalfPi - kAngleClassifyTol)
      maxAcuteSine = std::max(maxAcuteSine, sine_from_cosine(sigma));
  }
  report.sinTheta = (u.cols() == v.cols()) ? maxSine : 1.0;
  report.sinThetaP = maxAcuteSine >= 0.0
                         ? maxAcuteSine
                         : clamp_unit(min_projector_defect(u, v),
                                      report.clampedSines);
  if (report.sinThetaP < 1.0 - 1e-12)
    report.etaThetaP = report.sinThetaP / (1.0 - report.sinThetaP);
  return report;
}

IsometryPair build_isometries(const OperatorRep& op, const Subspace& sub,
                              double rankTol) {
  const Matrix h = op.materialize();
  const Matrix hs = psd_sqrt(h);
  const BlockSplit split = block_split(op, sub);
  const Matrix hpPinvSqrt = psd_pinv_sqrt(split.hPrime, rankTol);
  IsometryPair pair;
  pair.v = hs * sub.projector * hpPinvSqrt;
  pair.w = hs * sub.complement_projector() * hpPinvSqrt;
  pair.deltaHs = pair.v.transpose() * pair.w + pair.w.transpose() * pair.v;
  return pair;
}

Matrix inverse_image(const OperatorRep& op, const Subspace& sub,
                     double rankTol) {
  const Matrix h = op.materialize();
  if (rankTol <= 0.0) rankTol = default_rank_tol(h.rows(), h.cols());
  const SpectralDecomp d = symmetric_eig(h);
  const double cutoff = rankTol * std::max(d.eigenvalues.maxCoeff(), 0.0);

  const Index n = h.rows();
  Index kernelDim = 0;
  while (kernelDim < n && d.eigenvalues(kernelDim) <= cutoff) ++kernelDim;
  const Matrix kernel = d.eigenvectors.leftCols(kernelDim);
  const Matrix range = d.eigenvectors.rightCols(n - kernelDim);

  // ran(X) intersected with ran(H): eigenvectors of P_X + P_ran with
  // eigenvalue 2.
  Matrix pieces(n, 0);
  if (range.cols() > 0) {
    const Matrix sum = sub.projector + range * range.transpose();
    const SpectralDecomp ds = symmetric_eig(0.5 * (sum + Matrix(sum.transpose())));
    Index hits = 0;
    for (Index i = ds.eigenvalues.size() - 1; i >= 0; --i)
      if (ds.eigenvalues(i) > 2.0 - 1e-9) ++hits;
    if (hits > 0) {
      Vector invRoots = Vector::Zero(n);
      for (Index i = kernelDim; i < n; ++i)
        invRoots(i) = 1.0 / std::sqrt(d.eigenvalues(i));
      const Matrix pinvSqrt = d.eigenvectors * invRoots.asDiagonal() *
                              d.eigenvectors.transpose();
      pieces = pinvSqrt * ds.eigenvectors.rightCols(hits);
    }
  }

  Matrix combined(n, pieces.cols() + kernel.cols());
  combined << pieces, kernel;
  if (combined.cols() == 0)
    throw Error(ErrorCode::EmptySpan, "inverse_image: empty result space");
  return orthonormalize(combined, rankTol).q;
}

double sin_theta_inverse_route(const OperatorRep& op, const Subspace& sub,
                               double rankTol) {
  const Matrix h = op.materialize();
  const Matrix hInv = spd_inverse(h, rankTol);  // throws on singular H
  const BlockSplit split = block_split(op, sub);
  const Matrix hpInv = spd_inverse(split.hPrime, rankTol);
  const Matrix& x = sub.basis;
  Matrix a = x.transpose() * (hInv - hpInv) * x;
  a = 0.5 * (a + Matrix(a.transpose()));
  Matrix b = x.transpose() * hInv * x;
  b = 0.5 * (b + Matrix(b.transpose()));
  const Matrix bInvSqrt = psd_inv_sqrt(b, rankTol);
  Matrix pencil = bInvSqrt * a * bInvSqrt;
  pencil = 0.5 * (pencil + Matrix(pencil.transpose()));
  const SpectralDecomp d = symmetric_eig(pencil);
  const double sinSq = std::min(1.0, std::max(0.0, d.eigenvalues.maxCoeff()));
  return std::sqrt(sinSq);
}

AngleReport sin_theta_residual(const OperatorRep& op, const Subspace& sub,
                               double rankTol) {
  const Matrix h = op.materialize();
  if (rankTol <= 0.0) rankTol = default_rank_tol(h.rows(), h.cols());

  const IsometryPair pair = build_isometries(op, sub, rankTol);
  int clampEvents = 0;
  const double routeIsometry =
      clamp_unit(spectral_norm(Matrix(pair.v.transpose() * pair.w)), clampEvents);

  const Matrix vSpan = orthonormalize(pair.v, rankTol).q;
  const Matrix wSpace = inverse_image(op, sub, rankTol);
  AngleReport report = canonical_angles(vSpan, wSpace);
  report.clampedSines += clampEvents;
  report.sinThetaP = routeIsometry;
  report.sinTheta = (vSpan.cols() == wSpace.cols())
                        ? std::max(report.sinTheta, routeIsometry)
                        : 1.0;

  const SpectralDecomp dh = symmetric_eig(h);
  const bool positiveDefinite =
      dh.eigenvalues.minCoeff() > rankTol * std::max(dh.eigenvalues.maxCoeff(), 0.0);
  if (positiveDefinite) {
    const double routePencil = sin_theta_inverse_route(op, sub, rankTol);
    report.crossCheckGap = std::abs(routePencil - routeIsometry);
  }

  report.etaThetaP.reset();
  if (report.sinThetaP < 1.0 - 1e-12)
    report.etaThetaP = report.sinThetaP / (1.0 - report.sinThetaP);
  return report;
}

double drmac_ratio(const OperatorRep& op, const Subspace& sub, double rankTol) {
  const Matrix h = op.materialize();
  const Matrix hInvSqrt = psd_inv_sqrt(h, rankTol);  // throws on singular H
  const BlockSplit split = block_split(op, sub);
  return spectral_norm(hInvSqrt * split.deltaH * hInvSqrt);
}

}  // namespace ritz
