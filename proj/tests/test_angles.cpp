#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ritz/angles.hpp"
#include "ritz/report.hpp"

using ritz::Index;
using ritz::Matrix;
using ritz::OperatorRep;
using ritz::Subspace;
using ritz::Vector;

namespace {

std::mt19937_64 rng(4242);

Matrix gaussian(Index r, Index c) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = dist(rng);
  return m;
}

Matrix random_spd(Index n) {
  const Matrix g = gaussian(n, n);
  Matrix h = g * g.transpose() + 0.05 * Matrix::Identity(n, n);
  return 0.5 * (h + Matrix(h.transpose()));
}

Subspace e1_subspace(Index n) {
  Matrix e = Matrix::Zero(n, 1);
  e(0, 0) = 1.0;
  return Subspace::from_orthonormal(e);
}

Matrix column(double a, double b) {
  Matrix m(2, 1);
  m << a, b;
  return m;
}

// sine of the maximal principal angle; resolves near-equal spans far below
// the arccos floor of sqrt(eps)
double span_gap(const Matrix& a, const Matrix& b) {
  const Index n = a.rows();
  const Matrix pa = a * a.transpose();
  const Matrix pb = b * b.transpose();
  const Matrix id = Matrix::Identity(n, n);
  return std::max(ritz::spectral_norm((id - pb) * a),
                  ritz::spectral_norm((id - pa) * b));
}

}  // namespace

TEST_CASE("canonical angles of a space with itself vanish") {
  const Matrix q = ritz::orthonormalize(gaussian(6, 3)).q;
  const ritz::AngleReport rep = ritz::canonical_angles(q, q);
  CHECK(rep.canonicalAngles.maxCoeff() < 1e-7);
  CHECK(rep.sinTheta < 1e-7);
  CHECK(rep.sinThetaP < 1e-7);
}

TEST_CASE("orthogonal coordinate spans meet at a right angle") {
  Matrix e1 = Matrix::Zero(3, 1), e2 = Matrix::Zero(3, 1);
  e1(0, 0) = 1.0;
  e2(1, 0) = 1.0;
  const ritz::AngleReport rep = ritz::canonical_angles(e1, e2);
  CHECK(rep.canonicalAngles(0) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
  CHECK(rep.sinTheta == doctest::Approx(1.0));
  CHECK(rep.sinThetaP == doctest::Approx(1.0));
  CHECK(!rep.etaThetaP.has_value());
}

TEST_CASE("diagonal spans of the plane are orthogonal to each other") {
  const double inv = 1.0 / std::sqrt(2.0);
  const ritz::AngleReport rep =
      ritz::canonical_angles(column(inv, inv), column(-inv, inv));
  CHECK(rep.canonicalAngles(0) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK(rep.sinThetaP == doctest::Approx(1.0));
}

TEST_CASE("isometries of an invariant subspace decouple") {
  const Matrix h = random_spd(6);
  const ritz::SpectralDecomp d = ritz::symmetric_eig(h);
  const Subspace sub = Subspace::from_orthonormal(d.eigenvectors.leftCols(2));
  const ritz::IsometryPair pair =
      build_isometries(OperatorRep::explicit_matrix(h), sub);
  CHECK(ritz::spectral_norm(Matrix(pair.w.transpose() * pair.v)) < 1e-10);
  CHECK(ritz::spectral_norm(pair.deltaHs) < 1e-10);
}

TEST_CASE("degenerate example: V and W spans for the all-ones matrix") {
  Matrix h(2, 2);
  h << 1, 1, 1, 1;
  const OperatorRep op = OperatorRep::explicit_matrix(h);
  const Subspace sub = e1_subspace(2);
  const ritz::IsometryPair pair = build_isometries(op, sub);

  const double inv = 1.0 / std::sqrt(2.0);
  const Matrix vSpan = ritz::orthonormalize(pair.v).q;
  CHECK(vSpan.cols() == 1);
  CHECK(span_gap(vSpan, column(inv, inv)) < 1e-12);

  const Matrix wPerp = ritz::inverse_image(op, sub);
  CHECK(wPerp.cols() == 1);
  CHECK(span_gap(wPerp, column(-inv, inv)) < 1e-12);

  CHECK(ritz::spectral_norm(Matrix(pair.v.transpose() * pair.w)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("||deltaHs|| equals ||V^T W|| on random input") {
  const Matrix h = random_spd(7);
  const Subspace sub = Subspace::from_columns(gaussian(7, 3));
  const ritz::IsometryPair pair =
      build_isometries(OperatorRep::explicit_matrix(h), sub);
  const double lhs = ritz::spectral_norm(pair.deltaHs);
  const double rhs = ritz::spectral_norm(Matrix(pair.v.transpose() * pair.w));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("inverse image reduces to H^-1/2 X for definite operators") {
  const Matrix h = random_spd(5);
  const Subspace sub = Subspace::from_columns(gaussian(5, 2));
  const OperatorRep op = OperatorRep::explicit_matrix(h);
  const Matrix computed = ritz::inverse_image(op, sub);
  const Matrix direct =
      ritz::orthonormalize(ritz::psd_pinv_sqrt(h) * sub.basis).q;
  CHECK(computed.cols() == direct.cols());
  CHECK(span_gap(computed, direct) < 1e-10);
}

TEST_CASE("inverse image of the all-ones example is the kernel") {
  Matrix h(2, 2);
  h << 1, 1, 1, 1;
  const Matrix w = ritz::inverse_image(OperatorRep::explicit_matrix(h),
                                       e1_subspace(2));
  const double inv = 1.0 / std::sqrt(2.0);
  CHECK(w.cols() == 1);
  CHECK(span_gap(w, column(-inv, inv)) < 1e-12);
}

TEST_CASE("inverse image matches a least-squares + kernel oracle") {
  // PSD with a known kernel and a test space orthogonal to it
  const Index n = 8, rank = 6, k = 3;
  const Matrix basis = ritz::orthonormalize(gaussian(n, n)).q;
  const Matrix range = basis.leftCols(rank);
  const Matrix kernel = basis.rightCols(n - rank);
  Vector spectrum(rank);
  for (Index i = 0; i < rank; ++i) spectrum(i) = std::pow(10.0, -1.0 + 0.4 * double(i));
  Matrix h = range * spectrum.asDiagonal() * range.transpose();
  h = 0.5 * (h + Matrix(h.transpose()));

  const Subspace sub =
      Subspace::from_columns(range * gaussian(rank, k));  // X inside ran(H)
  const OperatorRep op = OperatorRep::explicit_matrix(h);
  const Matrix computed = ritz::inverse_image(op, sub);

  // oracle: min-norm solutions of H^{1/2} u = x_i through a reference
  // decomposition, plus the kernel
  Eigen::SelfAdjointEigenSolver<Matrix> ref(h);
  const Vector clamped = ref.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Matrix refSqrt =
      ref.eigenvectors() * clamped.asDiagonal() * ref.eigenvectors().transpose();
  Matrix stack(n, k + (n - rank));
  for (Index i = 0; i < k; ++i) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(refSqrt);
    stack.col(i) = cod.solve(sub.basis.col(i));
  }
  stack.rightCols(n - rank) = kernel;
  const Matrix oracle = ritz::orthonormalize(stack).q;

  CHECK(computed.cols() == oracle.cols());
  CHECK(span_gap(computed, oracle) < 1e-9);
}

TEST_CASE("eta-family residual measure matches the closed form") {
  for (double eta : {1.0, 2.0, 3.0}) {
    const OperatorRep op =
        OperatorRep::explicit_matrix(ritz::eta_family_matrix(eta));
    const ritz::AngleReport rep = sin_theta_residual(op, e1_subspace(2));
    const double closed = ritz::eta_family_sin_theta(eta);
    CHECK(rep.sinThetaP == doctest::Approx(closed).epsilon(1e-11));
    CHECK(rep.sinTheta == doctest::Approx(closed).epsilon(1e-11));
    REQUIRE(rep.crossCheckGap.has_value());
    CHECK(*rep.crossCheckGap < 1e-11);
  }
  const ritz::AngleReport one = sin_theta_residual(
      OperatorRep::explicit_matrix(ritz::eta_family_matrix(1.0)),
      e1_subspace(2));
  CHECK(one.sinThetaP == doctest::Approx(0.09950371902).epsilon(1e-10));
}

TEST_CASE("residual measure vanishes exactly on invariant subspaces") {
  const Matrix h = random_spd(6);
  const ritz::SpectralDecomp d = ritz::symmetric_eig(h);
  const Subspace sub = Subspace::from_orthonormal(d.eigenvectors.leftCols(2));
  const ritz::AngleReport rep =
      sin_theta_residual(OperatorRep::explicit_matrix(h), sub);
  CHECK(rep.sinThetaP < 1e-8);
}

TEST_CASE("both residual routes agree on random definite input") {
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix h = random_spd(10);
    const Subspace sub = Subspace::from_columns(gaussian(10, 3));
    const ritz::AngleReport rep =
        sin_theta_residual(OperatorRep::explicit_matrix(h), sub);
    REQUIRE(rep.crossCheckGap.has_value());
    CHECK(*rep.crossCheckGap <= 1e-9);
  }
}

TEST_CASE("pencil route alone refuses singular operators") {
  Matrix h(2, 2);
  h << 1, 1, 1, 1;
  CHECK_THROWS_AS(ritz::sin_theta_inverse_route(
                      OperatorRep::explicit_matrix(h), e1_subspace(2)),
                  ritz::Error);
}

TEST_CASE("scaled off-diagonal ratio vanishes on invariant subspaces") {
  const Matrix h = random_spd(5);
  const ritz::SpectralDecomp d = ritz::symmetric_eig(h);
  const Subspace sub = Subspace::from_orthonormal(d.eigenvectors.leftCols(1));
  CHECK(ritz::drmac_ratio(OperatorRep::explicit_matrix(h), sub) < 1e-9);
}

TEST_CASE("scaled off-diagonal ratio equals sin/(1-sin) on the eta family") {
  const OperatorRep op =
      OperatorRep::explicit_matrix(ritz::eta_family_matrix(1.0));
  const double ratio = ritz::drmac_ratio(op, e1_subspace(2));
  const double s = ritz::eta_family_sin_theta(1.0);
  CHECK(ratio == doctest::Approx(s / (1.0 - s)).epsilon(1e-11));
  CHECK(ratio == doctest::Approx(0.110499).epsilon(1e-5));
}

TEST_CASE("scaled off-diagonal ratio matches the residual measure generally") {
  const Matrix h = random_spd(9);
  const Subspace sub = Subspace::from_columns(gaussian(9, 4));
  const OperatorRep op = OperatorRep::explicit_matrix(h);
  const ritz::AngleReport rep = sin_theta_residual(op, sub);
  REQUIRE(rep.etaThetaP.has_value());
  CHECK(ritz::drmac_ratio(op, sub) ==
        doctest::Approx(*rep.etaThetaP).epsilon(1e-9));
}
