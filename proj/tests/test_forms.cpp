#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ritz/forms.hpp"
#include "ritz/report.hpp"

using ritz::Index;
using ritz::Matrix;
using ritz::OperatorRep;
using ritz::Subspace;
using ritz::Vector;

namespace {

std::mt19937_64 rng(777);

Matrix gaussian(Index r, Index c) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = dist(rng);
  return m;
}

Matrix random_spd(Index n) {
  const Matrix g = gaussian(n, n);
  Matrix h = g * g.transpose() + 0.1 * Matrix::Identity(n, n);
  return 0.5 * (h + Matrix(h.transpose()));
}

Subspace unit_vector_subspace(Index n, Index which) {
  Matrix e = Matrix::Zero(n, 1);
  e(which, 0) = 1.0;
  return Subspace::from_orthonormal(e);
}

}  // namespace

TEST_CASE("eta-family Ritz value from the first coordinate is 1/100") {
  const OperatorRep op = OperatorRep::explicit_matrix(ritz::eta_family_matrix(1.0));
  const ritz::RitzData ritz = rayleigh_quotient(op, unit_vector_subspace(2, 0));
  CHECK(ritz.ritzValues(0) == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("Ritz values on an invariant subspace are the eigenvalues") {
  const Matrix h = random_spd(7);
  const ritz::SpectralDecomp d = ritz::symmetric_eig(h);
  const Subspace sub = Subspace::from_orthonormal(d.eigenvectors.leftCols(3));
  const ritz::RitzData ritz =
      rayleigh_quotient(OperatorRep::explicit_matrix(h), sub);
  for (Index i = 0; i < 3; ++i)
    CHECK(std::abs(ritz.ritzValues(i) - d.eigenvalues(i)) <=
          1e-13 * ritz::spectral_norm(h));
}

TEST_CASE("Ritz values sit inside the spectrum on random input") {
  const Matrix h = random_spd(8);
  const ritz::SpectralDecomp d = ritz::symmetric_eig(h);
  const Subspace sub = Subspace::from_columns(gaussian(8, 3));
  const ritz::RitzData ritz =
      rayleigh_quotient(OperatorRep::explicit_matrix(h), sub);
  for (Index i = 0; i < 3; ++i) {
    CHECK(ritz.ritzValues(i) >= d.eigenvalues(0) - 1e-12);
    CHECK(ritz.ritzValues(i) <= d.eigenvalues(7) + 1e-12);
  }
}

TEST_CASE("factor representation reproduces the explicit Rayleigh quotient") {
  const Matrix r = gaussian(6, 6);
  const OperatorRep viaFactor = OperatorRep::factor(r);
  const OperatorRep viaMatrix = OperatorRep::explicit_matrix(viaFactor.materialize());
  const Subspace sub = Subspace::from_columns(gaussian(6, 2));
  const ritz::RitzData a = rayleigh_quotient(viaFactor, sub);
  const ritz::RitzData b = rayleigh_quotient(viaMatrix, sub);
  for (Index i = 0; i < 2; ++i)
    CHECK(a.ritzValues(i) ==
          doctest::Approx(b.ritzValues(i)).epsilon(1e-12));
}

TEST_CASE("block split of the all-ones matrix against e1 is the identity") {
  Matrix h(2, 2);
  h << 1, 1, 1, 1;
  const ritz::BlockSplit split =
      block_split(OperatorRep::explicit_matrix(h), unit_vector_subspace(2, 0));
  CHECK(ritz::max_abs(split.hPrime - Matrix::Identity(2, 2)) <= 1e-14);
  CHECK(split.deltaH(0, 1) == doctest::Approx(1.0));
  CHECK(split.deltaH(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("block split of a diagonal matrix is trivial") {
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = 1.0;
  h(1, 1) = 2.0;
  h(2, 2) = 3.0;
  const ritz::BlockSplit split =
      block_split(OperatorRep::explicit_matrix(h), unit_vector_subspace(3, 0));
  CHECK(ritz::max_abs(split.hPrime - h) == 0.0);
  CHECK(ritz::max_abs(split.deltaH) == 0.0);
}

TEST_CASE("block split of the eta-family against e1") {
  const double eta = 2.0;
  const Matrix h = ritz::eta_family_matrix(eta);
  const OperatorRep op = OperatorRep::explicit_matrix(h);
  const Subspace sub = unit_vector_subspace(2, 0);
  const ritz::BlockSplit split = block_split(op, sub);
  CHECK(split.hPrime(0, 0) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(split.hPrime(1, 1) ==
        doctest::Approx(0.01 + eta * eta).epsilon(1e-14));
  CHECK(split.hPrime(0, 1) == doctest::Approx(0.0));
  CHECK(split.deltaH(0, 1) == doctest::Approx(-0.01).epsilon(1e-14));
  CHECK(split.deltaH(0, 0) == doctest::Approx(0.0));

  const ritz::RitzData ritz = rayleigh_quotient(op, sub);
  CHECK(ritz::spectral_norm(split.hPrime * sub.basis - sub.basis * ritz.xi) <=
        1e-11 * ritz::spectral_norm(h));
}

TEST_CASE("order relation is reflexive and monotone") {
  const Matrix a = random_spd(6);
  const OperatorRep opA = OperatorRep::explicit_matrix(a);
  CHECK(operator_order_leq(opA, opA));

  const Matrix b = gaussian(6, 2);
  Matrix h = a + b * b.transpose();
  h = 0.5 * (h + Matrix(h.transpose()));
  const OperatorRep opH = OperatorRep::explicit_matrix(h);
  CHECK(operator_order_leq(opA, opH));

  const ritz::SpectralDecomp ea = ritz::symmetric_eig(a);
  const ritz::SpectralDecomp eh = ritz::symmetric_eig(h);
  for (Index k = 0; k < 6; ++k)
    CHECK(ea.eigenvalues(k) <=
          eh.eigenvalues(k) + 1e-10 * ritz::spectral_norm(h));
}

TEST_CASE("explicit_matrix validation rejects bad input") {
  Matrix asym(2, 2);
  asym << 1.0, 0.5, 0.2, 1.0;
  CHECK_THROWS_AS(OperatorRep::explicit_matrix(asym), ritz::Error);

  Matrix indefinite(2, 2);
  indefinite << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(OperatorRep::explicit_matrix(indefinite), ritz::Error);
}

TEST_CASE("subspace validation") {
  Matrix notOrtho(3, 2);
  notOrtho << 1, 1, 0, 1, 0, 0;
  CHECK_THROWS_AS(Subspace::from_orthonormal(notOrtho), ritz::Error);
  const Subspace sub = Subspace::from_columns(notOrtho);
  CHECK(sub.dim() == 2);
  CHECK(ritz::max_abs(sub.projector * sub.projector - sub.projector) < 1e-12);
}

TEST_CASE("dimension mismatch is reported") {
  const OperatorRep op = OperatorRep::explicit_matrix(random_spd(4));
  const Subspace sub = Subspace::from_columns(gaussian(5, 2));
  CHECK_THROWS_AS(rayleigh_quotient(op, sub), ritz::Error);
}

TEST_CASE("string operator kind refuses the dense pipeline") {
  const OperatorRep op = OperatorRep::string_operator(2.0);
  const Subspace sub = Subspace::from_columns(gaussian(3, 1));
  CHECK_THROWS_AS(rayleigh_quotient(op, sub), ritz::Error);
  CHECK_THROWS_AS(op.materialize(), ritz::Error);
}
