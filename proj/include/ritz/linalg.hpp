#pragma once

#include "ritz/errors.hpp"
#include "ritz/types.hpp"

namespace ritz {

/// Relative symmetry tolerance: inputs with max|A - A^T| above
/// symTol * max|A| are rejected rather than symmetrized.
inline constexpr double kDefaultSymTol = 1e-12;

/// Numerical-rank cutoff relative to the largest singular value.
inline double default_rank_tol(Index rows, Index cols) {
  return static_cast<double>(std::max(rows, cols)) * 2.22e-16;
}

/// Eigendecomposition A = Q diag(lambda) Q^T with eigenvalues ascending.
struct SpectralDecomp {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // orthonormal columns, same order
};

/// A = U diag(sigma) V^T with singular values descending and >= 0.
struct SvdDecomp {
  Matrix u;
  Vector singularValues;
  Matrix v;
};

struct OrthonormalizeResult {
  Matrix q;       // orthonormal columns spanning the input column space
  Index dropped;  // count of dependent columns removed
};

/// Cyclic Jacobi eigensolver with threshold sweeps; stops when the
/// off-diagonal Frobenius norm falls below 1e-14 * ||A||_F. Chosen over
/// tridiagonalization so that eigenvalues of graded positive semidefinite
/// matrices come out with high relative accuracy.
SpectralDecomp symmetric_eig(const Matrix& a, double symTol = kDefaultSymTol);

/// One-sided Jacobi SVD (rotations orthogonalize column pairs).
SvdDecomp svd(const Matrix& a);

/// Moore-Penrose pseudoinverse; singular values below rankTol * sigma_max
/// are treated as exact zeros. rankTol <= 0 selects the default rule.
Matrix pinv(const Matrix& a, double rankTol = -1.0);

/// Orthonormal basis of the column space; dependent columns are dropped.
/// Throws EmptySpan when every column is numerically null.
OrthonormalizeResult orthonormalize(const Matrix& columns,
                                    double rankTol = -1.0);

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// Orthonormal basis of the orthogonal complement of ran(q) in the ambient
/// space; q must have orthonormal columns.
Matrix orthonormal_complement(const Matrix& q);

/// Symmetric square root of a positive semidefinite matrix. Eigenvalue dust
/// in [-clampTol*max, 0) is clamped to zero; dips below that are an error.
Matrix psd_sqrt(const Matrix& a, double clampTol = 1e-12);

/// Square root of the pseudoinverse: eigenvalues below rankTol * lambda_max
/// map to zero, the rest to 1/sqrt(lambda).
Matrix psd_pinv_sqrt(const Matrix& a, double rankTol = -1.0);

/// Inverse square root of a positive definite matrix; throws
/// SingularOperator when the smallest eigenvalue is at or below
/// rankTol * lambda_max.
Matrix psd_inv_sqrt(const Matrix& a, double rankTol = -1.0);

/// Inverse of a symmetric positive definite matrix via its
/// eigendecomposition; throws SingularOperator on numerical singularity.
Matrix spd_inverse(const Matrix& a, double rankTol = -1.0);

/// max |a_ij|; zero for empty matrices.
double max_abs(const Matrix& a);

void require_finite(const Matrix& a, const char* what);

}  // namespace ritz
