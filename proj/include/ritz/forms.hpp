#pragma once

#include <limits>

#include "ritz/linalg.hpp"

namespace ritz {

/// A symmetric nonnegative operator: an explicit dense matrix H, a factor R
/// with h(u,v) = (Ru, Rv), or the analytic string operator indexed by eta
/// (handled by the string_model functions, not by the dense pipeline).
struct OperatorRep {
  enum class Kind { ExplicitMatrix, Factor, StringOperator };

  Kind kind = Kind::ExplicitMatrix;
  Matrix stored;  // H for ExplicitMatrix, R for Factor; empty for the string
  double eta = 0.0;
  double essentialSpectrumBottom = std::numeric_limits<double>::infinity();

  /// Validates symmetry and nonnegativity up to roundoff (eigenvalue dust
  /// below -1e-12*||H|| is tolerated, anything worse is rejected).
  static OperatorRep explicit_matrix(const Matrix& h,
                                     double symTol = kDefaultSymTol);
  static OperatorRep factor(const Matrix& r);
  static OperatorRep string_operator(double eta);

  bool is_matrix_kind() const { return kind != Kind::StringOperator; }
  Index dimension() const;

  /// Dense H (assembles R^T R for the factor kind).
  Matrix materialize() const;

  /// H applied to a vector without forming R^T R twice.
  Vector apply(const Vector& u) const;
};

/// Orthonormal basis X of the test space together with P = X X^T.
struct Subspace {
  Matrix basis;
  Matrix projector;
  Index droppedColumns = 0;

  /// Accepts an already orthonormal basis (validated to 1e-12).
  static Subspace from_orthonormal(const Matrix& x);
  /// Orthonormalizes arbitrary independent columns, dropping dependent ones.
  static Subspace from_columns(const Matrix& columns, double rankTol = -1.0);

  Index dim() const { return basis.cols(); }
  Index ambient_dim() const { return basis.rows(); }
  Matrix complement_projector() const {
    return Matrix::Identity(ambient_dim(), ambient_dim()) - projector;
  }
};

/// Rayleigh quotient Xi = X^T H X, its ascending eigenvalues (the Ritz
/// values) and the Ritz vectors lifted back to the ambient space.
struct RitzData {
  Matrix xi;
  Vector ritzValues;
  Matrix ritzVectors;
};

/// h = h' + delta h with respect to a test subspace: hPrime is the block
/// diagonal part P H P + Pc H Pc, deltaH the off-diagonal remainder stored
/// as H - hPrime so the two add back to H.
struct BlockSplit {
  Matrix hPrime;
  Matrix deltaH;
};

RitzData rayleigh_quotient(const OperatorRep& op, const Subspace& sub);

BlockSplit block_split(const OperatorRep& op, const Subspace& sub);

/// Form order a <= h: true iff H - A is positive semidefinite up to
/// -1e-12*||H|| eigenvalue slack.
bool operator_order_leq(const OperatorRep& a, const OperatorRep& h);

}  // namespace ritz
