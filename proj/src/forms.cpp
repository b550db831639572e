#include "ritz/forms.hpp"

#include <cmath>

namespace ritz {

OperatorRep OperatorRep::explicit_matrix(const Matrix& h, double symTol) {
  if (h.rows() != h.cols() || h.rows() < 1)
    throw Error(ErrorCode::DimensionMismatch, "operator: square matrix required");
  require_finite(h, "operator");
  const double scale = max_abs(h);
  if (max_abs(h - h.transpose()) > symTol * std::max(scale, 1e-300))
    throw Error(ErrorCode::NotSymmetric, "operator: matrix not symmetric");
  const SpectralDecomp d = symmetric_eig(h, symTol);
  const double top = max_abs(Matrix(d.eigenvalues));
  if (d.eigenvalues.minCoeff() < -1e-12 * std::max(top, 1e-300))
    throw Error(ErrorCode::NotPositiveSemidefinite,
                "operator: smallest eigenvalue " +
                    std::to_string(d.eigenvalues.minCoeff()) +
                    " below nonnegativity slack");
  OperatorRep op;
  op.kind = Kind::ExplicitMatrix;
  op.stored = 0.5 * (h + h.transpose());
  return op;
}

OperatorRep OperatorRep::factor(const Matrix& r) {
  if (r.rows() < 1 || r.cols() < 1)
    throw Error(ErrorCode::DimensionMismatch, "factor: empty matrix");
  require_finite(r, "factor");
  OperatorRep op;
  op.kind = Kind::Factor;
  op.stored = r;
  return op;
}

OperatorRep OperatorRep::string_operator(double eta) {
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw Error(ErrorCode::InvalidInput, "string operator: eta must be finite and >= 0");
  OperatorRep op;
  op.kind = Kind::StringOperator;
  op.eta = eta;
  return op;
}

Index OperatorRep::dimension() const {
  if (!is_matrix_kind())
    throw Error(ErrorCode::InvalidInput,
                "string operator has no finite dimension");
  return stored.cols();
}

Matrix OperatorRep::materialize() const {
  switch (kind) {
    case Kind::ExplicitMatrix:
      return stored;
    case Kind::Factor: {
      Matrix h = stored.transpose() * stored;
      return 0.5 * (h + Matrix(h.transpose()));
    }
    case Kind::StringOperator:
      break;
  }
  throw Error(ErrorCode::InvalidInput,
              "string operator cannot be materialized; use the string_model "
              "pipeline");
}

Vector OperatorRep::apply(const Vector& u) const {
  if (kind == Kind::Factor) return stored.transpose() * (stored * u);
  return materialize() * u;
}

Subspace Subspace::from_orthonormal(const Matrix& x) {
  if (x.rows() < 1 || x.cols() < 1)
    throw Error(ErrorCode::DimensionMismatch, "subspace: empty basis");
  require_finite(x, "subspace");
  if (max_abs(x.transpose() * x - Matrix::Identity(x.cols(), x.cols())) > 1e-12)
    throw Error(ErrorCode::InvalidInput, "subspace: basis not orthonormal");
  Subspace s;
  s.basis = x;
  s.projector = x * x.transpose();
  s.projector = 0.5 * (s.projector + Matrix(s.projector.transpose()));
  return s;
}

Subspace Subspace::from_columns(const Matrix& columns, double rankTol) {
  OrthonormalizeResult r = orthonormalize(columns, rankTol);
  Subspace s = from_orthonormal(r.q);
  s.droppedColumns = r.dropped;
  return s;
}

namespace {

void require_compatible(const OperatorRep& op, const Subspace& sub,
                        const char* what) {
  if (!op.is_matrix_kind())
    throw Error(ErrorCode::InvalidInput,
                std::string(what) + ": analytic string operator not supported "
                                    "here; use the string_model pipeline");
  if (op.dimension() != sub.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": operator and subspace dimensions differ");
  if (sub.dim() > op.dimension())
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": subspace larger than ambient space");
}

}  // namespace

RitzData rayleigh_quotient(const OperatorRep& op, const Subspace& sub) {
  require_compatible(op, sub, "rayleigh_quotient");
  Matrix xi;
  if (op.kind == OperatorRep::Kind::Factor) {
    const Matrix rx = op.stored * sub.basis;
    xi = rx.transpose() * rx;
  } else {
    xi = sub.basis.transpose() * op.stored * sub.basis;
  }
  xi = 0.5 * (xi + Matrix(xi.transpose()));
  const SpectralDecomp d = symmetric_eig(xi);
  RitzData out;
  out.xi = xi;
  out.ritzValues = d.eigenvalues;
  out.ritzVectors = sub.basis * d.eigenvectors;
  return out;
}

BlockSplit block_split(const OperatorRep& op, const Subspace& sub) {
  require_compatible(op, sub, "block_split");
  const Matrix h = op.materialize();
  const Matrix& p = sub.projector;
  const Matrix pc = sub.complement_projector();
  Matrix hp = p * h * p + pc * h * pc;
  hp = 0.5 * (hp + Matrix(hp.transpose()));
  BlockSplit out;
  out.hPrime = hp;
  out.deltaH = h - hp;
  return out;
}

bool operator_order_leq(const OperatorRep& a, const OperatorRep& h) {
  if (!a.is_matrix_kind() || !h.is_matrix_kind())
    throw Error(ErrorCode::InvalidInput,
                "operator_order_leq: matrix kinds required");
  if (a.dimension() != h.dimension())
    throw Error(ErrorCode::DimensionMismatch,
                "operator_order_leq: dimension mismatch");
  const Matrix hm = h.materialize();
  const Matrix diff = hm - a.materialize();
  const SpectralDecomp d = symmetric_eig(0.5 * (diff + Matrix(diff.transpose())));
  return d.eigenvalues.minCoeff() >= -1e-12 * std::max(spectral_norm(hm), 1e-300);
}

}  // namespace ritz
