#include "ritz/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ritz {

namespace {

// Tail of the full Householder Q of q, i.e. an orthonormal basis of the
// complement of the column space.
Matrix householder_complement(const Matrix& q) {
  const Index m = q.rows();
  const Index r = q.cols();
  if (r >= m) return Matrix(m, 0);
  Eigen::HouseholderQR<Matrix> qr(q);
  Matrix full = qr.householderQ();
  return full.rightCols(m - r);
}

void canonicalize_column_sign(Matrix& m, Index col) {
  Index at = 0;
  m.col(col).cwiseAbs().maxCoeff(&at);
  if (m(at, col) < 0.0) m.col(col) = -m.col(col);
}

double off_diagonal_norm(const Matrix& s) {
  double acc = 0.0;
  for (Index p = 0; p < s.rows(); ++p)
    for (Index q = p + 1; q < s.cols(); ++q) acc += 2.0 * s(p, q) * s(p, q);
  return std::sqrt(acc);
}

}  // namespace

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite())
    throw Error(ErrorCode::InvalidInput,
                std::string(what) + ": non-finite entries");
}

SpectralDecomp symmetric_eig(const Matrix& a, double symTol) {
  const Index n = a.rows();
  if (n < 1 || a.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "symmetric_eig: square matrix required");
  require_finite(a, "symmetric_eig");

  const double scale = max_abs(a);
  const double asym = max_abs(a - a.transpose());
  if (asym > symTol * std::max(scale, 1e-300))
    throw Error(ErrorCode::NotSymmetric,
                "symmetric_eig: input asymmetry " + std::to_string(asym) +
                    " exceeds tolerance");

  Matrix s = 0.5 * (a + a.transpose());
  Matrix q = Matrix::Identity(n, n);

  const double stopTol = 1e-14 * s.norm();
  const double pairTol = stopTol / (2.0 * static_cast<double>(n));
  const int maxSweeps = 64;

  int sweep = 0;
  for (; sweep < maxSweeps; ++sweep) {
    if (off_diagonal_norm(s) <= stopTol) break;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index r = p + 1; r < n; ++r) {
        const double apr = s(p, r);
        if (std::abs(apr) <= pairTol) continue;
        const double app = s(p, p);
        const double arr = s(r, r);
        const double theta = (arr - app) / (2.0 * apr);
        double t;
        if (std::abs(theta) > 1e153) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        s(p, p) = app - t * apr;
        s(r, r) = arr + t * apr;
        s(p, r) = 0.0;
        s(r, p) = 0.0;
        for (Index k = 0; k < n; ++k) {
          if (k == p || k == r) continue;
          const double skp = s(k, p);
          const double skr = s(k, r);
          s(k, p) = c * skp - sn * skr;
          s(p, k) = s(k, p);
          s(k, r) = sn * skp + c * skr;
          s(r, k) = s(k, r);
        }
        for (Index k = 0; k < n; ++k) {
          const double qkp = q(k, p);
          const double qkr = q(k, r);
          q(k, p) = c * qkp - sn * qkr;
          q(k, r) = sn * qkp + c * qkr;
        }
      }
    }
  }
  if (sweep == maxSweeps && off_diagonal_norm(s) > stopTol)
    throw Error(ErrorCode::NoConvergence, "symmetric_eig: sweep limit exceeded");

  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&s](Index i, Index j) { return s(i, i) < s(j, j); });

  SpectralDecomp out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = s(order[static_cast<size_t>(i)], order[static_cast<size_t>(i)]);
    out.eigenvectors.col(i) = q.col(order[static_cast<size_t>(i)]);
    canonicalize_column_sign(out.eigenvectors, i);
  }
  return out;
}

SvdDecomp svd(const Matrix& a) {
  if (a.rows() < 1 || a.cols() < 1)
    throw Error(ErrorCode::DimensionMismatch, "svd: empty matrix");
  require_finite(a, "svd");

  const bool transposed = a.rows() < a.cols();
  Matrix b = transposed ? Matrix(a.transpose()) : a;
  const Index m = b.rows();
  const Index n = b.cols();
  Matrix v = Matrix::Identity(n, n);

  const double tol = 1e-15;
  const int maxSweeps = 64;
  int sweep = 0;
  for (; sweep < maxSweeps; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index r = p + 1; r < n; ++r) {
        const double alpha = b.col(p).squaredNorm();
        const double beta = b.col(r).squaredNorm();
        const double gamma = b.col(p).dot(b.col(r));
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        double t;
        if (std::abs(zeta) > 1e153) {
          t = 1.0 / (2.0 * zeta);
        } else {
          t = 1.0 / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
          if (zeta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = c * t;
        const Vector bp = b.col(p);
        b.col(p) = c * bp - sn * b.col(r);
        b.col(r) = sn * bp + c * b.col(r);
        const Vector vp = v.col(p);
        v.col(p) = c * vp - sn * v.col(r);
        v.col(r) = sn * vp + c * v.col(r);
      }
    }
    if (!rotated) break;
  }
  if (sweep == maxSweeps)
    throw Error(ErrorCode::NoConvergence, "svd: sweep limit exceeded");

  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&b](Index i, Index j) {
    return b.col(i).norm() > b.col(j).norm();
  });

  SvdDecomp out;
  out.singularValues.resize(n);
  out.u.resize(m, n);
  out.v.resize(n, n);
  Index rank = 0;
  for (Index i = 0; i < n; ++i) {
    const Index src = order[static_cast<size_t>(i)];
    const double sigma = b.col(src).norm();
    out.singularValues(i) = sigma;
    out.v.col(i) = v.col(src);
    if (sigma > 0.0) {
      out.u.col(i) = b.col(src) / sigma;
      ++rank;
    } else {
      out.u.col(i).setZero();
    }
  }
  if (rank < n) {
    // fill the U columns of zero singular values with complement directions
    Matrix comp = rank == 0 ? Matrix::Identity(m, m)
                            : householder_complement(out.u.leftCols(rank));
    for (Index i = rank; i < n; ++i) out.u.col(i) = comp.col(i - rank);
  }
  if (transposed) std::swap(out.u, out.v);
  for (Index i = 0; i < n; ++i) {
    Index at = 0;
    out.u.col(i).cwiseAbs().maxCoeff(&at);
    if (out.u(at, i) < 0.0) {
      out.u.col(i) = -out.u.col(i);
      out.v.col(i) = -out.v.col(i);
    }
  }
  return out;
}

Matrix pinv(const Matrix& a, double rankTol) {
  if (rankTol <= 0.0) rankTol = default_rank_tol(a.rows(), a.cols());
  const SvdDecomp d = svd(a);
  const double cutoff = rankTol * d.singularValues(0);
  Vector inv = Vector::Zero(d.singularValues.size());
  for (Index i = 0; i < inv.size(); ++i)
    if (d.singularValues(i) > cutoff && d.singularValues(i) > 0.0)
      inv(i) = 1.0 / d.singularValues(i);
  return d.v * inv.asDiagonal() * d.u.transpose();
}

OrthonormalizeResult orthonormalize(const Matrix& columns, double rankTol) {
  if (rankTol <= 0.0) rankTol = default_rank_tol(columns.rows(), columns.cols());
  const SvdDecomp d = svd(columns);
  const double sigmaMax = d.singularValues(0);
  if (!(sigmaMax > 1e-290))
    throw Error(ErrorCode::EmptySpan, "orthonormalize: all columns null");
  Index rank = 0;
  while (rank < d.singularValues.size() &&
         d.singularValues(rank) > rankTol * sigmaMax)
    ++rank;
  OrthonormalizeResult out;
  out.q = d.u.leftCols(rank);
  out.dropped = columns.cols() - rank;
  return out;
}

double spectral_norm(const Matrix& a) {
  require_finite(a, "spectral_norm");
  if (max_abs(a) == 0.0) return 0.0;
  return svd(a).singularValues(0);
}

Matrix orthonormal_complement(const Matrix& q) {
  return householder_complement(q);
}

namespace {

SpectralDecomp psd_eig_clamped(const Matrix& a, double clampTol,
                               const char* what) {
  SpectralDecomp d = symmetric_eig(a);
  const double top = max_abs(Matrix(d.eigenvalues));
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    if (d.eigenvalues(i) < 0.0) {
      if (d.eigenvalues(i) < -clampTol * std::max(top, 1e-300))
        throw Error(ErrorCode::NotPositiveSemidefinite,
                    std::string(what) + ": negative eigenvalue " +
                        std::to_string(d.eigenvalues(i)));
      d.eigenvalues(i) = 0.0;
    }
  }
  return d;
}

}  // namespace

Matrix psd_sqrt(const Matrix& a, double clampTol) {
  SpectralDecomp d = psd_eig_clamped(a, clampTol, "psd_sqrt");
  const Vector roots = d.eigenvalues.cwiseSqrt();
  Matrix r = d.eigenvectors * roots.asDiagonal() * d.eigenvectors.transpose();
  return 0.5 * (r + Matrix(r.transpose()));
}

Matrix psd_pinv_sqrt(const Matrix& a, double rankTol) {
  if (rankTol <= 0.0) rankTol = default_rank_tol(a.rows(), a.cols());
  SpectralDecomp d = psd_eig_clamped(a, 1e-12, "psd_pinv_sqrt");
  const double cutoff = rankTol * d.eigenvalues.maxCoeff();
  Vector inv = Vector::Zero(d.eigenvalues.size());
  for (Index i = 0; i < inv.size(); ++i)
    if (d.eigenvalues(i) > cutoff && d.eigenvalues(i) > 0.0)
      inv(i) = 1.0 / std::sqrt(d.eigenvalues(i));
  Matrix r = d.eigenvectors * inv.asDiagonal() * d.eigenvectors.transpose();
  return 0.5 * (r + Matrix(r.transpose()));
}

Matrix psd_inv_sqrt(const Matrix& a, double rankTol) {
  if (rankTol <= 0.0) rankTol = default_rank_tol(a.rows(), a.cols());
  SpectralDecomp d = psd_eig_clamped(a, 1e-12, "psd_inv_sqrt");
  const double top = d.eigenvalues.maxCoeff();
  if (!(d.eigenvalues.minCoeff() > rankTol * top))
    throw Error(ErrorCode::SingularOperator,
                "psd_inv_sqrt: operator numerically singular");
  Vector inv = d.eigenvalues.cwiseSqrt().cwiseInverse();
  Matrix r = d.eigenvectors * inv.asDiagonal() * d.eigenvectors.transpose();
  return 0.5 * (r + Matrix(r.transpose()));
}

Matrix spd_inverse(const Matrix& a, double rankTol) {
  if (rankTol <= 0.0) rankTol = default_rank_tol(a.rows(), a.cols());
  SpectralDecomp d = psd_eig_clamped(a, 1e-12, "spd_inverse");
  const double top = d.eigenvalues.maxCoeff();
  if (!(d.eigenvalues.minCoeff() > rankTol * top))
    throw Error(ErrorCode::SingularOperator,
                "spd_inverse: operator numerically singular");
  Matrix r = d.eigenvectors * d.eigenvalues.cwiseInverse().asDiagonal() *
             d.eigenvectors.transpose();
  return 0.5 * (r + Matrix(r.transpose()));
}

}  // namespace ritz
