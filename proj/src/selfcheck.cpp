#include "ritz/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "ritz/angles.hpp"
#include "ritz/bounds.hpp"
#include "ritz/forms.hpp"
#include "ritz/linalg.hpp"

namespace ritz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(engine);
  }
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(engine); }
  Index integer(Index a, Index b) {
    return std::uniform_int_distribution<Index>(a, b)(engine);
  }
};

Matrix gaussian(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = rng.gauss();
  return m;
}

Matrix random_orthogonal(Index n, Rng& rng) {
  const Matrix g = gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = q.transpose() * g;
  for (Index i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

// log-uniform spectrum in [1e-2, 1e2], ascending
Vector random_spectrum(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = std::pow(10.0, rng.uniform(-2.0, 2.0));
  std::sort(v.data(), v.data() + n);
  return v;
}

Matrix assemble(const Matrix& q, const Vector& spectrum) {
  Matrix h = q * spectrum.asDiagonal() * q.transpose();
  return 0.5 * (h + Matrix(h.transpose()));
}

Matrix random_spd(Index n, Rng& rng) {
  return assemble(random_orthogonal(n, rng), random_spectrum(n, rng));
}

Matrix random_subspace(Index n, Index k, Rng& rng) {
  return orthonormalize(gaussian(n, k, rng)).q;
}

Vector random_unit(Index n, Rng& rng) {
  Vector v(n);
  double norm = 0.0;
  while (norm < 1e-8) {
    for (Index i = 0; i < n; ++i) v(i) = rng.gauss();
    norm = v.norm();
  }
  return v / norm;
}

std::string fail(const std::string& what, double got, double limit) {
  std::ostringstream os;
  os << what << ": " << got << " exceeds " << limit;
  return os.str();
}

using Check = std::function<std::vector<std::string>(Rng&)>;

// ---- linalg properties ----------------------------------------------------

std::vector<std::string> check_moore_penrose(Rng& rng) {
  std::vector<std::string> failures;
  const Index m = rng.integer(2, 10);
  const Index n = rng.integer(2, 10);
  Matrix a = gaussian(m, n, rng);
  if (rng.integer(0, 2) == 0 && std::min(m, n) > 1) {
    // plant a rank deficiency
    a.col(n - 1) = a.col(0) * 2.0 - a.col(n > 1 ? 1 : 0);
  }
  const Matrix ap = pinv(a);
  const double scaleA = std::max(spectral_norm(a), 1e-300);
  const double scaleP = std::max(spectral_norm(ap), 1e-300);
  const double tol = 1e-11;
  if (spectral_norm(a * ap * a - a) > tol * scaleA)
    failures.push_back("A A+ A != A");
  if (spectral_norm(ap * a * ap - ap) > tol * scaleP)
    failures.push_back("A+ A A+ != A+");
  const Matrix proj = a * ap;
  if (max_abs(proj - proj.transpose()) > tol)
    failures.push_back("A A+ not symmetric");
  if (spectral_norm(proj * proj - proj) > tol)
    failures.push_back("A A+ not idempotent");
  const Matrix proj2 = ap * a;
  if (max_abs(proj2 - proj2.transpose()) > tol)
    failures.push_back("A+ A not symmetric");
  return failures;
}

std::vector<std::string> check_eig_reconstruction(Rng& rng) {
  std::vector<std::string> failures;
  const Index n = rng.integer(2, 16);
  Matrix a = gaussian(n, n, rng);
  a = 0.5 * (a + Matrix(a.transpose()));
  const SpectralDecomp d = symmetric_eig(a);
  const double scale = std::max(spectral_norm(a), 1e-300);
  const Matrix rebuilt =
      d.eigenvectors * d.eigenvalues.asDiagonal() * d.eigenvectors.transpose();
  const double recErr = spectral_norm(a - rebuilt);
  if (recErr > 1e-12 * scale)
    failures.push_back(fail("eig reconstruction", recErr, 1e-12 * scale));
  const double orth = spectral_norm(
      Matrix(d.eigenvectors.transpose() * d.eigenvectors - Matrix::Identity(n, n)));
  if (orth > 1e-12) failures.push_back(fail("eig orthonormality", orth, 1e-12));
  for (Index i = 1; i < n; ++i)
    if (d.eigenvalues(i) < d.eigenvalues(i - 1))
      failures.push_back("eigenvalues not ascending");
  return failures;
}

std::vector<std::string> check_svd_eig_agreement(Rng& rng) {
  std::vector<std::string> failures;
  const Index n = rng.integer(2, 12);
  const Matrix h = random_spd(n, rng);
  const SpectralDecomp e = symmetric_eig(h);
  const SvdDecomp s = svd(h);
  const double scale = e.eigenvalues(n - 1);
  for (Index i = 0; i < n; ++i)
    if (std::abs(s.singularValues(i) - e.eigenvalues(n - 1 - i)) > 1e-12 * scale)
      failures.push_back("singular values != reversed eigenvalues");
  return failures;
}

// ---- forms properties -----------------------------------------------------

struct DenseInstance {
  OperatorRep op;
  Subspace sub;
  Matrix h;
};

DenseInstance random_instance(Rng& rng, bool withKernel) {
  const Index n = rng.integer(2, 12);
  const Index k = rng.integer(1, std::min<Index>(5, n - 1));
  Vector spectrum = random_spectrum(n, rng);
  if (withKernel) {
    const Index r = rng.integer(1, std::min<Index>(2, n - 1));
    for (Index i = 0; i < r; ++i) spectrum(i) = 0.0;
  }
  const Matrix h = assemble(random_orthogonal(n, rng), spectrum);
  DenseInstance inst{OperatorRep::explicit_matrix(h),
                     Subspace::from_orthonormal(random_subspace(n, k, rng)), h};
  return inst;
}

std::vector<std::string> check_hprime_structure(Rng& rng) {
  std::vector<std::string> failures;
  const DenseInstance inst = random_instance(rng, false);
  const double scale = std::max(spectral_norm(inst.h), 1e-300);
  const RitzData ritz = rayleigh_quotient(inst.op, inst.sub);
  const BlockSplit split = block_split(inst.op, inst.sub);

  const double reduce =
      spectral_norm(split.hPrime * inst.sub.basis - inst.sub.basis * ritz.xi);
  if (reduce > 1e-11 * scale)
    failures.push_back(fail("H'X - X Xi", reduce, 1e-11 * scale));
  const double commute = spectral_norm(inst.sub.projector * split.hPrime -
                                       split.hPrime * inst.sub.projector);
  if (commute > 1e-11 * scale)
    failures.push_back(fail("P H' - H' P", commute, 1e-11 * scale));
  const double addBack = max_abs(inst.h - (split.hPrime + split.deltaH));
  if (addBack > 4.0 * std::numeric_limits<double>::epsilon() * max_abs(inst.h))
    failures.push_back("H' + deltaH != H");

  // spectrum of H' = spectrum of Xi together with the complement compression
  const Matrix comp = orthonormal_complement(inst.sub.basis);
  Matrix compressed = comp.transpose() * inst.h * comp;
  compressed = 0.5 * (compressed + Matrix(compressed.transpose()));
  Vector joined(inst.h.rows());
  const SpectralDecomp exi = symmetric_eig(ritz.xi);
  const SpectralDecomp ecomp = symmetric_eig(compressed);
  joined << exi.eigenvalues, ecomp.eigenvalues;
  std::sort(joined.data(), joined.data() + joined.size());
  const SpectralDecomp ehp = symmetric_eig(split.hPrime);
  for (Index i = 0; i < joined.size(); ++i)
    if (std::abs(joined(i) - ehp.eigenvalues(i)) > 1e-11 * scale)
      failures.push_back("spectrum of H' != spectrum(Xi) U spectrum(complement)");
  return failures;
}

std::vector<std::string> check_sandwich(Rng& rng) {
  std::vector<std::string> failures;
  const DenseInstance inst = random_instance(rng, false);
  const BlockSplit split = block_split(inst.op, inst.sub);
  const AngleReport angle = sin_theta_residual(inst.op, inst.sub);
  const double s = angle.sinThetaP;
  for (int trial = 0; trial < 100; ++trial) {
    const Vector u = random_unit(inst.h.rows(), rng);
    const double q = u.dot(inst.h * u);
    const double qp = u.dot(split.hPrime * u);
    const double slack = 1e-10 * std::max({1.0, q, qp});
    if ((1.0 - s) * qp > q + slack || q > (1.0 + s) * qp + slack) {
      failures.push_back("two-sided form bound violated");
      break;
    }
    if (angle.etaThetaP) {
      const double eta = *angle.etaThetaP;
      if ((1.0 - eta) * q > qp + slack || qp > (1.0 + eta) * q + slack) {
        failures.push_back("reversed form bound violated");
        break;
      }
    }
  }
  return failures;
}

std::vector<std::string> check_monotonicity(Rng& rng) {
  std::vector<std::string> failures;
  const Index n = rng.integer(2, 12);
  const Matrix a = random_spd(n, rng);
  const Matrix b = gaussian(n, rng.integer(1, n), rng);
  Matrix h = a + b * b.transpose();
  h = 0.5 * (h + Matrix(h.transpose()));
  const OperatorRep opA = OperatorRep::explicit_matrix(a);
  const OperatorRep opH = OperatorRep::explicit_matrix(h);
  if (!operator_order_leq(opA, opH))
    failures.push_back("A <= A + BB^T not detected");
  const SpectralDecomp ea = symmetric_eig(a);
  const SpectralDecomp eh = symmetric_eig(h);
  const double slack = 1e-10 * spectral_norm(h);
  for (Index k = 0; k < n; ++k)
    if (ea.eigenvalues(k) > eh.eigenvalues(k) + slack)
      failures.push_back("spectral monotonicity violated");
  return failures;
}

// ---- angles properties ----------------------------------------------------

std::vector<std::string> check_isometry_identities(Rng& rng) {
  std::vector<std::string> failures;
  const bool withKernel = rng.integer(0, 1) == 1;
  const DenseInstance inst = random_instance(rng, withKernel);
  const IsometryPair pair = build_isometries(inst.op, inst.sub);

  auto projector_defect = [](const Matrix& p) {
    return std::max(max_abs(p - p.transpose()), spectral_norm(p * p - p));
  };
  const Matrix vv = pair.v.transpose() * pair.v;
  const Matrix ww = pair.w.transpose() * pair.w;
  if (projector_defect(vv) > 1e-11) failures.push_back("V^T V not a projector");
  if (projector_defect(ww) > 1e-11) failures.push_back("W^T W not a projector");
  if (spectral_norm(pair.v * pair.w.transpose()) > 1e-11)
    failures.push_back("V W^T != 0");
  if (spectral_norm(pair.w * pair.v.transpose()) > 1e-11)
    failures.push_back("W V^T != 0");

  const double vtw = spectral_norm(Matrix(pair.v.transpose() * pair.w));
  if (std::abs(spectral_norm(pair.deltaHs) - vtw) > 1e-10)
    failures.push_back("||deltaHs|| != ||V^T W||");
  const Matrix pv = pair.v * pair.v.transpose();
  const Matrix pw = pair.w * pair.w.transpose();
  if (std::abs(spectral_norm(pv * pw) - vtw) > 1e-10)
    failures.push_back("||P_V P_W|| != ||V^T W||");
  return failures;
}

std::vector<std::string> check_dual_route(Rng& rng) {
  std::vector<std::string> failures;
  const DenseInstance inst = random_instance(rng, false);
  const AngleReport angle = sin_theta_residual(inst.op, inst.sub);
  if (!angle.crossCheckGap)
    failures.push_back("pencil route unavailable on SPD input");
  else if (*angle.crossCheckGap > 1e-9)
    failures.push_back(fail("route gap", *angle.crossCheckGap, 1e-9));
  if (angle.sinThetaP > angle.sinTheta + 1e-12)
    failures.push_back("sinThetaP exceeds sinTheta");
  return failures;
}

std::vector<std::string> check_drmac_ratio(Rng& rng) {
  std::vector<std::string> failures;
  const DenseInstance inst = random_instance(rng, false);
  const AngleReport angle = sin_theta_residual(inst.op, inst.sub);
  if (!angle.etaThetaP) return failures;
  const double ratio = drmac_ratio(inst.op, inst.sub);
  if (std::abs(ratio - *angle.etaThetaP) > 1e-9 * std::max(1.0, *angle.etaThetaP))
    failures.push_back(fail("drmac ratio mismatch",
                            std::abs(ratio - *angle.etaThetaP), 1e-9));
  return failures;
}

std::vector<std::string> check_invariance_equivalence(Rng& rng) {
  std::vector<std::string> failures;
  const Index n = rng.integer(3, 12);
  const Index k = rng.integer(1, std::min<Index>(5, n - 1));
  const Matrix h = random_spd(n, rng);
  const SpectralDecomp d = symmetric_eig(h);

  const Subspace invariant = Subspace::from_orthonormal(d.eigenvectors.leftCols(k));
  const OperatorRep op = OperatorRep::explicit_matrix(h);
  const AngleReport flat = sin_theta_residual(op, invariant);
  if (flat.sinThetaP > 1e-8)
    failures.push_back(fail("invariant subspace sinTheta", flat.sinThetaP, 1e-8));

  const Subspace skew = Subspace::from_orthonormal(random_subspace(n, k, rng));
  const RitzData ritz = rayleigh_quotient(op, skew);
  const double residual =
      spectral_norm(h * skew.basis - skew.basis * ritz.xi);
  const AngleReport rough = sin_theta_residual(op, skew);
  if (residual > 1e-3 * spectral_norm(h) && rough.sinThetaP <= 1e-8)
    failures.push_back("nonzero residual but zero angle");
  return failures;
}

std::vector<std::string> check_kernel_certificate(Rng& rng) {
  std::vector<std::string> failures;
  const Index n = rng.integer(4, 12);
  const Index r = rng.integer(1, std::min<Index>(2, n - 3));
  Vector spectrum = random_spectrum(n, rng);
  for (Index i = 0; i < r; ++i) spectrum(i) = 0.0;
  const Matrix q = random_orthogonal(n, rng);
  const Matrix h = assemble(q, spectrum);
  const Matrix kernel = q.leftCols(r);
  const Matrix range = q.rightCols(n - r);

  const bool containKernel = rng.integer(0, 1) == 1;
  const Index extra = rng.integer(1, std::min<Index>(3, n - r - 1));
  Matrix cols;
  if (containKernel) {
    cols.resize(n, r + extra);
    cols << kernel, range * gaussian(n - r, extra, rng);
  } else {
    cols = range * gaussian(n - r, extra, rng);
  }
  const Subspace sub = Subspace::from_columns(cols);
  const OperatorRep op = OperatorRep::explicit_matrix(h);
  const AngleReport angle = sin_theta_residual(op, sub);
  if (angle.sinThetaP >= 1.0 - 1e-6) return failures;  // theorem silent here

  const BlockSplit split = block_split(op, sub);
  const SpectralDecomp dh = symmetric_eig(split.hPrime);
  const double cutoff = 1e-8 * std::max(dh.eigenvalues.maxCoeff(), 1e-300);
  Index kdim = 0;
  while (kdim < n && dh.eigenvalues(kdim) <= cutoff) ++kdim;
  if (kdim != r) {
    failures.push_back("ker(H') dimension differs from ker(H)");
    return failures;
  }
  const Matrix kerP = dh.eigenvectors.leftCols(kdim);
  const double gap =
      spectral_norm((Matrix::Identity(n, n) - kernel * kernel.transpose()) * kerP);
  if (gap > 1e-9) failures.push_back("ker(H') misaligned with ker(H)");
  return failures;
}

// ---- bounds properties ----------------------------------------------------

double brute_force_bottleneck(const Vector& ritz, const Vector& eigs) {
  const Index n = ritz.size();
  const Index total = eigs.size();
  double best = kInf;
  std::vector<Index> pick(static_cast<size_t>(n));
  std::function<void(Index, Index, double)> recurse = [&](Index j, Index start,
                                                          double worst) {
    if (worst >= best) return;
    if (j == n) {
      best = std::min(best, worst);
      return;
    }
    for (Index i = start; i < total; ++i) {
      const double mu = ritz(j);
      double c;
      if (mu == 0.0)
        c = eigs(i) == 0.0 ? 0.0 : kInf;
      else
        c = std::abs(eigs(i) - mu) / mu;
      if (std::isinf(c)) continue;
      recurse(j + 1, i + 1, std::max(worst, c));
    }
  };
  recurse(0, 0, 0.0);
  return best;
}

std::vector<std::string> check_matcher_oracle(Rng& rng) {
  std::vector<std::string> failures;
  const Index total = rng.integer(3, 7);
  const Matrix h = random_spd(total, rng);
  const SpectralDecomp d = symmetric_eig(h);
  const Index k = rng.integer(1, std::min<Index>(5, total - 1));
  const Subspace sub = Subspace::from_orthonormal(random_subspace(total, k, rng));
  const RitzData ritz = rayleigh_quotient(OperatorRep::explicit_matrix(h), sub);

  const MatchReport match = match_ritz(ritz.ritzValues, d.eigenvalues, 1.0);
  const double oracle = brute_force_bottleneck(ritz.ritzValues, d.eigenvalues);
  if (std::abs(match.maxRelError - oracle) > 1e-12 * std::max(1.0, oracle))
    failures.push_back("bottleneck matcher differs from brute force");
  return failures;
}

std::vector<std::string> check_match_validity(Rng& rng) {
  std::vector<std::string> failures;
  const bool withKernel = rng.integer(0, 3) == 0;
  const DenseInstance inst = random_instance(rng, withKernel);
  const AngleReport angle = sin_theta_residual(inst.op, inst.sub);
  if (angle.sinThetaP >= 1.0 - 1e-9) return failures;
  const RitzData ritz = rayleigh_quotient(inst.op, inst.sub);
  const SpectralDecomp d = symmetric_eig(inst.h);
  Vector eigs = d.eigenvalues;
  // kernel dust from the eigensolver: clamp exact-zero constructions
  for (Index i = 0; i < eigs.size(); ++i)
    if (std::abs(eigs(i)) < 1e-12 * spectral_norm(inst.h)) eigs(i) = std::max(eigs(i), 0.0);

  Vector mu = ritz.ritzValues;
  for (Index i = 0; i < mu.size(); ++i)
    if (mu(i) < 0.0) mu(i) = 0.0;
  const MatchReport match = match_ritz(mu, eigs, angle.sinThetaP);
  if (match.maxRelError > angle.sinThetaP + 1e-10)
    failures.push_back(fail("matching error above sinThetaP",
                            match.maxRelError, angle.sinThetaP + 1e-10));
  if (angle.etaThetaP) {
    for (Index j = 0; j < mu.size(); ++j) {
      const double lambda = eigs(match.permutation[static_cast<size_t>(j)]);
      if (lambda > 0.0 &&
          std::abs(lambda - mu(j)) / lambda > *angle.etaThetaP + 1e-10) {
        failures.push_back("lambda-relative bound violated");
        break;
      }
    }
  }
  return failures;
}

std::vector<std::string> check_localization_consistency(Rng& rng) {
  std::vector<std::string> failures;
  const DenseInstance inst = random_instance(rng, false);
  const AngleReport angle = sin_theta_residual(inst.op, inst.sub);
  const RitzData ritz = rayleigh_quotient(inst.op, inst.sub);
  const SpectralDecomp d = symmetric_eig(inst.h);
  const LocalizationReport loc = localize(ritz.ritzValues, d.eigenvalues,
                                          angle.sinThetaP,
                                          LocalizationMode::lower());
  if (loc.theoremApplies != TheoremApplies::LowerBlock) return failures;
  if (!*loc.blockBoundHolds) failures.push_back("block bound fails");
  const MatchReport match =
      match_ritz(ritz.ritzValues, d.eigenvalues, angle.sinThetaP);
  for (Index j = 0; j < ritz.ritzValues.size(); ++j)
    if (match.permutation[static_cast<size_t>(j)] != j)
      failures.push_back("lower-block matching is not the identity");
  return failures;
}

std::vector<std::string> check_s_operator(Rng& rng) {
  std::vector<std::string> failures;
  const DenseInstance inst = random_instance(rng, false);
  const AngleReport angle = sin_theta_residual(inst.op, inst.sub);
  if (!angle.etaThetaP) return failures;
  const double s = angle.sinThetaP;
  const Matrix sop = s_operator(inst.op, inst.sub);
  const double limit = s / std::sqrt(1.0 - s) + 1e-10;
  const double norm = spectral_norm(sop);
  if (norm > limit) failures.push_back(fail("||S||", norm, limit));

  const BlockSplit split = block_split(inst.op, inst.sub);
  const SpectralDecomp dh = symmetric_eig(inst.h);
  const SpectralDecomp dp = symmetric_eig(split.hPrime);
  for (Index a = 0; a < dh.eigenvalues.size(); ++a) {
    for (Index b = 0; b < dp.eigenvalues.size(); ++b) {
      const double lambda = dh.eigenvalues(a);
      const double mu = dp.eigenvalues(b);
      if (lambda <= 0.0 || mu <= 0.0) continue;
      const double lhs = dh.eigenvectors.col(a).dot(sop * dp.eigenvectors.col(b));
      const double rhs = (lambda - mu) / std::sqrt(lambda * mu) *
                         dh.eigenvectors.col(a).dot(dp.eigenvectors.col(b));
      if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(rhs))) {
        failures.push_back("S matrix element mismatch");
        return failures;
      }
    }
  }
  return failures;
}

std::vector<std::string> check_eigvec_bound(Rng& rng) {
  std::vector<std::string> failures;
  const Index n = rng.integer(3, 10);
  // well separated spectrum: multiplicative gaps of at least 10^0.15
  Vector exponents(n);
  for (Index i = 0; i < n; ++i) exponents(i) = rng.uniform(-2.0, 2.0);
  std::sort(exponents.data(), exponents.data() + n);
  for (Index i = 1; i < n; ++i)
    exponents(i) = std::max(exponents(i), exponents(i - 1) + 0.15);
  Vector spectrum(n);
  for (Index i = 0; i < n; ++i) spectrum(i) = std::pow(10.0, exponents(i));
  const Matrix h = assemble(random_orthogonal(n, rng), spectrum);
  const Index k = rng.integer(1, std::min<Index>(3, n - 1));
  const SpectralDecomp full = symmetric_eig(h);
  const Subspace sub = Subspace::from_columns(
      Matrix(full.eigenvectors.leftCols(k) + 0.05 * gaussian(n, k, rng)));
  const OperatorRep op = OperatorRep::explicit_matrix(h);

  const AngleReport angle = sin_theta_residual(op, sub);
  if (angle.sinThetaP >= 1.0 - 1e-6) return failures;
  const RitzData ritz = rayleigh_quotient(op, sub);
  const SpectralDecomp d = symmetric_eig(h);
  const MatchReport match =
      match_ritz(ritz.ritzValues, d.eigenvalues, angle.sinThetaP);
  try {
    const EigvecBoundReport report = eigenvector_bounds(
        ritz.ritzValues, d.eigenvalues, match.permutation, angle.sinThetaP,
        ritz.ritzVectors, d.eigenvectors);
    for (size_t j = 0; j < report.bounds.size(); ++j) {
      if (!report.bounds[j] || !report.actualErrors[j]) continue;
      if (*report.actualErrors[j] > *report.bounds[j] + 1e-10) {
        failures.push_back(fail("eigenvector error above bound",
                                *report.actualErrors[j], *report.bounds[j]));
        break;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateGap) throw;
  }
  return failures;
}

}  // namespace

bool SelfcheckSummary::all_passed() const {
  for (const auto& p : properties)
    if (p.fail > 0) return false;
  return true;
}

int SelfcheckSummary::total_failures() const {
  int total = 0;
  for (const auto& p : properties) total += p.fail;
  return total;
}

SelfcheckSummary run_selfcheck(std::uint64_t seed, int instances) {
  if (instances < 1)
    throw Error(ErrorCode::InvalidInput, "selfcheck: instances >= 1");

  const std::pair<const char*, Check> checks[] = {
      {"moore-penrose-identities", check_moore_penrose},
      {"eig-reconstruction", check_eig_reconstruction},
      {"svd-eig-psd-agreement", check_svd_eig_agreement},
      {"hprime-reduces-subspace", check_hprime_structure},
      {"two-sided-form-bounds", check_sandwich},
      {"spectral-monotonicity", check_monotonicity},
      {"partial-isometry-identities", check_isometry_identities},
      {"dual-route-sin-theta", check_dual_route},
      {"scaled-offdiagonal-ratio", check_drmac_ratio},
      {"invariance-equivalence", check_invariance_equivalence},
      {"kernel-equality-certificate", check_kernel_certificate},
      {"bottleneck-matcher-oracle", check_matcher_oracle},
      {"relative-matching-validity", check_match_validity},
      {"localization-consistency", check_localization_consistency},
      {"s-operator-bound", check_s_operator},
      {"eigenvector-error-bound", check_eigvec_bound},
  };

  SelfcheckSummary summary;
  summary.seed = seed;
  summary.instances = instances;
  std::uint64_t salt = 0;
  for (const auto& [name, check] : checks) {
    ++salt;
    PropertyResult result;
    result.name = name;
    Rng rng(seed ^ (salt * 0x9E3779B97F4A7C15ull));
    for (int i = 0; i < instances; ++i) {
      const std::vector<std::string> failures = check(rng);
      if (failures.empty()) {
        ++result.pass;
      } else {
        ++result.fail;
        if (result.messages.size() < 3)
          result.messages.push_back("instance " + std::to_string(i) + ": " +
                                    failures.front());
      }
    }
    summary.properties.push_back(std::move(result));
  }
  return summary;
}

std::string render_selfcheck(const SelfcheckSummary& summary) {
  std::ostringstream os;
  os << "selfcheck seed=" << summary.seed
     << " instances=" << summary.instances << "\n";
  for (const auto& p : summary.properties) {
    os << p.name << ": pass=" << p.pass << " fail=" << p.fail << "\n";
    for (const auto& m : p.messages) os << "  " << m << "\n";
  }
  os << (summary.all_passed() ? "result: PASS" : "result: FAIL") << " ("
     << summary.total_failures() << " failures)\n";
  return os.str();
}

}  // namespace ritz
