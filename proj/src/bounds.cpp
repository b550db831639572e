#include "ritz/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ritz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_ascending(const Vector& v, const char* what) {
  for (Index i = 1; i < v.size(); ++i)
    if (v(i) < v(i - 1))
      throw Error(ErrorCode::InvalidInput,
                  std::string(what) + ": list not ascending");
}

double pair_cost(double mu, double lambda) {
  if (mu == 0.0) return lambda == 0.0 ? 0.0 : kInf;
  return std::abs(lambda - mu) / mu;
}

// Greedy left-to-right assignment; the feasible index set of each Ritz value
// is contiguous, so taking the smallest admissible index is exact.
bool assign_within(const Vector& ritz, const Vector& eigs, double threshold,
                   std::vector<Index>* out) {
  if (out) out->clear();
  Index next = 0;
  for (Index j = 0; j < ritz.size(); ++j) {
    Index pick = -1;
    for (Index i = next; i < eigs.size(); ++i) {
      if (pair_cost(ritz(j), eigs(i)) <= threshold) {
        pick = i;
        break;
      }
    }
    if (pick < 0) return false;
    if (out) out->push_back(pick);
    next = pick + 1;
  }
  return true;
}

double gap_ratio(double lambda, double mu) {
  const double denom = lambda + mu;
  if (denom == 0.0) return 0.0;
  return (lambda - mu) / denom;
}

}  // namespace

RelativeInterval relative_interval(double mu, double sinThetaP) {
  if (!(sinThetaP >= 0.0) || sinThetaP >= 1.0)
    throw Error(ErrorCode::NotApplicable,
                "relative_interval: requires 0 <= sinThetaP < 1");
  RelativeInterval out;
  out.lo = mu * (1.0 - sinThetaP);
  out.hi = mu * (1.0 + sinThetaP);
  out.lambdaRelativeBound = sinThetaP / (1.0 - sinThetaP);
  return out;
}

MatchReport match_ritz(const Vector& ritz, const Vector& eigs,
                       double sinThetaP) {
  require_ascending(ritz, "match_ritz(ritz)");
  require_ascending(eigs, "match_ritz(eigs)");
  if (ritz.size() > eigs.size())
    throw Error(ErrorCode::InsufficientEigenvalues,
                "match_ritz: more Ritz values than eigenvalues");
  for (Index j = 0; j < ritz.size(); ++j)
    if (ritz(j) < 0.0)
      throw Error(ErrorCode::InvalidInput, "match_ritz: negative Ritz value");

  std::vector<double> thresholds;
  thresholds.reserve(static_cast<size_t>(ritz.size() * eigs.size()));
  for (Index j = 0; j < ritz.size(); ++j)
    for (Index i = 0; i < eigs.size(); ++i) {
      const double c = pair_cost(ritz(j), eigs(i));
      if (std::isfinite(c)) thresholds.push_back(c);
    }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  if (thresholds.empty() ||
      !assign_within(ritz, eigs, thresholds.back(), nullptr))
    throw Error(ErrorCode::InsufficientEigenvalues,
                "match_ritz: no order-preserving matching exists "
                "(unpaired kernel Ritz value?)");

  size_t lo = 0, hi = thresholds.size() - 1;
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    if (assign_within(ritz, eigs, thresholds[mid], nullptr))
      hi = mid;
    else
      lo = mid + 1;
  }

  MatchReport report;
  assign_within(ritz, eigs, thresholds[lo], &report.permutation);
  report.maxRelError = 0.0;
  for (Index j = 0; j < ritz.size(); ++j) {
    const double err = pair_cost(ritz(j), eigs(report.permutation[static_cast<size_t>(j)]));
    report.perPairRelError.push_back(err);
    report.boundSatisfied.push_back(err <= sinThetaP + 1e-12);
    report.maxRelError = std::max(report.maxRelError, err);
  }
  return report;
}

LocalizationReport localize(const Vector& ritz, const Vector& eigs,
                            double sinThetaP, LocalizationMode mode) {
  require_ascending(ritz, "localize(ritz)");
  require_ascending(eigs, "localize(eigs)");
  const Index n = ritz.size();
  const Index total = eigs.size();

  LocalizationReport report;
  report.etaThetaP = sinThetaP < 1.0 ? sinThetaP / (1.0 - sinThetaP) : kInf;

  if (!mode.inner) {
    double gamma = 1.0;
    for (Index p = n; p < total; ++p)
      for (Index k = 0; k < n; ++k)
        gamma = std::min(gamma, gap_ratio(eigs(p), ritz(k)));
    gamma = std::max(gamma, -1.0);
    report.gammaR = gamma;
    if (n <= total && gamma >= 0.0 && report.etaThetaP < std::min(gamma, 1.0)) {
      report.theoremApplies = TheoremApplies::LowerBlock;
      report.matchedRange = {1, n};
    }
  } else {
    const Index q = mode.offset;
    if (q < 1 || q + n - 1 > total)
      throw Error(ErrorCode::InsufficientEigenvalues,
                  "localize: inner block exceeds the eigenvalue window");
    double gamma = 1.0;
    for (Index p = 0; p < q - 1; ++p)
      for (Index k = 0; k < n; ++k)
        gamma = std::min(gamma, gap_ratio(ritz(k), eigs(p)));
    for (Index p = q + n - 1; p < total; ++p)
      for (Index k = 0; k < n; ++k)
        gamma = std::min(gamma, gap_ratio(eigs(p), ritz(k)));
    gamma = std::max(gamma, -1.0);
    report.gammaC = gamma;
    if (report.etaThetaP < gamma) {
      report.theoremApplies = TheoremApplies::InnerBlock;
      report.matchedRange = {q, q + n - 1};
    }
  }

  if (report.theoremApplies != TheoremApplies::None) {
    bool holds = true;
    for (Index j = 0; j < n; ++j) {
      const double lambda = eigs(report.matchedRange.first - 1 + j);
      if (std::abs(lambda - ritz(j)) >
          ritz(j) * sinThetaP + 1e-12 * std::max(1.0, ritz(j)))
        holds = false;
    }
    report.blockBoundHolds = holds;
  }
  return report;
}

TempleKatoBound temple_kato(const OperatorRep& op, const Vector& u,
                            double gamma) {
  if (!op.is_matrix_kind())
    throw Error(ErrorCode::InvalidInput, "temple_kato: matrix kind required");
  if (u.size() != op.dimension())
    throw Error(ErrorCode::DimensionMismatch, "temple_kato: vector size");
  if (std::abs(u.norm() - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidInput, "temple_kato: test vector not unit");
  const Vector hu = op.apply(u);
  const double mu = u.dot(hu);
  const double second = hu.squaredNorm();
  if (!(mu < gamma))
    throw Error(ErrorCode::GammaNotAboveMu,
                "temple_kato: gamma must exceed the Rayleigh quotient");
  TempleKatoBound out;
  out.value = mu - (second - mu * mu) / (gamma - mu);
  out.vacuous = out.value <= 0.0;
  return out;
}

EigvecBoundReport eigenvector_bounds(const Vector& ritz, const Vector& eigs,
                                     const std::vector<Index>& matched,
                                     double sinThetaP,
                                     const Matrix& ritzVectors,
                                     const Matrix& eigenVectors) {
  const Index n = ritz.size();
  if (static_cast<Index>(matched.size()) != n)
    throw Error(ErrorCode::DimensionMismatch,
                "eigenvector_bounds: matching size");
  if (!(sinThetaP >= 0.0) || sinThetaP >= 1.0)
    throw Error(ErrorCode::NotApplicable,
                "eigenvector_bounds: requires sinThetaP < 1");

  const double factor = std::sqrt(2.0) * sinThetaP / std::sqrt(1.0 - sinThetaP);
  const bool haveVectors =
      ritzVectors.cols() == n && eigenVectors.cols() == eigs.size() &&
      ritzVectors.rows() == eigenVectors.rows() && n > 0 &&
      ritzVectors.rows() > 0;

  EigvecBoundReport report;
  for (Index j = 0; j < n; ++j) {
    double worst = -1.0;
    for (Index l = 0; l < eigs.size(); ++l) {
      if (l == matched[static_cast<size_t>(j)]) continue;
      const double gap = std::abs(eigs(l) - ritz(j));
      if (gap <= 1e-14 * std::max(std::abs(eigs(l)), std::abs(ritz(j))))
        throw Error(ErrorCode::DegenerateGap,
                    "eigenvector_bounds: eigenvalue coincides with a Ritz "
                    "value it is not matched to");
      worst = std::max(worst, std::sqrt(std::max(0.0, ritz(j) * eigs(l))) / gap);
    }
    if (worst < 0.0)
      report.bounds.emplace_back(std::nullopt);
    else
      report.bounds.emplace_back(factor * worst);

    if (haveVectors) {
      Vector v = eigenVectors.col(matched[static_cast<size_t>(j)]);
      const Vector u = ritzVectors.col(j);
      const double align = v.dot(u);
      if (align == 0.0) {
        report.actualErrors.emplace_back(std::sqrt(2.0));
      } else {
        if (align < 0.0) v = -v;
        report.actualErrors.emplace_back((v - u).norm());
      }
    } else {
      report.actualErrors.emplace_back(std::nullopt);
    }
  }
  return report;
}

Matrix s_operator(const OperatorRep& op, const Subspace& sub, double rankTol) {
  const Matrix h = op.materialize();
  const BlockSplit split = block_split(op, sub);
  return psd_sqrt(h) * psd_pinv_sqrt(split.hPrime, rankTol) -
         psd_pinv_sqrt(h, rankTol) * psd_sqrt(split.hPrime);
}

}  // namespace ritz
