#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ritz/forms.hpp"

namespace ritz {

/// Two-sided relative enclosure mu(1 -/+ sin) together with the
/// lambda-relative bound sin/(1-sin).
struct RelativeInterval {
  double lo = 0.0;
  double hi = 0.0;
  double lambdaRelativeBound = 0.0;
};

RelativeInterval relative_interval(double mu, double sinThetaP);

/// Order-preserving bottleneck matching of Ritz values to reference
/// eigenvalues; relative errors are measured against mu, with 0/0 = 0 for
/// exact kernel pairs.
struct MatchReport {
  std::vector<Index> permutation;  // 0-based indices into the eigenvalue list
  std::vector<double> perPairRelError;
  double maxRelError = 0.0;
  std::vector<bool> boundSatisfied;  // perPair <= sinThetaP + 1e-12
};

MatchReport match_ritz(const Vector& ritz, const Vector& eigs,
                       double sinThetaP);

enum class TheoremApplies { LowerBlock, InnerBlock, None };

struct LocalizationMode {
  bool inner = false;
  Index offset = 1;  // 1-based start of the inner block

  static LocalizationMode lower() { return {}; }
  static LocalizationMode inner_block(Index q) { return {true, q}; }
};

/// Relative-gap localization: gammaR separates the lower block, gammaC the
/// inner block at offset q; the matched range is certified only when
/// eta = sin/(1-sin) clears the gap.
struct LocalizationReport {
  std::optional<double> gammaR;
  std::optional<double> gammaC;
  double etaThetaP = 0.0;  // +inf when sinThetaP == 1
  TheoremApplies theoremApplies = TheoremApplies::None;
  std::pair<Index, Index> matchedRange{0, 0};  // 1-based inclusive
  std::optional<bool> blockBoundHolds;  // |lambda - mu| <= mu sin, per block
};

LocalizationReport localize(const Vector& ritz, const Vector& eigs,
                            double sinThetaP, LocalizationMode mode);

struct TempleKatoBound {
  double value = 0.0;
  bool vacuous = false;  // value <= 0, no information for a PSD operator
};

/// mu - (u^T H^2 u - mu^2)/(gamma - mu) for a unit test vector with
/// mu = u^T H u < gamma.
TempleKatoBound temple_kato(const OperatorRep& op, const Vector& u,
                            double gamma);

/// Per-vector bound sqrt(2) sin/sqrt(1-sin) * max over the remaining
/// spectrum of sqrt(mu lambda)/|lambda - mu|; actual errors are filled in
/// when both vector sets are supplied (sign-aligned before subtracting).
struct EigvecBoundReport {
  std::vector<std::optional<double>> bounds;
  std::vector<std::optional<double>> actualErrors;
};

EigvecBoundReport eigenvector_bounds(const Vector& ritz, const Vector& eigs,
                                     const std::vector<Index>& matched,
                                     double sinThetaP,
                                     const Matrix& ritzVectors = Matrix(),
                                     const Matrix& eigenVectors = Matrix());

/// S = H^{1/2} Hp^{+1/2} - H^{+1/2} Hp^{1/2}; its norm is bounded by
/// sin/sqrt(1-sin) and its matrix elements between eigenvectors carry the
/// relative distance (lambda-mu)/sqrt(lambda mu).
Matrix s_operator(const OperatorRep& op, const Subspace& sub,
                  double rankTol = -1.0);

}  // namespace ritz
