#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ritz/errors.hpp"
#include "ritz/types.hpp"

namespace ritz {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchemaVersion = "report-v1";

enum class OutputFormat { Text, Csv, Json };

OutputFormat parse_output_format(const std::string& name);

struct RunConfig {
  std::optional<double> rankTol;  // per-matrix default rule when unset
  double symTol = 1e-12;
  double quadTol = 1e-10;
  double secularTol = 1e-12;
  std::uint64_t seed = 42;
  OutputFormat format = OutputFormat::Text;

  double rank_tol_or(Index rows, Index cols) const;
  void validate() const;
};

/// A deterministic report: a JSON document with insertion-ordered keys plus
/// the process exit code the run maps to. Text and CSV renderings are
/// derived from the same document; numbers print with 12 significant
/// digits, JSON keeps full precision.
struct ReportDocument {
  nlohmann::ordered_json root;
  int exitCode = 0;

  std::string to_json_string() const;
  std::string to_text() const;
  std::string to_csv() const;
  std::string render(OutputFormat format) const;
};

/// 12-significant-digit formatting shared by the text and CSV renderers.
std::string fmt12(double value);

/// The eta-family study: Ritz value, residual measure, relative lower
/// bound, self-consistent Temple-Kato bound, closed-form eigenvalues, and
/// comparison flags against the published reference cells.
ReportDocument cmd_table1(const std::vector<double>& etaList,
                          const RunConfig& config);

/// End-to-end certification pipeline for a matrix + test-basis pair.
ReportDocument cmd_bounds(const std::string& matrixPath,
                          const std::string& basisPath,
                          const RunConfig& config,
                          std::optional<double> gammaOverride = std::nullopt);

/// The inhomogeneous-string study: secular eigenvalues against the
/// finite-difference oracle, residual measures, relative and eigenvector
/// bounds.
ReportDocument cmd_string(double eta, int modes, int mesh,
                          const RunConfig& config);

/// Builds the matrix of the factored eta-family (bottom-right entry
/// 1/100 + eta^2).
Matrix eta_family_matrix(double eta);

/// Closed-form eigenvalues of the factored eta-family.
std::pair<double, double> eta_family_eigenvalues(double eta);

/// Closed-form residual measure 1/sqrt(100 eta^2 + 1).
double eta_family_sin_theta(double eta);

}  // namespace ritz
