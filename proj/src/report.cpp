#include "ritz/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ritz/angles.hpp"
#include "ritz/bounds.hpp"
#include "ritz/forms.hpp"
#include "ritz/io.hpp"
#include "ritz/string_model.hpp"

namespace ritz {

using ordered_json = nlohmann::ordered_json;

OutputFormat parse_output_format(const std::string& name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorCode::InvalidInput,
              "unknown output format '" + name + "' (text|csv|json)");
}

double RunConfig::rank_tol_or(Index rows, Index cols) const {
  return rankTol ? *rankTol : default_rank_tol(rows, cols);
}

void RunConfig::validate() const {
  if ((rankTol && !(*rankTol > 0.0)) || !(symTol > 0.0) || !(quadTol > 0.0) ||
      !(secularTol > 0.0))
    throw Error(ErrorCode::InvalidInput, "all tolerances must be > 0");
}

std::string fmt12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

std::string scalar_text(const ordered_json& v) {
  if (v.is_null()) return "n/a";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt12(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_scalar(const ordered_json& v) {
  return v.is_primitive();
}

bool is_scalar_array(const ordered_json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (!is_scalar(e)) return false;
  return true;
}

void render_text(std::ostream& os, const ordered_json& node, int indent) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  for (const auto& [key, value] : node.items()) {
    if (is_scalar(value)) {
      os << pad << key << ": " << scalar_text(value) << '\n';
    } else if (is_scalar_array(value)) {
      os << pad << key << ": [";
      for (size_t i = 0; i < value.size(); ++i)
        os << (i ? ", " : "") << scalar_text(value[i]);
      os << "]\n";
    } else if (value.is_array()) {
      for (size_t i = 0; i < value.size(); ++i) {
        os << pad << key << '[' << i << "]:\n";
        render_text(os, value[i], indent + 2);
      }
    } else {
      os << pad << key << ":\n";
      render_text(os, value, indent + 2);
    }
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void flatten_csv(std::ostream& os, const ordered_json& node,
                 const std::string& path) {
  if (is_scalar(node)) {
    os << csv_escape(path) << ',' << csv_escape(scalar_text(node)) << '\n';
    return;
  }
  if (node.is_array()) {
    for (size_t i = 0; i < node.size(); ++i)
      flatten_csv(os, node[i], path + '[' + std::to_string(i) + ']');
    return;
  }
  for (const auto& [key, value] : node.items())
    flatten_csv(os, value, path.empty() ? key : path + '.' + key);
}

ordered_json opt_num(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

ordered_json vector_json(const Vector& v) {
  ordered_json arr = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

ordered_json meta_json(const char* command, const RunConfig& config) {
  ordered_json meta;
  meta["tool_version"] = kToolVersion;
  meta["schema"] = kReportSchemaVersion;
  meta["command"] = command;
  meta["seed"] = config.seed;
  ordered_json tol;
  if (config.rankTol)
    tol["rank_tol"] = *config.rankTol;
  else
    tol["rank_tol"] = "auto";
  tol["sym_tol"] = config.symTol;
  tol["quad_tol"] = config.quadTol;
  tol["secular_tol"] = config.secularTol;
  meta["tolerances"] = tol;
  return meta;
}

// Published reference cells for the eta-family study, eta = 1..5.
constexpr double kRefSinThetaBound[5] = {0.009004962810, 0.009500623831,
                                         0.009666851698, 0.009750078088,
                                         0.009800039988};
constexpr double kRefTempleKato[5] = {9.998000499860e-7, 0.007500015625,
                                      0.008888890261, 0.009375000244,
                                      0.009600000064};

int reference_index(double eta) {
  for (int i = 1; i <= 5; ++i)
    if (std::abs(eta - i) <= 1e-12) return i - 1;
  return -1;
}

const char* match_flag(double computed, double reference, double tol) {
  return std::abs(computed - reference) <= tol ? "match" : "mismatch";
}

}  // namespace

std::string ReportDocument::to_json_string() const { return root.dump(2) + "\n"; }

std::string ReportDocument::to_text() const {
  std::ostringstream os;
  render_text(os, root, 0);
  return os.str();
}

std::string ReportDocument::to_csv() const {
  std::ostringstream os;
  os << "key,value\n";
  flatten_csv(os, root, "");
  return os.str();
}

std::string ReportDocument::render(OutputFormat format) const {
  switch (format) {
    case OutputFormat::Text: return to_text();
    case OutputFormat::Csv: return to_csv();
    case OutputFormat::Json: return to_json_string();
  }
  return to_text();
}

Matrix eta_family_matrix(double eta) {
  Matrix lower(2, 2), diag(2, 2);
  lower << 1.0, 0.0, -1.0, 1.0;
  diag << 0.01, 0.0, 0.0, eta * eta;
  Matrix h = lower * diag * lower.transpose();
  return 0.5 * (h + Matrix(h.transpose()));
}

std::pair<double, double> eta_family_eigenvalues(double eta) {
  const double e2 = eta * eta;
  const double disc = std::sqrt(1.0 + 2500.0 * e2 * e2);
  return {(1.0 + 50.0 * e2 - disc) / 100.0, (1.0 + 50.0 * e2 + disc) / 100.0};
}

double eta_family_sin_theta(double eta) {
  return 1.0 / std::sqrt(100.0 * eta * eta + 1.0);
}

ReportDocument cmd_table1(const std::vector<double>& etaList,
                          const RunConfig& config) {
  config.validate();
  for (double eta : etaList)
    if (!(eta > 0.0))
      throw Error(ErrorCode::InvalidInput, "table1: eta values must be > 0");

  ReportDocument doc;
  doc.root["meta"] = meta_json("table1", config);

  ordered_json rows = ordered_json::array();
  for (double eta : etaList) {
    const Matrix h = eta_family_matrix(eta);
    const OperatorRep op = OperatorRep::explicit_matrix(h, config.symTol);
    Matrix e1 = Matrix::Zero(2, 1);
    e1(0, 0) = 1.0;
    const Subspace sub = Subspace::from_orthonormal(e1);

    const RitzData ritz = rayleigh_quotient(op, sub);
    const double mu = ritz.ritzValues(0);
    const AngleReport angle =
        sin_theta_residual(op, sub, config.rank_tol_or(2, 2));
    const double sinClosed = eta_family_sin_theta(eta);
    const RelativeInterval interval = relative_interval(mu, angle.sinThetaP);

    const SpectralDecomp eig = symmetric_eig(h, config.symTol);
    const auto [l1Closed, l2Closed] = eta_family_eigenvalues(eta);
    const TempleKatoBound tk = temple_kato(op, e1.col(0), eig.eigenvalues(1));

    ordered_json row;
    row["eta"] = eta;
    row["ritz_value"] = mu;
    row["sin_theta"] = angle.sinThetaP;
    row["sin_theta_closed_form"] = sinClosed;
    row["sin_theta_route_gap"] = opt_num(angle.crossCheckGap);
    row["sin_theta_lower_bound"] = interval.lo;
    row["temple_kato"] = tk.value;
    row["temple_kato_vacuous"] = tk.vacuous;
    row["lambda1"] = eig.eigenvalues(0);
    row["lambda2"] = eig.eigenvalues(1);
    row["lambda1_closed_form"] = l1Closed;
    row["lambda2_closed_form"] = l2Closed;
    // diagonal of H' for this family, and for the variant with
    // bottom-right entry 1 + eta^2 instead of 1/100 + eta^2
    row["h_prime_diag"] = {h(0, 0), h(1, 1)};
    row["h_prime_variant_diag"] = {h(0, 0), 1.0 + eta * eta};

    const int ref = reference_index(eta);
    if (ref >= 0) {
      row["reference_sin_theta_bound"] = kRefSinThetaBound[ref];
      row["reference_sin_theta_flag"] =
          match_flag(interval.lo, kRefSinThetaBound[ref], 1e-11);
      row["reference_temple_kato"] = kRefTempleKato[ref];
      row["reference_temple_kato_flag"] =
          match_flag(tk.value, kRefTempleKato[ref], 1e-11);
      // the reference column is reproduced by a residual of 0.1 instead of
      // the 0.01 the displayed family carries
      const double refConsistent =
          mu - 1e-2 / (eig.eigenvalues(1) - mu);
      row["temple_kato_residual_0p1"] = refConsistent;
      row["temple_kato_residual_0p1_flag"] =
          match_flag(refConsistent, kRefTempleKato[ref], 1e-11);
    } else {
      row["reference_sin_theta_bound"] = nullptr;
      row["reference_sin_theta_flag"] = "no-reference";
      row["reference_temple_kato"] = nullptr;
      row["reference_temple_kato_flag"] = "no-reference";
    }
    rows.push_back(row);
  }
  doc.root["rows"] = rows;

  doc.root["discrepancy_notes"] = ordered_json::array(
      {"The family is built from the displayed factorization, whose product "
       "has bottom-right entry 1/100 + eta^2; a variant with entry 1 + eta^2 "
       "circulates and leads to the block-diagonal inverse diag(100, "
       "1/(1+eta^2)). Both block-diagonal parts are reported per row.",
       "The reference Temple-Kato column is reproduced exactly by mu - "
       "r^2/(lambda2 - mu) with residual norm r = 0.1; the displayed family "
       "has off-diagonal entries -0.01, giving r = 0.01. The self-consistent "
       "column uses r = 0.01 and is flagged against the reference for "
       "transparency."});
  return doc;
}

ReportDocument cmd_bounds(const std::string& matrixPath,
                          const std::string& basisPath,
                          const RunConfig& config,
                          std::optional<double> gammaOverride) {
  config.validate();
  const MatrixFile mf = read_matrix_file(matrixPath);
  const MatrixFile bf = read_matrix_file(basisPath);

  const OperatorRep op = mf.factorFlag
                             ? OperatorRep::factor(mf.matrix)
                             : OperatorRep::explicit_matrix(mf.matrix, config.symTol);
  const Matrix h = op.materialize();
  const double rankTol = config.rank_tol_or(h.rows(), h.cols());
  const Subspace sub = Subspace::from_columns(bf.matrix, rankTol);

  ReportDocument doc;
  doc.root["meta"] = meta_json("bounds", config);
  ordered_json input;
  input["matrix_path"] = matrixPath;
  input["matrix_kind"] = mf.factorFlag ? "factor" : "explicit";
  input["dimension"] = static_cast<long>(h.rows());
  input["basis_path"] = basisPath;
  input["subspace_dim"] = static_cast<long>(sub.dim());
  input["dropped_basis_columns"] = static_cast<long>(sub.droppedColumns);
  doc.root["input"] = input;

  const RitzData ritz = rayleigh_quotient(op, sub);
  doc.root["ritz"] = ordered_json{{"values", vector_json(ritz.ritzValues)}};

  const BlockSplit split = block_split(op, sub);
  const double hNorm = spectral_norm(h);
  doc.root["block_split"] = ordered_json{
      {"hprime_x_residual",
       spectral_norm(split.hPrime * sub.basis - sub.basis * ritz.xi) /
           std::max(hNorm, 1e-300)},
      {"commutator_residual",
       spectral_norm(sub.projector * split.hPrime -
                     split.hPrime * sub.projector) /
           std::max(hNorm, 1e-300)}};

  const AngleReport angle = sin_theta_residual(op, sub, rankTol);
  ordered_json angles;
  angles["canonical_angles"] = vector_json(angle.canonicalAngles);
  angles["sin_theta"] = angle.sinTheta;
  angles["sin_theta_p"] = angle.sinThetaP;
  angles["eta_theta_p"] = opt_num(angle.etaThetaP);
  angles["cross_check_gap"] = opt_num(angle.crossCheckGap);
  angles["clamped_sines"] = angle.clampedSines;
  doc.root["angles"] = angles;

  const SpectralDecomp ref = symmetric_eig(h, config.symTol);
  doc.root["reference_eigenvalues"] = vector_json(ref.eigenvalues);

  ordered_json notes = ordered_json::array();
  if (sub.droppedColumns > 0)
    notes.push_back("dropped " + std::to_string(sub.droppedColumns) +
                    " dependent basis column(s)");
  if (angle.clampedSines > 0)
    notes.push_back("clamped " + std::to_string(angle.clampedSines) +
                    " sine value(s) into [0,1]");

  if (!angle.etaThetaP) {
    doc.root["status"] = "not-applicable";
    notes.push_back(
        "sin_theta_p = 1: the relative bounds require sin_theta_p < 1 and "
        "are reported as not applicable");
    doc.root["discrepancy_notes"] = notes;
    doc.exitCode = 2;
    return doc;
  }
  doc.root["status"] = "ok";

  ordered_json intervals = ordered_json::array();
  for (Index i = 0; i < ritz.ritzValues.size(); ++i) {
    const RelativeInterval iv =
        relative_interval(ritz.ritzValues(i), angle.sinThetaP);
    intervals.push_back(ordered_json{{"mu", ritz.ritzValues(i)},
                                     {"lo", iv.lo},
                                     {"hi", iv.hi},
                                     {"lambda_relative_bound",
                                      iv.lambdaRelativeBound}});
  }
  doc.root["intervals"] = intervals;

  const MatchReport match =
      match_ritz(ritz.ritzValues, ref.eigenvalues, angle.sinThetaP);
  ordered_json matching;
  ordered_json perm = ordered_json::array();
  for (Index i : match.permutation) perm.push_back(static_cast<long>(i + 1));
  matching["matched_eigenvalue_indices"] = perm;
  matching["per_pair_rel_error"] = match.perPairRelError;
  matching["max_rel_error"] = match.maxRelError;
  matching["bound_satisfied"] = match.boundSatisfied;
  doc.root["matching"] = matching;

  const LocalizationReport loc = localize(ritz.ritzValues, ref.eigenvalues,
                                          angle.sinThetaP,
                                          LocalizationMode::lower());
  ordered_json locJson;
  locJson["gamma_r"] = opt_num(loc.gammaR);
  locJson["eta_theta_p"] = loc.etaThetaP;
  locJson["theorem_applies"] =
      loc.theoremApplies == TheoremApplies::LowerBlock ? "lower-block" : "none";
  if (loc.theoremApplies != TheoremApplies::None) {
    locJson["matched_range"] = {static_cast<long>(loc.matchedRange.first),
                                static_cast<long>(loc.matchedRange.second)};
    locJson["block_bound_holds"] = *loc.blockBoundHolds;
  }
  doc.root["localization"] = locJson;

  ordered_json vecSection;
  try {
    const EigvecBoundReport vb =
        eigenvector_bounds(ritz.ritzValues, ref.eigenvalues, match.permutation,
                           angle.sinThetaP, ritz.ritzVectors, ref.eigenvectors);
    ordered_json entries = ordered_json::array();
    for (size_t j = 0; j < vb.bounds.size(); ++j)
      entries.push_back(ordered_json{{"bound", opt_num(vb.bounds[j])},
                                     {"actual_error",
                                      opt_num(vb.actualErrors[j])}});
    vecSection["per_vector"] = entries;
  } catch (const Error& e) {
    vecSection["error"] = e.what();
    notes.push_back(std::string("eigenvector bounds unavailable: ") + e.what());
  }
  doc.root["eigenvector_bounds"] = vecSection;

  ordered_json tkSection;
  if (ref.eigenvalues.size() < 2) {
    tkSection["status"] = "skipped (operator dimension < 2)";
  } else {
    const double gamma = gammaOverride ? *gammaOverride : ref.eigenvalues(1);
    tkSection["gamma"] = gamma;
    try {
      const Vector u = ritz.ritzVectors.col(0);
      const TempleKatoBound tk = temple_kato(op, u / u.norm(), gamma);
      tkSection["value"] = tk.value;
      tkSection["vacuous"] = tk.vacuous;
      const double sinBound = ritz.ritzValues(0) * (1.0 - angle.sinThetaP);
      tkSection["sin_theta_lower_bound"] = sinBound;
      tkSection["sharper"] =
          tk.value >= sinBound ? "temple-kato" : "sin-theta";
    } catch (const Error& e) {
      tkSection["status"] = std::string("not evaluated: ") + e.what();
    }
  }
  doc.root["temple_kato"] = tkSection;

  doc.root["discrepancy_notes"] = notes;
  return doc;
}

ReportDocument cmd_string(double eta, int modes, int mesh,
                          const RunConfig& config) {
  config.validate();
  if (!(eta > 0.0))
    throw Error(ErrorCode::InvalidInput, "string: eta must be > 0");
  if (modes < 1)
    throw Error(ErrorCode::InvalidInput, "string: modes must be >= 1");
  if (mesh < 100)
    throw Error(ErrorCode::MeshTooCoarse, "string: mesh must be >= 100");

  const StringSpec spec{eta};
  ReportDocument doc;
  doc.root["meta"] = meta_json("string", config);
  doc.root["input"] =
      ordered_json{{"eta", eta}, {"modes", modes}, {"mesh", mesh}};

  const int window = modes + 2;
  std::vector<StringEig> eigs;
  for (int k = 1; k <= window; ++k)
    eigs.push_back(secular_solve(spec, k, config.secularTol));
  const std::vector<double> fd = fd_oracle(spec, mesh, modes);

  Vector lambdaWindow(window);
  for (int k = 0; k < window; ++k) lambdaWindow(k) = eigs[static_cast<size_t>(k)].lambda;

  ordered_json rows = ordered_json::array();
  for (int k = 1; k <= modes; ++k) {
    const StringEig& e = eigs[static_cast<size_t>(k - 1)];
    ordered_json row;
    row["k"] = k;
    row["lambda"] = e.lambda;
    row["lambda_fd_oracle"] = fd[static_cast<size_t>(k - 1)];
    row["fd_rel_gap"] = std::abs(e.lambda - fd[static_cast<size_t>(k - 1)]) /
                        e.lambda;
    row["transmission_residual"] = e.transmissionResidual;
    row["secular_residual"] = e.secularResidual;
    row["upper_limit_k2pi2"] = test_function_ritz_value(k);
    row["below_upper_limit"] = e.lambda < test_function_ritz_value(k);
    rows.push_back(row);
  }
  doc.root["eigenvalues"] = rows;

  const double sinThetaClosed = std::sqrt(sin_theta_squared_closed(eta));
  ordered_json residuals = ordered_json::array();
  for (int n = 1; n <= modes; ++n) {
    const double viaQuad = sin_theta_string(spec, n, config.quadTol);
    ordered_json row;
    row["mode"] = n;
    row["ritz_value"] = test_function_ritz_value(n);
    row["green_form"] = green_quadratic_form(spec, n, config.quadTol);
    row["green_form_closed"] = green_quadratic_form_closed(spec, n);
    row["sin_theta_sq_quadrature"] = viaQuad * viaQuad;
    row["sin_theta_sq_closed"] = sin_theta_squared_closed(eta);
    row["quadrature_gap"] =
        std::abs(viaQuad * viaQuad - sin_theta_squared_closed(eta));
    residuals.push_back(row);
  }
  doc.root["residual_measures"] = residuals;

  ordered_json bounds = ordered_json::array();
  for (int n = 1; n <= modes; ++n) {
    Vector mu(1);
    mu(0) = test_function_ritz_value(n);
    const MatchReport match = match_ritz(mu, lambdaWindow, sinThetaClosed);
    ordered_json row;
    row["mode"] = n;
    row["matched_k"] = static_cast<long>(match.permutation[0] + 1);
    row["rel_error"] = match.perPairRelError[0];
    row["sin_theta_p"] = sinThetaClosed;
    row["bound_satisfied"] = match.boundSatisfied[0];
    bounds.push_back(row);
  }
  doc.root["relative_bound_checks"] = bounds;

  ordered_json vec;
  if (eta >= 2.0) {
    const StringEigvecError err =
        string_eigvec_error(spec, config.quadTol, config.secularTol);
    vec["actual_error"] = err.actual;
    vec["bound"] = err.bound;
    vec["bound_satisfied"] = err.actual <= err.bound;
    // the closed-form bound prefactor agrees with the generic eigenvector
    // bound evaluated on {lambda1, lambda2}
    Vector mu(1), lam(2);
    mu(0) = test_function_ritz_value(1);
    lam << eigs[0].lambda, eigs[1].lambda;
    const EigvecBoundReport generic =
        eigenvector_bounds(mu, lam, {0}, sinThetaClosed);
    vec["generic_bound_identity_gap"] =
        std::abs(*generic.bounds[0] - err.bound);
  } else {
    vec["status"] = "skipped (requires eta >= 2)";
  }
  doc.root["eigenvector_bound"] = vec;

  ordered_json swapped = ordered_json::array();
  for (int k = 1; k <= modes; ++k)
    swapped.push_back(
        secular_solve(spec, k, config.secularTol, SecularForm::SwappedCoefficient)
            .lambda);
  doc.root["swapped_coefficient_roots"] = swapped;

  doc.root["discrepancy_notes"] = ordered_json::array(
      {"The secular equation is solved in the transmission form cot(sqrt(l)) "
       "+ sqrt(1+eta^2) cot(sqrt(l/(1+eta^2))) = 0, the one implied by "
       "continuity of the value and of the flux p u' at x = 1. The variant "
       "with the sqrt(1+eta^2) factor on the other cotangent circulates; its "
       "roots are listed under swapped_coefficient_roots and fail the "
       "k^2 pi^2 limit behaviour.",
       "The ratio 2/(4+eta^2) is the squared residual measure "
       "sin^2(Theta); it is sometimes quoted as sin(Theta) directly, which "
       "the quadrature route here does not support.",
       "A uniform prefactor 4/3 for the eigenvector bound only holds in the "
       "eta -> infinity limit; the report certifies the bound with the "
       "prefactor evaluated from the computed lambda_2 instead."});
  return doc;
}

}  // namespace ritz
