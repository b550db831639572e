#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ritz/report.hpp"
#include "ritz/selfcheck.hpp"

namespace {

int exit_code_for(const ritz::Error& e) {
  switch (e.code()) {
    case ritz::ErrorCode::ParseError:
    case ritz::ErrorCode::InvalidInput:
      return 1;
    case ritz::ErrorCode::NotApplicable:
      return 2;
    default:
      return 3;
  }
}

std::uint64_t seed_from_env() {
  if (const char* env = std::getenv("RITZ_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ritz::Error(ritz::ErrorCode::InvalidInput,
                        "RITZ_SEED is not an unsigned integer");
    }
  }
  return 42;
}

std::vector<double> parse_eta_list(const std::string& csv) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos < csv.size()) {
    size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    const std::string item = csv.substr(pos, next - pos);
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ritz::Error(ritz::ErrorCode::InvalidInput,
                        "bad eta value '" + item + "'");
    }
    pos = next + 1;
  }
  if (out.empty())
    throw ritz::Error(ritz::ErrorCode::InvalidInput, "empty eta list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rayleigh-Ritz certification tool"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string formatName = "text";
  double rankTol = -1.0;
  ritz::RunConfig config;
  app.add_option("--format", formatName, "output format: text|csv|json")
      ->capture_default_str();
  app.add_option("--rank-tol", rankTol, "numerical rank cutoff (relative)");
  app.add_option("--sym-tol", config.symTol, "symmetry tolerance (relative)")
      ->capture_default_str();
  app.add_option("--quad-tol", config.quadTol, "quadrature refinement tolerance")
      ->capture_default_str();
  app.add_option("--secular-tol", config.secularTol,
                 "secular bisection tolerance (relative)")
      ->capture_default_str();

  std::string etaCsv = "1,2,3,4,5";
  CLI::App* table1 = app.add_subcommand("table1", "eta-family study");
  table1->add_option("--eta-list", etaCsv, "comma-separated eta values")
      ->capture_default_str();

  std::string matrixPath, basisPath;
  double gamma = 0.0;
  bool gammaSet = false;
  CLI::App* bounds =
      app.add_subcommand("bounds", "certify a matrix + test basis pair");
  bounds->add_option("--matrix", matrixPath, "operator file")->required();
  bounds->add_option("--basis", basisPath, "test basis file")->required();
  bounds->add_option("--gamma", gamma, "Temple-Kato gap parameter")
      ->each([&gammaSet](const std::string&) { gammaSet = true; });

  double eta = 2.0;
  int modes = 2;
  int mesh = 4000;
  CLI::App* stringCmd =
      app.add_subcommand("string", "inhomogeneous string study");
  stringCmd->add_option("--eta", eta, "stiffness contrast")->required();
  stringCmd->add_option("--modes", modes, "number of modes")
      ->capture_default_str();
  stringCmd->add_option("--mesh", mesh, "finite-difference oracle mesh")
      ->capture_default_str();

  std::uint64_t seedFlag = 0;
  bool seedSet = false;
  int count = 200;
  CLI::App* selfcheck =
      app.add_subcommand("selfcheck", "run the property suites");
  selfcheck->add_option("--seed", seedFlag, "random seed")
      ->each([&seedSet](const std::string&) { seedSet = true; });
  selfcheck->add_option("--count", count, "instances per property")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    config.seed = seed_from_env();
    if (seedSet) config.seed = seedFlag;
    if (rankTol > 0.0) config.rankTol = rankTol;
    config.format = ritz::parse_output_format(formatName);
    config.validate();

    if (selfcheck->parsed()) {
      const ritz::SelfcheckSummary summary =
          ritz::run_selfcheck(config.seed, count);
      std::cout << ritz::render_selfcheck(summary);
      return summary.all_passed() ? 0 : 3;
    }

    ritz::ReportDocument doc;
    if (table1->parsed()) {
      doc = ritz::cmd_table1(parse_eta_list(etaCsv), config);
    } else if (bounds->parsed()) {
      std::optional<double> gammaOpt;
      if (gammaSet) gammaOpt = gamma;
      doc = ritz::cmd_bounds(matrixPath, basisPath, config, gammaOpt);
    } else {
      doc = ritz::cmd_string(eta, modes, mesh, config);
    }
    std::cout << doc.render(config.format);
    return doc.exitCode;
  } catch (const ritz::Error& e) {
    std::cerr << "error (" << ritz::error_code_name(e.code()) << "): "
              << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
