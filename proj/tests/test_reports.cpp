#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ritz/io.hpp"
#include "ritz/linalg.hpp"
#include "ritz/report.hpp"
#include "ritz/selfcheck.hpp"

using nlohmann::ordered_json;
using ritz::Matrix;

namespace {

// minimal structural validator for the subset of JSON Schema the report
// schema uses: type, required, properties, enum, items
bool validates(const ordered_json& schema, const ordered_json& value);

bool type_matches(const std::string& type, const ordered_json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  if (type == "boolean") return value.is_boolean();
  return false;
}

bool validates(const ordered_json& schema, const ordered_json& value) {
  if (schema.contains("type")) {
    const ordered_json& type = schema["type"];
    bool ok = false;
    if (type.is_string()) {
      ok = type_matches(type.get<std::string>(), value);
    } else {
      for (const auto& t : type)
        ok = ok || type_matches(t.get<std::string>(), value);
    }
    if (!ok) return false;
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& candidate : schema["enum"]) ok = ok || candidate == value;
    if (!ok) return false;
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"])
      if (!value.contains(key.get<std::string>())) return false;
  if (schema.contains("properties") && value.is_object())
    for (const auto& [key, sub] : schema["properties"].items())
      if (value.contains(key) && !validates(sub, value[key])) return false;
  if (schema.contains("items") && value.is_array())
    for (const auto& item : value)
      if (!validates(schema["items"], item)) return false;
  return true;
}

ordered_json load_schema() {
  std::ifstream in(std::string(RITZ_SOURCE_DIR) + "/docs/report-v1.schema.json");
  REQUIRE(in.good());
  return ordered_json::parse(in);
}

void check_against_schema(const ritz::ReportDocument& doc) {
  const ordered_json schema = load_schema();
  CHECK(validates(schema, doc.root));
  const std::string command = doc.root["meta"]["command"].get<std::string>();
  for (const auto& section : schema["x-command-sections"][command])
    CHECK(doc.root.contains(section.get<std::string>()));
}

}  // namespace

TEST_CASE("matrix file round-trips through the text format") {
  Matrix m(2, 3);
  m << 1.0, -0.25, 3.5e-17, 2.0 / 3.0, 1e300, -0.1;
  std::ostringstream out;
  ritz::write_matrix(out, m);
  std::istringstream in(out.str());
  const ritz::MatrixFile parsed = ritz::read_matrix(in, "mem");
  CHECK(!parsed.factorFlag);
  CHECK(ritz::max_abs(parsed.matrix - m) == 0.0);
}

TEST_CASE("factor flag and comments are honoured") {
  std::istringstream in("# factor\n# produced by hand\n2 2\n1 0\n0 2\n");
  const ritz::MatrixFile parsed = ritz::read_matrix(in, "mem");
  CHECK(parsed.factorFlag);
  CHECK(parsed.matrix(1, 1) == 2.0);
}

TEST_CASE("parse errors carry the file name and line number") {
  std::istringstream missing("2 2\n1 0\n");
  try {
    ritz::read_matrix(missing, "short.txt");
    FAIL("expected a parse error");
  } catch (const ritz::Error& e) {
    CHECK(e.code() == ritz::ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("short.txt") != std::string::npos);
  }

  std::istringstream bad("2 2\n1 0\nx 1\n");
  CHECK_THROWS_AS(ritz::read_matrix(bad, "bad.txt"), ritz::Error);

  std::istringstream extra("1 2\n1 2 3\n");
  CHECK_THROWS_AS(ritz::read_matrix(extra, "extra.txt"), ritz::Error);
}

TEST_CASE("fmt12 prints twelve significant digits") {
  CHECK(ritz::fmt12(0.009004962810397) == "0.0090049628104");
  CHECK(ritz::fmt12(1.0) == "1");
  CHECK(ritz::fmt12(9.998000499860e-7) == "9.99800049986e-07");
}

TEST_CASE("table1 report is deterministic and schema-valid") {
  ritz::RunConfig config;
  const std::vector<double> etas{1.0, 2.0, 3.0, 4.0, 5.0};
  const ritz::ReportDocument a = ritz::cmd_table1(etas, config);
  const ritz::ReportDocument b = ritz::cmd_table1(etas, config);
  CHECK(a.to_json_string() == b.to_json_string());
  CHECK(a.to_text() == b.to_text());
  CHECK(a.to_csv() == b.to_csv());
  check_against_schema(a);

  // lossless JSON round trip
  const ordered_json reparsed = ordered_json::parse(a.to_json_string());
  CHECK(reparsed == a.root);
  CHECK(reparsed["rows"][0]["sin_theta_lower_bound"].get<double>() ==
        a.root["rows"][0]["sin_theta_lower_bound"].get<double>());
}

TEST_CASE("table1 row flags reproduce the reference columns") {
  ritz::RunConfig config;
  const ritz::ReportDocument doc =
      ritz::cmd_table1({1.0, 2.0, 3.0, 4.0, 5.0}, config);
  for (const auto& row : doc.root["rows"]) {
    CHECK(row["reference_sin_theta_flag"] == "match");
    CHECK(row["reference_temple_kato_flag"] == "mismatch");
    CHECK(row["temple_kato_residual_0p1_flag"] == "match");
  }
}

TEST_CASE("bounds report on files, including the degenerate exit") {
  const std::string dir = RITZ_BUILD_TMP;
  ritz::write_matrix_file(dir + "/h.txt", ritz::eta_family_matrix(2.0));
  Matrix e1 = Matrix::Zero(2, 1);
  e1(0, 0) = 1.0;
  ritz::write_matrix_file(dir + "/x.txt", e1);

  ritz::RunConfig config;
  const ritz::ReportDocument doc =
      ritz::cmd_bounds(dir + "/h.txt", dir + "/x.txt", config);
  CHECK(doc.exitCode == 0);
  CHECK(doc.root["status"] == "ok");
  check_against_schema(doc);

  Matrix ones(2, 2);
  ones << 1, 1, 1, 1;
  ritz::write_matrix_file(dir + "/ones.txt", ones);
  const ritz::ReportDocument degenerate =
      ritz::cmd_bounds(dir + "/ones.txt", dir + "/x.txt", config);
  CHECK(degenerate.exitCode == 2);
  CHECK(degenerate.root["status"] == "not-applicable");
  check_against_schema(degenerate);
}

TEST_CASE("factor files drive the factor representation") {
  const std::string dir = RITZ_BUILD_TMP;
  Matrix r(2, 2);
  r << 0.1, -0.1, 0.0, 2.0;  // R^T R = eta-family matrix at eta = 2
  ritz::write_matrix_file(dir + "/r.txt", r, true);
  Matrix e1 = Matrix::Zero(2, 1);
  e1(0, 0) = 1.0;
  ritz::write_matrix_file(dir + "/x2.txt", e1);

  ritz::RunConfig config;
  const ritz::ReportDocument doc =
      ritz::cmd_bounds(dir + "/r.txt", dir + "/x2.txt", config);
  CHECK(doc.root["input"]["matrix_kind"] == "factor");
  CHECK(doc.root["ritz"]["values"][0].get<double>() ==
        doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("string report is deterministic and schema-valid") {
  ritz::RunConfig config;
  const ritz::ReportDocument a = ritz::cmd_string(2.0, 2, 400, config);
  const ritz::ReportDocument b = ritz::cmd_string(2.0, 2, 400, config);
  CHECK(a.to_json_string() == b.to_json_string());
  check_against_schema(a);
  CHECK(a.root["eigenvalues"][0]["below_upper_limit"] == true);
}

TEST_CASE("selfcheck summaries are reproducible") {
  const ritz::SelfcheckSummary a = ritz::run_selfcheck(42, 5);
  const ritz::SelfcheckSummary b = ritz::run_selfcheck(42, 5);
  CHECK(ritz::render_selfcheck(a) == ritz::render_selfcheck(b));
  CHECK(a.all_passed());
  CHECK(a.properties.size() == 16);
}

TEST_CASE("csv output quotes embedded commas") {
  ritz::RunConfig config;
  const ritz::ReportDocument doc = ritz::cmd_table1({1.0}, config);
  const std::string csv = doc.to_csv();
  CHECK(csv.rfind("key,value\n", 0) == 0);
  // notes contain commas and must arrive quoted
  CHECK(csv.find("\"") != std::string::npos);
}

TEST_CASE("run config validation") {
  ritz::RunConfig config;
  config.quadTol = -1.0;
  CHECK_THROWS_AS(config.validate(), ritz::Error);
}
