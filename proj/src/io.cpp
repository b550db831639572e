#include "ritz/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace ritz {

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line,
                             const std::string& message) {
  throw Error(ErrorCode::ParseError,
              name + ":" + std::to_string(line) + ": " + message);
}

bool is_blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

MatrixFile read_matrix(std::istream& in, const std::string& name) {
  MatrixFile out;
  std::string line;
  int lineNo = 0;

  // comment / blank prologue
  long rows = -1, cols = -1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (is_blank(line)) continue;
    if (line[0] == '#') {
      std::istringstream tag(line.substr(1));
      std::string word;
      tag >> word;
      if (word == "factor") out.factorFlag = true;
      continue;
    }
    std::istringstream header(line);
    if (!(header >> rows >> cols))
      parse_fail(name, lineNo, "expected header 'rows cols'");
    break;
  }
  if (rows < 0) parse_fail(name, lineNo, "missing header line");
  if (rows < 1 || cols < 1)
    parse_fail(name, lineNo, "rows and cols must be >= 1");

  out.matrix.resize(rows, cols);
  for (long r = 0; r < rows; ++r) {
    if (!std::getline(in, line))
      parse_fail(name, lineNo, "unexpected end of file in row " +
                                   std::to_string(r + 1));
    ++lineNo;
    const char* cursor = line.c_str();
    for (long c = 0; c < cols; ++c) {
      char* end = nullptr;
      const double value = std::strtod(cursor, &end);
      if (end == cursor)
        parse_fail(name, lineNo,
                   "expected " + std::to_string(cols) + " numbers, found " +
                       std::to_string(c));
      if (!std::isfinite(value))
        parse_fail(name, lineNo, "non-finite entry");
      out.matrix(r, c) = value;
      cursor = end;
    }
    char* end = nullptr;
    if (std::strtod(cursor, &end), end != cursor)
      parse_fail(name, lineNo, "extra trailing numbers in row");
  }
  return out;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::ParseError, path + ": cannot open file");
  return read_matrix(in, path);
}

void write_matrix(std::ostream& out, const Matrix& m, bool factorFlag) {
  if (factorFlag) out << "# factor\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  out.precision(17);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << m(r, c);
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const Matrix& m,
                       bool factorFlag) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::ParseError, path + ": cannot open for writing");
  write_matrix(out, m, factorFlag);
}

}  // namespace ritz
