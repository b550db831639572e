#pragma once

#include <iosfwd>
#include <string>

#include "ritz/errors.hpp"
#include "ritz/types.hpp"

namespace ritz {

/// Matrix text format: optional leading `#` comment lines, then a line
/// `rows cols`, then rows lines of cols whitespace-separated numbers parsed
/// in full double precision. A `# factor` comment marks the matrix as a
/// factor R with h(u,v) = (Ru, Rv).
struct MatrixFile {
  Matrix matrix;
  bool factorFlag = false;
};

MatrixFile read_matrix(std::istream& in, const std::string& name);
MatrixFile read_matrix_file(const std::string& path);

void write_matrix(std::ostream& out, const Matrix& m, bool factorFlag = false);
void write_matrix_file(const std::string& path, const Matrix& m,
                       bool factorFlag = false);

}  // namespace ritz
