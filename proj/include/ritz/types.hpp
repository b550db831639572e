#pragma once

#include <Eigen/Dense>

namespace ritz {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace ritz
