#pragma once

#include <Eigen/Core>

namespace trfds {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

} // namespace trfds
