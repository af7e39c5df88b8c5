#pragma once

#include <Eigen/Dense>

namespace vecuq {

// Row-major so that rows (samples) are contiguous and map directly onto
// C arrays handed over by the C API.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace vecuq
