#pragma once

#include <complex>

#include <Eigen/Dense>

namespace minnorm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

} // namespace minnorm
