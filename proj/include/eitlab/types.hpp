#pragma once

#include <complex>

#include <Eigen/Dense>

namespace eitlab {

using cplx = std::complex<double>;

using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

// A coherence vector is a real (N^2-1)-vector; a density matrix is a
// complex N x N matrix. Both are plain Eigen values.
using CoherenceVector = RVector;
using DensityMatrix = CMatrix;

inline constexpr cplx kI{0.0, 1.0};

}  // namespace eitlab
